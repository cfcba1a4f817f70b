#include "iceid/pattern.hpp"

#include <algorithm>

namespace iceid {

SourceSet::SourceSet(std::vector<SourceId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool SourceSet::disjoint_with(const SourceSet& other) const {
    auto a = ids_.begin();
    auto b = other.ids_.begin();
    while (a != ids_.end() && b != other.ids_.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            return false;
        }
    }
    return true;
}

SourceSet SourceSet::unite(const SourceSet& other) const {
    SourceSet out;
    out.ids_.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out.ids_));
    return out;
}

Pattern make_pattern(JudgmentSet judgments, bool label, SourceId source,
                     const NalConfig& cfg) {
    if (judgments.empty()) throw DomainError("make_pattern: empty judgment set");
    const Truth truth = label ? truth_from_fc(1.0, 0.9, cfg) : truth_from_fc(0.0, 0.9, cfg);
    return Pattern{std::move(judgments), truth, SourceSet::single(source)};
}

std::vector<Pattern> infer(const Pattern& p1, const Pattern& p2) {
    std::vector<Pattern> out;
    out.reserve(3);

    JudgmentSet left = p1.judgments.set_difference(p2.judgments);
    if (!left.empty()) out.push_back(Pattern{std::move(left), p1.truth, p1.sources});

    JudgmentSet right = p2.judgments.set_difference(p1.judgments);
    if (!right.empty()) out.push_back(Pattern{std::move(right), p2.truth, p2.sources});

    if (p1.sources.disjoint_with(p2.sources)) {
        JudgmentSet common = p1.judgments.set_intersection(p2.judgments);
        if (!common.empty()) {
            out.push_back(Pattern{std::move(common), revise(p1.truth, p2.truth),
                                  p1.sources.unite(p2.sources)});
        }
    }
    return out;
}

}  // namespace iceid
