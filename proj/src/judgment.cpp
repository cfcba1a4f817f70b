#include "iceid/judgment.hpp"

#include <algorithm>
#include <array>

namespace iceid {

namespace {

constexpr std::array<std::string_view, 16> kKindNames = {
    "heimild_diff", "name",        "first_name",           "patronym",
    "surname",      "birthyear",   "birthyear_compatible", "sex",
    "status_value", "marriage",    "farm",                 "county",
    "parish",       "district",    "unknown_field",        "generic_token",
};

}  // namespace

std::string_view kind_name(JudgmentKind kind) {
    return kKindNames[static_cast<std::size_t>(kind)];
}

JudgmentKind kind_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) return static_cast<JudgmentKind>(i);
    }
    throw DataError("unknown judgment kind: " + std::string(name));
}

JudgmentSet::JudgmentSet(std::vector<Judgment> judgments) : items_(std::move(judgments)) {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool JudgmentSet::contains(const Judgment& j) const {
    return std::binary_search(items_.begin(), items_.end(), j);
}

JudgmentSet JudgmentSet::set_difference(const JudgmentSet& other) const {
    JudgmentSet out;
    out.items_.reserve(items_.size());
    std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                        std::back_inserter(out.items_));
    return out;
}

JudgmentSet JudgmentSet::set_intersection(const JudgmentSet& other) const {
    JudgmentSet out;
    std::set_intersection(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                          std::back_inserter(out.items_));
    return out;
}

std::size_t JudgmentSet::overlap(const JudgmentSet& other) const {
    std::size_t n = 0;
    auto a = items_.begin();
    auto b = other.items_.begin();
    while (a != items_.end() && b != other.items_.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            ++n;
            ++a;
            ++b;
        }
    }
    return n;
}

std::string JudgmentSet::key() const {
    std::string out;
    for (const Judgment& j : items_) {
        if (!out.empty()) out += '\x1f';
        out += j.canonical();
    }
    return out;
}

}  // namespace iceid
