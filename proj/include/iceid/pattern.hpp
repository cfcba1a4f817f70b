#pragma once

#include "iceid/judgment.hpp"
#include "iceid/nal.hpp"

#include <cstdint>
#include <vector>

namespace iceid {

using SourceId = std::uint64_t;

// Set of evidence-source ids, sorted and unique. A source is one labeled
// record pair; tracking sources keeps revision from counting the same pair
// twice through derived patterns.
class SourceSet {
public:
    SourceSet() = default;
    explicit SourceSet(std::vector<SourceId> ids);
    static SourceSet single(SourceId id) { return SourceSet({id}); }

    bool empty() const { return ids_.empty(); }
    std::size_t size() const { return ids_.size(); }
    std::span<const SourceId> ids() const { return ids_; }

    bool disjoint_with(const SourceSet& other) const;
    SourceSet unite(const SourceSet& other) const;

    bool operator==(const SourceSet&) const = default;

private:
    std::vector<SourceId> ids_;
};

// Unit of learned knowledge: a judgment set plus the truth the evidence
// supports, and the sources that evidence came from.
struct Pattern {
    JudgmentSet judgments;
    Truth truth;
    SourceSet sources;
};

// Seeds a pattern from a labeled pair. Matching pairs get truth (f=1, c=0.9),
// non-matching pairs (f=0, c=0.9). Throws DomainError on an empty judgment set.
Pattern make_pattern(JudgmentSet judgments, bool label, SourceId source,
                     const NalConfig& cfg);

// Applies the three-way inference rule to two patterns:
//   j1 - j2 keeps truth t1; j2 - j1 keeps truth t2; and, only when the
//   parents' sources are disjoint, j1 n j2 gets revise(t1, t2).
// Children keep their parents' sources (union for the intersection child);
// children with empty judgment sets are dropped. Truths are inherited, never
// recomputed.
std::vector<Pattern> infer(const Pattern& p1, const Pattern& p2);

}  // namespace iceid
