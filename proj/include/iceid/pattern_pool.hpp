#pragma once

#include "iceid/pattern.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace iceid {

struct MatcherConfig {
    int n_reference = 10;        // patterns consulted per query, half per pool end
    int capacity = 10000;        // pool size bound
    int learn_iterations = 5000; // labeled pairs visited during learning
    int inference_budget = 3;    // inference partners per learned pair

    void validate() const;
};

struct InsertReport {
    enum class Action { inserted, revised, unchanged };
    Action action = Action::inserted;
    std::optional<Pattern> evicted;
};

// Capacity-bounded pattern store. Iteration is ascending by expectation
// (ties by insertion age); at most one pattern per judgment set. When the
// capacity is exceeded, the least decisive pattern — smallest |e - 0.5|,
// ties broken by lower confidence, then older — is evicted.
//
// Single-writer, multi-reader: insert/learn_pair need exclusive access,
// score/classify/snapshot are const and safe to run concurrently on a
// quiescent pool.
class PatternPool {
public:
    PatternPool(const MatcherConfig& cfg, const NalConfig& nal);

    std::size_t size() const { return by_key_.size(); }
    bool empty() const { return by_key_.empty(); }
    const MatcherConfig& config() const { return cfg_; }
    const NalConfig& nal() const { return nal_; }

    // Inserts or revises. Same judgment set with disjoint sources -> truths
    // revised and sources unioned; overlapping sources -> sources unioned but
    // evidence untouched (no double counting).
    InsertReport insert(Pattern p);

    // Seeds the observed pattern, then runs inference between it and up to
    // inference_budget pool patterns with the highest judgment overlap,
    // inserting the children.
    void learn_pair(const JudgmentSet& judgments, bool label, SourceId source);

    // Looks up the pattern stored for a judgment set, if any.
    const Pattern* find(const JudgmentSet& judgments) const;

    // Match truth of a query against one pattern: f is the overlap fraction
    // relative to the longer side, c is the pattern's confidence. When the
    // pattern speaks against a match (expectation < 0.5), f is folded to 1-f.
    Truth match_truth(const JudgmentSet& query, const Pattern& p) const;

    // Expectation of the revision of the query's match truths against up to
    // n_reference/2 patterns from each end of the expectation order.
    // Throws DomainError on an empty pool.
    double score(const JudgmentSet& query) const;

    bool classify(const JudgmentSet& query, double threshold) const {
        return score(query) >= threshold;
    }

    // Patterns in ascending expectation order.
    std::vector<const Pattern*> ordered() const;

    // Snapshot: one pattern per line — escaped judgment list, w+, w-, source
    // count. Evidence is rendered with exact decimal round-trip.
    void export_snapshot(std::ostream& out) const;
    static PatternPool import_snapshot(std::istream& in, const MatcherConfig& cfg,
                                       const NalConfig& nal);

private:
    struct Entry {
        Pattern pattern;
        double expect = 0.5;
        double conf = 0.0;
        std::uint64_t seq = 0;
    };

    // (expectation, seq): ascending iteration order.
    using OrderKey = std::pair<double, std::uint64_t>;
    // (|e-0.5|, confidence, seq): the first element is the eviction victim.
    using EvictKey = std::tuple<double, double, std::uint64_t>;

    void index_insert(std::size_t slot);
    void index_erase(std::size_t slot);
    std::vector<std::size_t> reference_slots() const;

    MatcherConfig cfg_;
    NalConfig nal_;
    std::vector<Entry> entries_;
    std::vector<std::size_t> free_slots_;
    std::unordered_map<std::string, std::size_t> by_key_;
    std::map<OrderKey, std::size_t> order_;
    std::map<EvictKey, std::size_t> evict_;
    std::uint64_t next_seq_ = 0;
};

// Midpoint of the median positive and median negative score, computed with
// learning disabled. Throws DomainError when either class is absent.
double calibrate_threshold(const PatternPool& pool,
                           std::span<const std::pair<JudgmentSet, bool>> seeded);

}  // namespace iceid
