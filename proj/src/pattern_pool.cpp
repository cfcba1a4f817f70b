#include "iceid/pattern_pool.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace iceid {

namespace {

// Shortest decimal rendering that round-trips the exact double.
std::string render_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string escape_field(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '|': out += "\\|"; break;
            default: out += c;
        }
    }
    return out;
}

std::string unescape_field(std::string_view s, std::size_t line_no) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out += s[i];
            continue;
        }
        if (++i == s.size())
            throw DataError("pool snapshot line " + std::to_string(line_no) +
                            ": dangling escape");
        switch (s[i]) {
            case '\\': out += '\\'; break;
            case 't': out += '\t'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            case '|': out += '|'; break;
            default:
                throw DataError("pool snapshot line " + std::to_string(line_no) +
                                ": bad escape \\" + std::string(1, s[i]));
        }
    }
    return out;
}

double parse_evidence(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !(v >= 0.0))
        throw DataError("pool snapshot line " + std::to_string(line_no) +
                        ": bad evidence value '" + std::string(field) + "'");
    return v;
}

}  // namespace

void MatcherConfig::validate() const {
    if (n_reference <= 0 || n_reference % 2 != 0)
        throw ConfigError("MatcherConfig: n_reference must be a positive even integer");
    if (capacity <= 0) throw ConfigError("MatcherConfig: capacity must be positive");
    if (learn_iterations <= 0)
        throw ConfigError("MatcherConfig: learn_iterations must be positive");
    if (inference_budget < 0)
        throw ConfigError("MatcherConfig: inference_budget must be nonnegative");
    if (n_reference > capacity)
        throw ConfigError("MatcherConfig: n_reference exceeds capacity");
}

PatternPool::PatternPool(const MatcherConfig& cfg, const NalConfig& nal)
    : cfg_(cfg), nal_(nal) {
    cfg_.validate();
    nal_.validate();
}

void PatternPool::index_insert(std::size_t slot) {
    const Entry& e = entries_[slot];
    order_.emplace(OrderKey{e.expect, e.seq}, slot);
    evict_.emplace(EvictKey{std::abs(e.expect - 0.5), e.conf, e.seq}, slot);
}

void PatternPool::index_erase(std::size_t slot) {
    const Entry& e = entries_[slot];
    order_.erase(OrderKey{e.expect, e.seq});
    evict_.erase(EvictKey{std::abs(e.expect - 0.5), e.conf, e.seq});
}

InsertReport PatternPool::insert(Pattern p) {
    if (p.judgments.empty()) throw DomainError("pool insert: empty judgment set");
    InsertReport report;
    const std::string key = p.judgments.key();

    auto it = by_key_.find(key);
    if (it != by_key_.end()) {
        Entry& e = entries_[it->second];
        if (e.pattern.sources.disjoint_with(p.sources)) {
            index_erase(it->second);
            e.pattern.truth = revise(e.pattern.truth, p.truth);
            e.pattern.sources = e.pattern.sources.unite(p.sources);
            e.expect = expectation(e.pattern.truth, nal_);
            e.conf = confidence(e.pattern.truth, nal_);
            index_insert(it->second);
            report.action = InsertReport::Action::revised;
        } else {
            // Shared source: the evidence is already counted.
            e.pattern.sources = e.pattern.sources.unite(p.sources);
            report.action = InsertReport::Action::unchanged;
        }
        return report;
    }

    std::size_t slot;
    if (!free_slots_.empty()) {
        slot = free_slots_.back();
        free_slots_.pop_back();
    } else {
        slot = entries_.size();
        entries_.emplace_back();
    }
    Entry& e = entries_[slot];
    e.expect = expectation(p.truth, nal_);
    e.conf = confidence(p.truth, nal_);
    e.pattern = std::move(p);
    e.seq = next_seq_++;
    by_key_.emplace(key, slot);
    index_insert(slot);
    report.action = InsertReport::Action::inserted;

    if (by_key_.size() > static_cast<std::size_t>(cfg_.capacity)) {
        const std::size_t victim = evict_.begin()->second;
        index_erase(victim);
        by_key_.erase(entries_[victim].pattern.judgments.key());
        report.evicted = std::move(entries_[victim].pattern);
        entries_[victim] = Entry{};
        free_slots_.push_back(victim);
    }
    return report;
}

void PatternPool::learn_pair(const JudgmentSet& judgments, bool label, SourceId source) {
    insert(make_pattern(judgments, label, source, nal_));

    if (cfg_.inference_budget == 0) return;

    // Partners: highest judgment overlap first, ties to the older pattern.
    // Zero-overlap partners can only re-derive existing patterns, so they
    // are skipped.
    struct Candidate {
        std::size_t overlap;
        std::uint64_t seq;
        std::size_t slot;
    };
    std::vector<Candidate> candidates;
    for (const auto& [key, slot] : by_key_) {
        const Entry& e = entries_[slot];
        if (e.pattern.judgments == judgments) continue;
        const std::size_t ov = judgments.overlap(e.pattern.judgments);
        if (ov > 0) candidates.push_back(Candidate{ov, e.seq, slot});
    }
    const std::size_t budget =
        std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(cfg_.inference_budget));
    std::partial_sort(candidates.begin(), candidates.begin() + budget, candidates.end(),
                      [](const Candidate& a, const Candidate& b) {
                          if (a.overlap != b.overlap) return a.overlap > b.overlap;
                          return a.seq < b.seq;
                      });
    candidates.resize(budget);

    // Snapshot the parents: child insertions may revise or evict them.
    const Pattern* inserted = find(judgments);
    const Pattern observed =
        inserted ? *inserted : make_pattern(judgments, label, source, nal_);
    std::vector<Pattern> partners;
    partners.reserve(candidates.size());
    for (const Candidate& c : candidates) partners.push_back(entries_[c.slot].pattern);

    for (const Pattern& partner : partners) {
        for (Pattern& child : infer(observed, partner)) insert(std::move(child));
    }
}

const Pattern* PatternPool::find(const JudgmentSet& judgments) const {
    auto it = by_key_.find(judgments.key());
    if (it == by_key_.end()) return nullptr;
    return &entries_[it->second].pattern;
}

Truth PatternPool::match_truth(const JudgmentSet& query, const Pattern& p) const {
    const std::size_t longest = std::max(query.size(), p.judgments.size());
    double f = longest == 0 ? 0.0
                            : static_cast<double>(query.overlap(p.judgments)) /
                                  static_cast<double>(longest);
    if (expectation(p.truth, nal_) < 0.5) f = 1.0 - f;
    return truth_from_fc(f, confidence(p.truth, nal_), nal_);
}

std::vector<std::size_t> PatternPool::reference_slots() const {
    const std::size_t half = static_cast<std::size_t>(cfg_.n_reference) / 2;
    std::vector<std::size_t> slots;
    if (by_key_.size() <= static_cast<std::size_t>(cfg_.n_reference)) {
        for (const auto& [key, slot] : order_) slots.push_back(slot);
        return slots;
    }
    auto lo = order_.begin();
    for (std::size_t i = 0; i < half; ++i, ++lo) slots.push_back(lo->second);
    auto hi = order_.rbegin();
    std::vector<std::size_t> top;
    for (std::size_t i = 0; i < half; ++i, ++hi) top.push_back(hi->second);
    // Keep ascending order for the high end as well.
    slots.insert(slots.end(), top.rbegin(), top.rend());
    return slots;
}

double PatternPool::score(const JudgmentSet& query) const {
    if (empty()) throw DomainError("score: empty pattern pool");
    Truth combined;
    for (std::size_t slot : reference_slots()) {
        combined = revise(combined, match_truth(query, entries_[slot].pattern));
    }
    return expectation(combined, nal_);
}

std::vector<const Pattern*> PatternPool::ordered() const {
    std::vector<const Pattern*> out;
    out.reserve(by_key_.size());
    for (const auto& [key, slot] : order_) out.push_back(&entries_[slot].pattern);
    return out;
}

void PatternPool::export_snapshot(std::ostream& out) const {
    for (const Pattern* p : ordered()) {
        std::string joined;
        for (const Judgment& j : p->judgments.items()) {
            if (!joined.empty()) joined += '|';
            joined += escape_field(j.canonical());
        }
        out << joined << '\t' << render_double(p->truth.w_plus) << '\t'
            << render_double(p->truth.w_minus) << '\t' << p->sources.size() << '\n';
    }
}

PatternPool PatternPool::import_snapshot(std::istream& in, const MatcherConfig& cfg,
                                         const NalConfig& nal) {
    PatternPool pool(cfg, nal);
    std::string line;
    std::size_t line_no = 0;
    SourceId next_source = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        while (true) {
            auto tab = rest.find('\t');
            if (tab == std::string_view::npos) {
                fields.push_back(rest);
                break;
            }
            fields.push_back(rest.substr(0, tab));
            rest.remove_prefix(tab + 1);
        }
        if (fields.size() != 4)
            throw DataError("pool snapshot line " + std::to_string(line_no) +
                            ": expected 4 tab-separated fields, got " +
                            std::to_string(fields.size()));

        std::vector<Judgment> judgments;
        std::string_view jfield = fields[0];
        std::size_t start = 0;
        for (std::size_t i = 0; i <= jfield.size(); ++i) {
            const bool at_end = i == jfield.size();
            // A '|' preceded by an odd run of backslashes is escaped.
            if (!at_end && jfield[i] == '|') {
                std::size_t bs = 0;
                while (bs < i - start && jfield[i - 1 - bs] == '\\') ++bs;
                if (bs % 2 == 1) continue;
            } else if (!at_end) {
                continue;
            }
            const std::string text = unescape_field(jfield.substr(start, i - start), line_no);
            const auto colon = text.find(':');
            if (colon == std::string::npos)
                throw DataError("pool snapshot line " + std::to_string(line_no) +
                                ": judgment missing ':' separator");
            judgments.push_back(
                Judgment{kind_from_name(text.substr(0, colon)), text.substr(colon + 1)});
            start = i + 1;
        }

        const double w_plus = parse_evidence(fields[1], line_no);
        const double w_minus = parse_evidence(fields[2], line_no);
        std::size_t n_sources = 0;
        {
            auto [ptr, ec] =
                std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), n_sources);
            if (ec != std::errc{} || ptr != fields[3].data() + fields[3].size())
                throw DataError("pool snapshot line " + std::to_string(line_no) +
                                ": bad source count");
        }
        // Source identity is not serialized; mint fresh ids to preserve count.
        std::vector<SourceId> sources;
        sources.reserve(n_sources);
        for (std::size_t i = 0; i < n_sources; ++i) sources.push_back(next_source++);
        pool.insert(Pattern{JudgmentSet(std::move(judgments)), Truth{w_plus, w_minus},
                            SourceSet(std::move(sources))});
    }
    return pool;
}

double calibrate_threshold(const PatternPool& pool,
                           std::span<const std::pair<JudgmentSet, bool>> seeded) {
    std::vector<double> pos, neg;
    for (const auto& [judgments, label] : seeded) {
        (label ? pos : neg).push_back(pool.score(judgments));
    }
    if (pos.empty() || neg.empty())
        throw DomainError("calibrate_threshold: both classes are required");
    auto median = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    return 0.5 * (median(pos) + median(neg));
}

}  // namespace iceid
