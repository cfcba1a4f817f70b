#include "iceid/baseline.hpp"

#include "iceid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace iceid {

void RuleConfig::validate() const {
    if (!(jw_prefix_weight >= 0.0) || jw_prefix_weight > 0.25)
        throw ConfigError("RuleConfig: jw_prefix_weight must be in [0, 0.25]");
    if (name_weight < 0.0 || age_weight < 0.0 || geo_weight < 0.0)
        throw ConfigError("RuleConfig: weights must be nonnegative");
    if (std::abs(name_weight + age_weight + geo_weight - 1.0) > 1e-9)
        throw ConfigError("RuleConfig: name/age/geo weights must sum to 1");
    for (const std::string& field : block_on) {
        if (field != "parish" && field != "county" && field != "district" &&
            field != "farm" && field != "first-initial")
            throw ConfigError("RuleConfig: unknown blocking field '" + field + "'");
    }
}

double jaro(std::string_view s1, std::string_view s2) {
    const std::size_t len1 = s1.size();
    const std::size_t len2 = s2.size();
    if (len1 == 0 && len2 == 0) return 1.0;
    if (len1 == 0 || len2 == 0) return 0.0;

    const std::size_t max_len = std::max(len1, len2);
    const std::size_t window = max_len / 2 > 0 ? max_len / 2 - 1 : 0;

    std::vector<bool> used1(len1, false), used2(len2, false);
    std::size_t matches = 0;
    for (std::size_t i = 0; i < len1; ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        const std::size_t hi = std::min(len2, i + window + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (!used2[j] && s1[i] == s2[j]) {
                used1[i] = used2[j] = true;
                ++matches;
                break;
            }
        }
    }
    if (matches == 0) return 0.0;

    // Transpositions: matched characters out of order, counted halved.
    std::size_t transposed = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < len1; ++i) {
        if (!used1[i]) continue;
        while (!used2[j]) ++j;
        if (s1[i] != s2[j]) ++transposed;
        ++j;
    }
    const double m = static_cast<double>(matches);
    const double t = static_cast<double>(transposed) / 2.0;
    return (m / static_cast<double>(len1) + m / static_cast<double>(len2) + (m - t) / m) / 3.0;
}

double jaro_winkler(std::string_view s1, std::string_view s2, const RuleConfig& cfg) {
    if (cfg.jw_prefix_weight > 0.25)
        throw ConfigError("jaro_winkler: prefix weight above 0.25 breaks the [0,1] bound");
    const double j = jaro(s1, s2);
    std::size_t prefix = 0;
    const std::size_t limit = std::min({s1.size(), s2.size(), std::size_t{4}});
    while (prefix < limit && s1[prefix] == s2[prefix]) ++prefix;
    return j + static_cast<double>(prefix) * cfg.jw_prefix_weight * (1.0 - j);
}

namespace {

constexpr std::string_view kMissing = "∅";

// First UTF-8 code point of the first name, or the sentinel.
std::string first_initial(const PersonRecord& r) {
    if (r.first_name.empty()) return std::string(kMissing);
    std::size_t n = 1;
    const unsigned char c = static_cast<unsigned char>(r.first_name[0]);
    if ((c & 0xE0) == 0xC0) n = 2;
    else if ((c & 0xF0) == 0xE0) n = 3;
    else if ((c & 0xF8) == 0xF0) n = 4;
    return r.first_name.substr(0, std::min(n, r.first_name.size()));
}

const std::optional<std::string>& geo_field(const PersonRecord& r, std::string_view name) {
    if (name == "parish") return r.parish;
    if (name == "county") return r.county;
    if (name == "district") return r.district;
    return r.farm;
}

}  // namespace

std::string block_key(const PersonRecord& r, const RuleConfig& cfg) {
    std::string key;
    for (const std::string& field : cfg.block_on) {
        if (!key.empty()) key += '|';
        if (field == "first-initial") {
            key += first_initial(r);
        } else {
            const auto& value = geo_field(r, field);
            key += value ? *value : std::string(kMissing);
        }
    }
    return key;
}

double rule_score(const PersonRecord& r1, const PersonRecord& r2,
                  const AgeDisparityThreshold& thr, const RuleConfig& cfg) {
    // Hard filters.
    if (r1.sex_male && r2.sex_male && *r1.sex_male != *r2.sex_male) return 0.0;
    int gap = -1;
    if (r1.birthyear && r2.birthyear) {
        gap = std::abs(*r1.birthyear - *r2.birthyear);
        if (gap > thr.years) return 0.0;
    }

    // Mean Jaro-Winkler over the name fields present on both sides.
    // full_name always exists, so the mean is never empty.
    double name_sum = 0.0;
    int name_count = 0;
    auto add_name = [&](const std::string& a, const std::string& b) {
        if (a.empty() || b.empty()) return;
        name_sum += jaro_winkler(a, b, cfg);
        ++name_count;
    };
    add_name(r1.full_name, r2.full_name);
    add_name(r1.first_name, r2.first_name);
    add_name(r1.patronym, r2.patronym);
    add_name(r1.surname, r2.surname);
    const double name_sim = name_count > 0 ? name_sum / name_count : 1.0;

    const double age_sim =
        gap < 0 ? 1.0 : (gap == 0 ? 1.0 : 1.0 - static_cast<double>(gap) / thr.years);

    // Hierarchy walk: a quarter per agreeing level, stopping at the first
    // level that disagrees or is unknown on either side.
    double geo_sim = 0.0;
    for (const auto* level : {&PersonRecord::county, &PersonRecord::parish,
                              &PersonRecord::district, &PersonRecord::farm}) {
        const auto& a = r1.*level;
        const auto& b = r2.*level;
        if (!a || !b || *a != *b) break;
        geo_sim += 0.25;
    }

    return cfg.name_weight * name_sim + cfg.age_weight * age_sim + cfg.geo_weight * geo_sim;
}

}  // namespace iceid
