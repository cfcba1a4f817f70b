#pragma once

#include "iceid/featurize.hpp"
#include "iceid/record.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace iceid {

// Deterministic rule-based matcher configuration. The weights shape the
// soft score after the hard filters; block_on selects the blocking key
// fields ("parish", "county", "district", "farm", "first-initial").
struct RuleConfig {
    double jw_prefix_weight = 0.1;  // must stay <= 0.25 to keep scores in [0,1]
    double name_weight = 0.5;
    double age_weight = 0.25;
    double geo_weight = 0.25;
    std::vector<std::string> block_on = {"parish", "first-initial"};

    void validate() const;
};

// Classical Jaro similarity. Empty vs empty is 1, empty vs nonempty is 0.
double jaro(std::string_view s1, std::string_view s2);

// jaro + prefix_len * p * (1 - jaro), common prefix capped at 4 characters.
double jaro_winkler(std::string_view s1, std::string_view s2, const RuleConfig& cfg);

// Blocking key: configured fields joined by '|'; missing fields become the
// sentinel token.
std::string block_key(const PersonRecord& r, const RuleConfig& cfg);

// Hard filters (sex conflict, birth-year gap beyond the threshold) force 0;
// otherwise a weighted sum of mean name similarity, age closeness, and
// hierarchical geographic agreement.
double rule_score(const PersonRecord& r1, const PersonRecord& r2,
                  const AgeDisparityThreshold& thr, const RuleConfig& cfg);

}  // namespace iceid
