#pragma once

#include "iceid/judgment.hpp"
#include "iceid/record.hpp"

#include <map>
#include <span>
#include <string>

namespace iceid {

// Lowercases ASCII and the Latin-1 supplement block (covers the Icelandic
// alphabet) in a UTF-8 string; other code points pass through.
std::string utf8_lower(std::string_view s);

// Strips ASCII whitespace and U+00A0 from both ends.
std::string trim(std::string_view s);

// Largest plausible birth-year gap between two rows of the same person.
struct AgeDisparityThreshold {
    int years = 0;
};

// Raw CSV row as a column -> value map (keys already lowercased/trimmed).
using RawRow = std::map<std::string, std::string>;

// Normalizes one raw row. Requires id and a parsable heimild; every other
// field degrades to empty/absent rather than erroring.
PersonRecord normalize_record(const RawRow& row);

// 95th percentile (nearest-rank) of per-person birth-year spans over the
// labeled records. Throws ConfigError when no labeled birthyears exist.
AgeDisparityThreshold age_disparity_threshold(std::span<const PersonRecord> records);

// The symbolic comparison of two records: one judgment per feature family,
// status values emitted unordered, and unknown_field atoms wherever either
// side is missing. Symmetric in its arguments.
JudgmentSet pair_judgments(const PersonRecord& r1, const PersonRecord& r2,
                           const AgeDisparityThreshold& thr);

}  // namespace iceid
