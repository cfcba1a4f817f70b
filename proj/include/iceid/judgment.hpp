#pragma once

#include "iceid/errors.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iceid {

// Feature families a judgment can belong to. One judgment is an atomic
// symbolic statement about a record pair, e.g. "the surnames agree" or
// "the census years differ by 26".
enum class JudgmentKind : std::uint8_t {
    heimild_diff,
    name,
    first_name,
    patronym,
    surname,
    birthyear,
    birthyear_compatible,
    sex,
    status_value,
    marriage,
    farm,
    county,
    parish,
    district,
    unknown_field,
    generic_token,
};

std::string_view kind_name(JudgmentKind kind);

// Parses the canonical kind token; throws DataError on unknown names.
JudgmentKind kind_from_name(std::string_view name);

struct Judgment {
    JudgmentKind kind;
    std::string value;

    auto operator<=>(const Judgment&) const = default;

    // Canonical text form "kind:value"; judgment identity is this string.
    std::string canonical() const {
        std::string s{kind_name(kind)};
        s += ':';
        s += value;
        return s;
    }
};

// An unordered, duplicate-free judgment collection, stored sorted so that
// set algebra is a linear merge and the canonical key is a deterministic join.
class JudgmentSet {
public:
    JudgmentSet() = default;
    explicit JudgmentSet(std::vector<Judgment> judgments);

    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }
    std::span<const Judgment> items() const { return items_; }

    bool contains(const Judgment& j) const;

    JudgmentSet set_difference(const JudgmentSet& other) const;
    JudgmentSet set_intersection(const JudgmentSet& other) const;
    std::size_t overlap(const JudgmentSet& other) const;

    // Key string: canonical judgments joined by '\x1f'. Unique per set.
    std::string key() const;

    bool operator==(const JudgmentSet&) const = default;
    auto operator<=>(const JudgmentSet&) const = default;

private:
    std::vector<Judgment> items_;  // sorted, unique
};

}  // namespace iceid
