#pragma once

#include <optional>
#include <string>

namespace iceid {

// One normalized census row. Name strings are lowercase and trimmed; empty
// means absent. full_name is never empty — "unknown" is the explicit
// sentinel when no name component survives normalization.
struct PersonRecord {
    std::string id;
    int heimild = 0;  // census wave/year, present on every record

    std::string nafn_norm;
    std::string first_name;
    std::string patronym;
    std::string surname;
    std::string full_name;

    std::optional<int> birthyear;
    std::optional<bool> sex_male;
    std::optional<std::string> status;
    std::optional<std::string> marriagestatus;

    // Opaque region ids.
    std::optional<std::string> farm;
    std::optional<std::string> parish;
    std::optional<std::string> district;
    std::optional<std::string> county;

    // Kinship links (row/person ids).
    std::optional<std::string> partner;
    std::optional<std::string> father;
    std::optional<std::string> mother;

    // Expert cluster label; absent = unlabeled.
    std::optional<std::string> person;

    bool labeled() const { return person.has_value(); }
};

}  // namespace iceid
