#include "iceid/featurize.hpp"

#include "iceid/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace iceid {

std::string utf8_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (c >= 'A' && c <= 'Z') {
            out += static_cast<char>(c + 0x20);
        } else if (c == 0xC3 && i + 1 < s.size()) {
            // U+00C0..U+00DE lowercase by +0x20, except U+00D7 (multiplication sign).
            const unsigned char next = static_cast<unsigned char>(s[i + 1]);
            out += static_cast<char>(c);
            if (next >= 0x80 && next <= 0x9E && next != 0x97) {
                out += static_cast<char>(next + 0x20);
            } else {
                out += static_cast<char>(next);
            }
            ++i;
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

std::string trim(std::string_view s) {
    auto is_space = [&](std::size_t i) -> std::size_t {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') return 1;
        if (c == 0xC2 && i + 1 < s.size() &&
            static_cast<unsigned char>(s[i + 1]) == 0xA0)
            return 2;  // U+00A0
        return 0;
    };
    std::size_t begin = 0;
    while (begin < s.size()) {
        const std::size_t n = is_space(begin);
        if (n == 0) break;
        begin += n;
    }
    std::size_t end = s.size();
    while (end > begin) {
        // Walk back over a trailing single-byte space or a two-byte NBSP.
        if (std::size_t n = is_space(end - 1); n == 1) {
            --end;
        } else if (end - begin >= 2 &&
                   static_cast<unsigned char>(s[end - 2]) == 0xC2 &&
                   static_cast<unsigned char>(s[end - 1]) == 0xA0) {
            end -= 2;
        } else {
            break;
        }
    }
    return std::string(s.substr(begin, end - begin));
}

namespace {

std::string get_field(const RawRow& row, const std::string& column) {
    auto it = row.find(column);
    return it == row.end() ? std::string{} : it->second;
}

std::string norm_text(const RawRow& row, const std::string& column) {
    return utf8_lower(trim(get_field(row, column)));
}

std::optional<std::string> opt_text(const RawRow& row, const std::string& column) {
    std::string v = norm_text(row, column);
    if (v.empty()) return std::nullopt;
    return v;
}

// Integer coercion tolerant of float renderings like "1703.0".
std::optional<int> parse_int(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) return std::nullopt;
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size()) return v;
    double d = 0.0;
    auto [dptr, dec] = std::from_chars(s.data(), s.data() + s.size(), d);
    if (dec == std::errc{} && dptr == s.data() + s.size() && d == std::floor(d) &&
        d >= -2e9 && d <= 2e9)
        return static_cast<int>(d);
    return std::nullopt;
}

std::optional<bool> parse_sex(const std::string& raw) {
    const std::string s = utf8_lower(trim(raw));
    if (s.empty()) return std::nullopt;
    if (const auto n = parse_int(s)) {
        if (*n == 1) return true;
        if (*n == 2) return false;
        return std::nullopt;
    }
    if (s == "m" || s == "male" || s == "kk" || s == "karl") return true;
    if (s == "f" || s == "female" || s == "kvk" || s == "kona" || s == "w") return false;
    return std::nullopt;
}

}  // namespace

PersonRecord normalize_record(const RawRow& row) {
    PersonRecord rec;
    rec.id = trim(get_field(row, "id"));
    if (rec.id.empty()) throw DataError("record is missing an id");

    const auto heimild = parse_int(get_field(row, "heimild"));
    if (!heimild)
        throw DataError("record " + rec.id + ": heimild missing or unparsable ('" +
                        get_field(row, "heimild") + "')");
    rec.heimild = *heimild;

    rec.nafn_norm = norm_text(row, "nafn_norm");
    rec.first_name = norm_text(row, "first_name");
    rec.patronym = norm_text(row, "patronym");
    rec.surname = norm_text(row, "surname");

    if (!rec.nafn_norm.empty()) {
        rec.full_name = rec.nafn_norm;
    } else {
        for (const std::string* part : {&rec.first_name, &rec.patronym, &rec.surname}) {
            if (part->empty()) continue;
            if (!rec.full_name.empty()) rec.full_name += ' ';
            rec.full_name += *part;
        }
        if (rec.full_name.empty()) rec.full_name = "unknown";
    }

    rec.birthyear = parse_int(get_field(row, "birthyear"));
    rec.sex_male = parse_sex(get_field(row, "sex"));
    rec.status = opt_text(row, "status");
    rec.marriagestatus = opt_text(row, "marriagestatus");
    rec.farm = opt_text(row, "farm");
    rec.parish = opt_text(row, "parish");
    rec.district = opt_text(row, "district");
    rec.county = opt_text(row, "county");
    rec.partner = opt_text(row, "partner");
    rec.father = opt_text(row, "father");
    rec.mother = opt_text(row, "mother");
    rec.person = opt_text(row, "person");
    return rec;
}

AgeDisparityThreshold age_disparity_threshold(std::span<const PersonRecord> records) {
    std::unordered_map<std::string, std::pair<int, int>> ranges;  // person -> (min, max)
    for (const PersonRecord& r : records) {
        if (!r.labeled() || !r.birthyear) continue;
        auto [it, fresh] = ranges.try_emplace(*r.person, *r.birthyear, *r.birthyear);
        if (!fresh) {
            it->second.first = std::min(it->second.first, *r.birthyear);
            it->second.second = std::max(it->second.second, *r.birthyear);
        }
    }
    if (ranges.empty())
        throw ConfigError("age_disparity_threshold: no labeled birthyears in the data");

    std::vector<int> spans;
    spans.reserve(ranges.size());
    for (const auto& [person, range] : ranges) spans.push_back(range.second - range.first);
    std::sort(spans.begin(), spans.end());

    // Nearest-rank percentile: rank = ceil(p * N), 1-based.
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil(0.95 * static_cast<double>(spans.size())));
    return AgeDisparityThreshold{spans[std::max<std::size_t>(rank, 1) - 1]};
}

namespace {

void emit_same_different(std::vector<Judgment>& out, JudgmentKind kind,
                         const std::string& field, bool a_known, bool b_known,
                         bool equal) {
    if (!a_known || !b_known) {
        out.push_back(Judgment{JudgmentKind::unknown_field, field});
    } else {
        out.push_back(Judgment{kind, equal ? "same" : "different"});
    }
}

}  // namespace

JudgmentSet pair_judgments(const PersonRecord& r1, const PersonRecord& r2,
                           const AgeDisparityThreshold& thr) {
    std::vector<Judgment> out;
    out.reserve(16);

    out.push_back(Judgment{JudgmentKind::heimild_diff,
                           std::to_string(std::abs(r1.heimild - r2.heimild))});

    emit_same_different(out, JudgmentKind::name, "name", !r1.nafn_norm.empty(),
                        !r2.nafn_norm.empty(), r1.nafn_norm == r2.nafn_norm);
    emit_same_different(out, JudgmentKind::first_name, "first_name", !r1.first_name.empty(),
                        !r2.first_name.empty(), r1.first_name == r2.first_name);
    emit_same_different(out, JudgmentKind::patronym, "patronym", !r1.patronym.empty(),
                        !r2.patronym.empty(), r1.patronym == r2.patronym);
    emit_same_different(out, JudgmentKind::surname, "surname", !r1.surname.empty(),
                        !r2.surname.empty(), r1.surname == r2.surname);

    if (r1.birthyear && r2.birthyear) {
        const int gap = std::abs(*r1.birthyear - *r2.birthyear);
        out.push_back(Judgment{JudgmentKind::birthyear, gap == 0 ? "same" : "different"});
        out.push_back(Judgment{JudgmentKind::birthyear_compatible,
                               gap <= thr.years ? "true" : "false"});
    } else {
        out.push_back(Judgment{JudgmentKind::unknown_field, "birthyear"});
    }

    emit_same_different(out, JudgmentKind::sex, "sex", r1.sex_male.has_value(),
                        r2.sex_male.has_value(), r1.sex_male == r2.sex_male);

    if (r1.status && r2.status) {
        out.push_back(Judgment{JudgmentKind::status_value, *r1.status});
        out.push_back(Judgment{JudgmentKind::status_value, *r2.status});
    } else {
        out.push_back(Judgment{JudgmentKind::unknown_field, "status"});
    }

    emit_same_different(out, JudgmentKind::marriage, "marriage", r1.marriagestatus.has_value(),
                        r2.marriagestatus.has_value(), r1.marriagestatus == r2.marriagestatus);

    emit_same_different(out, JudgmentKind::farm, "farm", r1.farm.has_value(),
                        r2.farm.has_value(), r1.farm == r2.farm);
    emit_same_different(out, JudgmentKind::county, "county", r1.county.has_value(),
                        r2.county.has_value(), r1.county == r2.county);
    emit_same_different(out, JudgmentKind::parish, "parish", r1.parish.has_value(),
                        r2.parish.has_value(), r1.parish == r2.parish);
    emit_same_different(out, JudgmentKind::district, "district", r1.district.has_value(),
                        r2.district.has_value(), r1.district == r2.district);

    return JudgmentSet(std::move(out));
}

}  // namespace iceid
