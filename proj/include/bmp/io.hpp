#pragma once

#include "bmp/cone.hpp"
#include "bmp/labelling.hpp"
#include "bmp/partition.hpp"
#include "bmp/polynomial.hpp"

#include <json.hpp>

#include <string>

namespace bmp {

using json = nlohmann::json;

// {"0": "443/350", "2": "129/35", "4": "1"}
inline json to_json(const rational_polynomial& q) {
    json out = json::object();
    for (const auto& [e, c] : q.coeffs()) out[std::to_string(e)] = to_string(c);
    return out;
}

inline json to_json(const polynomial<double>& q) {
    json out = json::object();
    for (const auto& [e, c] : q.coeffs()) out[std::to_string(e)] = c;
    return out;
}

inline rational_polynomial poly_from_json(const json& j) {
    rational_polynomial q;
    for (auto it = j.begin(); it != j.end(); ++it)
        q.set(std::stoi(it.key()), parse_rational(it.value().get<std::string>()));
    return q;
}

// list of integer lists, blocks by minima
inline json to_json(const partition& pi) {
    json out = json::array();
    for (const auto& b : pi.blocks) out.push_back(b);
    return out;
}

inline partition partition_from_json(const json& j) {
    std::vector<std::vector<int>> blocks;
    int p = 0;
    for (const auto& b : j) {
        blocks.push_back(b.get<std::vector<int>>());
        for (int x : blocks.back()) p = std::max(p, x);
    }
    return make_partition(p, std::move(blocks));
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string count_record_csv_header() {
    return "partition,cone,rho,nonstrict,strict,naive,volume,ratio";
}

inline std::string to_csv_row(const count_record& r, const cone& k) {
    std::ostringstream os;
    os.precision(12);
    os << csv_escape(to_text(r.pi)) << ',' << r.cone_name << ',' << csv_escape(k.format_point(r.rho))
       << ',' << r.nonstrict << ',' << r.strict_count << ',';
    if (r.naive) os << *r.naive;
    os << ',' << r.volume << ',' << r.ratio;
    return os.str();
}

}  // namespace bmp
