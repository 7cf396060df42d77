#pragma once

#include <json.hpp>

#include "series.hpp"
#include "univariate.hpp"
#include "vhs.hpp"

namespace hodge {

using json = nlohmann::ordered_json;

// [[i, j, "c"], ...] sorted by (i, j); coefficients as decimal strings
inline json to_json(const BivarPoly& p) {
    json a = json::array();
    for (const auto& t : p.terms()) a.push_back(json::array({t.i, t.j, t.c.get_str()}));
    return a;
}

inline json to_json(const TruncSeries2& s) {
    json a = json::array();
    for (const auto& t : s.terms()) a.push_back(json::array({t.i, t.j, t.c.get_str()}));
    return {{"order", s.order()}, {"terms", a}};
}

inline json to_json(const RatFun2& r) { return {{"num", to_json(r.num)}, {"den", to_json(r.den)}}; }

inline json to_json(const UniPoly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.get_str());
    return a;
}

inline BivarPoly poly_from_json(const json& a) {
    if (!a.is_array()) throw ParseError("polynomial must be an array of [i, j, coeff] triples");
    std::vector<BivarPoly::Term> ts;
    for (const auto& t : a) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() || !t[2].is_string())
            throw ParseError("bad polynomial term " + t.dump());
        try {
            ts.push_back({t[0].get<int>(), t[1].get<int>(), Int(t[2].get<std::string>(), 10)});
        } catch (const std::invalid_argument&) {
            throw ParseError("bad coefficient " + t[2].dump());
        }
    }
    return BivarPoly::from_terms(std::move(ts));
}

inline TruncSeries2 series_from_json(const json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("terms")) throw ParseError("series needs order and terms");
    const int n = j["order"].get<int>();
    TruncSeries2 s(n);
    const BivarPoly p = poly_from_json(j["terms"]);
    for (const auto& t : p.terms()) {
        if (t.i + t.j > n) throw ParseError("series term beyond its order");
        s.at(t.i, t.j) = t.c;
    }
    return s;
}

inline RatFun2 ratfun_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den")) throw ParseError("rational function needs num and den");
    return {poly_from_json(j["num"]), poly_from_json(j["den"])};
}

namespace detail {
inline Rat exact_from_json(const json& x) {
    if (x.is_string()) return parse_exact(x.get<std::string>());
    if (x.is_number_integer()) return Rat(Int(x.dump(), 10));
    if (x.is_number_float()) return parse_exact(x.dump());
    throw ParseError("expected a number or numeric string, got " + x.dump());
}
}  // namespace detail

// {"g": g, "tau": [[[re, im], ...], ...]}
inline PeriodMatrix period_matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("g") || !j.contains("tau")) throw ParseError("period matrix needs g and tau");
    PeriodMatrix p;
    p.g = j["g"].get<int>();
    if (!j["tau"].is_array()) throw ParseError("tau must be an array of rows");
    for (const auto& row : j["tau"]) {
        if (!row.is_array()) throw ParseError("tau row must be an array");
        std::vector<CRat> r;
        for (const auto& e : row) {
            if (!e.is_array() || e.size() != 2) throw ParseError("entry must be [re, im]");
            r.push_back({detail::exact_from_json(e[0]), detail::exact_from_json(e[1])});
        }
        p.tau.push_back(std::move(r));
    }
    return p;
}

inline json to_json(const CMat& m) {
    json a = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& c : row) r.push_back(json::array({c.re.get_str(), c.im.get_str()}));
        a.push_back(r);
    }
    return a;
}

}  // namespace hodge
