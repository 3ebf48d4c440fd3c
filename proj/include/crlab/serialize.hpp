#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "crlab/immersion.hpp"
#include "crlab/poly.hpp"
#include "crlab/quadric.hpp"
#include "crlab/reference_maps.hpp"

namespace crlab {

using json = nlohmann::json;

// Polynomial wire format: {"terms":[{"e":[e1,e2,e3,e4],"re":..,"im":..}]},
// terms in lexicographic exponent order. Doubles survive the round trip
// bit-exactly (shortest round-trip printing on write, correctly rounded
// parse on read).
inline json poly_to_json(const SparsePoly4& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms)
        terms.push_back({{"e", {e.e1, e.e2, e.e3, e.e4}}, {"re", c.real()}, {"im", c.imag()}});
    return {{"terms", std::move(terms)}};
}

inline SparsePoly4 poly_from_json(const json& j) {
    SparsePoly4 p;
    for (const auto& term : j.at("terms")) {
        const auto& e = term.at("e");
        p.add_term({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(), e.at(3).get<int>()},
                   Complex(term.at("re").get<double>(), term.at("im").get<double>()));
    }
    return p;
}

// Mixed polynomials reuse the same shape with holomorphic exponents under
// "e" = [p1, p3] and antiholomorphic ones under "q" = [q1, q3].
inline json mixed_to_json(const MixedPoly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms)
        terms.push_back({{"e", {e.p1, e.p3}}, {"q", {e.q1, e.q3}}, {"re", c.real()}, {"im", c.imag()}});
    return {{"terms", std::move(terms)}};
}

inline MixedPoly mixed_from_json(const json& j) {
    MixedPoly p;
    for (const auto& term : j.at("terms")) {
        const auto& e = term.at("e");
        const auto& q = term.at("q");
        p.add_term({e.at(0).get<int>(), q.at(0).get<int>(), e.at(1).get<int>(), q.at(1).get<int>()},
                   Complex(term.at("re").get<double>(), term.at("im").get<double>()));
    }
    return p;
}

inline json immersion_to_json(const ImmersionMap& m) {
    json alpha = json::array();
    for (const auto& c : m.alpha) alpha.push_back({{"re", c.real()}, {"im", c.imag()}});
    return {{"n", m.n},          {"a", m.a},
            {"t_threshold", m.t_threshold}, {"K", m.K},
            {"alpha", std::move(alpha)},    {"P", poly_to_json(m.P)},
            {"R", poly_to_json(m.R)}};
}

inline ImmersionMap immersion_from_json(const json& j) {
    ImmersionMap m;
    m.n = j.at("n").get<int>();
    m.a = j.at("a").get<double>();
    m.t_threshold = j.at("t_threshold").get<double>();
    m.K = j.at("K").get<int>();
    for (const auto& c : j.at("alpha"))
        m.alpha.emplace_back(c.at("re").get<double>(), c.at("im").get<double>());
    m.P = poly_from_json(j.at("P"));
    m.R = poly_from_json(j.at("R"));
    return m;
}

inline void write_points_csv(std::ostream& os, const std::vector<QuadricPoint>& points) {
    os << "w1_re,w1_im,w2_re,w2_im,w3_re,w3_im,w4_re,w4_im,quadric_residual,level\n";
    os.precision(17);
    for (const auto& p : points) {
        os << p.w1.real() << ',' << p.w1.imag() << ',' << p.w2.real() << ',' << p.w2.imag() << ','
           << p.w3.real() << ',' << p.w3.imag() << ',' << p.w4.real() << ',' << p.w4.imag() << ','
           << p.quadric_residual << ',' << p.level << '\n';
    }
}

}  // namespace crlab
