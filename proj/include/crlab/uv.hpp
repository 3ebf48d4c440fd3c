#pragma once

#include <map>
#include <vector>

#include "crlab/poly.hpp"

namespace crlab {

// Polynomial in u = w1*w2 and v = w3*w4, reindexed from a balanced
// SparsePoly4 (every monomial with e1 == e2 and e3 == e4).
template <class Real>
struct UVPolyT {
    using Scalar = complex_t<Real>;
    // key = (j, k) for u^j v^k
    std::map<std::pair<int, int>, Scalar> coeffs;

    void add_term(int j, int k, Scalar c) {
        auto [it, inserted] = coeffs.try_emplace({j, k}, c);
        if (!inserted) it->second += c;
        if (it->second == Scalar(0)) coeffs.erase(it);
    }
};

using UVPoly = UVPolyT<double>;

// Univariate polynomial in v, constant term first.
template <class Real>
using VPolyT = std::vector<complex_t<Real>>;
using VPoly = VPolyT<double>;

template <class Real>
UVPolyT<Real> to_uv(const SparsePoly4T<Real>& p) {
    UVPolyT<Real> q;
    for (const auto& [e, c] : p.terms) {
        if (e.e1 != e.e2 || e.e3 != e.e4)
            throw NotUVExpressible("monomial is not balanced in (w1,w2) or (w3,w4)");
        q.add_term(e.e1, e.e3, c);
    }
    return q;
}

// Inverse of to_uv: u^j v^k -> w1^j w2^j w3^k w4^k.
template <class Real>
SparsePoly4T<Real> uv_expand(const UVPolyT<Real>& q) {
    SparsePoly4T<Real> p;
    for (const auto& [jk, c] : q.coeffs) p.add_term({jk.first, jk.first, jk.second, jk.second}, c);
    return p;
}

template <class Real>
Real binomial(int m, int k) {
    if (k < 0 || k > m) return Real(0);
    Real r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<Real>(m - k + i) / static_cast<Real>(i);
    // Binomials in this project stay below 2^53, so the result is exact
    // after rounding to the nearest integer.
    return std::floor(r + Real(0.5));
}

// Restriction to the quadric w1*w2 + w3*w4 = 1: substitutes u := 1 - v and
// collects powers of v.
template <class Real>
VPolyT<Real> uv_restrict_to_quadric(const UVPolyT<Real>& q) {
    int deg = 0;
    for (const auto& [jk, c] : q.coeffs) deg = std::max(deg, jk.first + jk.second);
    VPolyT<Real> out(static_cast<std::size_t>(deg) + 1, complex_t<Real>(0));
    for (const auto& [jk, c] : q.coeffs) {
        const int j = jk.first, k = jk.second;
        for (int i = 0; i <= j; ++i) {
            Real sign = (i % 2 == 0) ? Real(1) : Real(-1);
            out[static_cast<std::size_t>(k + i)] += c * complex_t<Real>(sign * binomial<Real>(j, i));
        }
    }
    while (out.size() > 1 && out.back() == complex_t<Real>(0)) out.pop_back();
    return out;
}

template <class Real>
complex_t<Real> evaluate_vpoly(const VPolyT<Real>& p, complex_t<Real> v) {
    complex_t<Real> acc(0);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * v + p[i];
    return acc;
}

template <class Real>
Real max_abs_coeff_vpoly(const VPolyT<Real>& p) {
    Real m = 0;
    for (const auto& c : p) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace crlab
