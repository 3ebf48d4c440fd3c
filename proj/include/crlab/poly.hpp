#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>

#include "crlab/core.hpp"
#include "crlab/exponent.hpp"

namespace crlab {

// Sparse polynomial over complex scalars in w1..w4. Canonical form: one entry
// per exponent, exact zeros removed, all coefficients finite. Values are
// immutable in spirit: every operation returns a fresh polynomial.
template <class Real>
struct SparsePoly4T {
    using Scalar = complex_t<Real>;
    using TermMap = std::map<Exponent4, Scalar>;

    TermMap terms;

    SparsePoly4T() = default;

    static SparsePoly4T zero() { return {}; }

    static SparsePoly4T constant(Scalar c) {
        SparsePoly4T p;
        p.add_term({0, 0, 0, 0}, c);
        return p;
    }

    static SparsePoly4T monomial(Exponent4 e, Scalar c) {
        SparsePoly4T p;
        p.add_term(e, c);
        return p;
    }

    // Variable w_var, var in 1..4.
    static SparsePoly4T variable(int var) {
        Exponent4 e;
        (var == 1 ? e.e1 : var == 2 ? e.e2 : var == 3 ? e.e3 : e.e4) = 1;
        return monomial(e, Scalar(1));
    }

    bool empty() const { return terms.empty(); }
    std::size_t term_count() const { return terms.size(); }

    void add_term(const Exponent4& e, Scalar c) {
        if (!is_finite<Real>(c)) throw ConstructionError("non-finite coefficient");
        auto [it, inserted] = terms.try_emplace(e, c);
        if (!inserted) it->second += c;
        if (it->second == Scalar(0)) terms.erase(it);
    }

    Scalar coeff(const Exponent4& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? Scalar(0) : it->second;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms) d = std::max(d, e.total_degree());
        return d;
    }
};

using SparsePoly4 = SparsePoly4T<double>;

template <class Real>
SparsePoly4T<Real> add(const SparsePoly4T<Real>& p, const SparsePoly4T<Real>& q) {
    SparsePoly4T<Real> r = p;
    for (const auto& [e, c] : q.terms) r.add_term(e, c);
    return r;
}

template <class Real>
SparsePoly4T<Real> scale(const SparsePoly4T<Real>& p, complex_t<Real> c) {
    SparsePoly4T<Real> r;
    if (c == complex_t<Real>(0)) return r;
    for (const auto& [e, pc] : p.terms) r.add_term(e, pc * c);
    return r;
}

template <class Real>
SparsePoly4T<Real> sub(const SparsePoly4T<Real>& p, const SparsePoly4T<Real>& q) {
    return add(p, scale(q, complex_t<Real>(-1)));
}

template <class Real>
SparsePoly4T<Real> mul(const SparsePoly4T<Real>& p, const SparsePoly4T<Real>& q,
                       int degree_cap = kDefaultDegreeCap) {
    SparsePoly4T<Real> r;
    for (const auto& [ep, cp] : p.terms) {
        for (const auto& [eq, cq] : q.terms) {
            Exponent4 e = ep + eq;
            if (e.total_degree() > degree_cap)
                throw DegreeCapExceeded("product degree " + std::to_string(e.total_degree()) +
                                        " exceeds cap " + std::to_string(degree_cap));
            r.add_term(e, cp * cq);
        }
    }
    return r;
}

template <class Real>
SparsePoly4T<Real> operator+(const SparsePoly4T<Real>& p, const SparsePoly4T<Real>& q) {
    return add(p, q);
}
template <class Real>
SparsePoly4T<Real> operator-(const SparsePoly4T<Real>& p, const SparsePoly4T<Real>& q) {
    return sub(p, q);
}
template <class Real>
SparsePoly4T<Real> operator*(const SparsePoly4T<Real>& p, const SparsePoly4T<Real>& q) {
    return mul(p, q);
}

template <class Real>
SparsePoly4T<Real> pow_poly(const SparsePoly4T<Real>& p, int n,
                            int degree_cap = kDefaultDegreeCap) {
    SparsePoly4T<Real> r = SparsePoly4T<Real>::constant(complex_t<Real>(1));
    for (int i = 0; i < n; ++i) r = mul(r, p, degree_cap);
    return r;
}

// Term-wise partial derivative with respect to w_var, var in 1..4.
template <class Real>
SparsePoly4T<Real> partial_derivative(const SparsePoly4T<Real>& p, int var) {
    SparsePoly4T<Real> r;
    for (const auto& [e, c] : p.terms) {
        int k = e[var];
        if (k == 0) continue;
        Exponent4 d = e;
        (var == 1 ? d.e1 : var == 2 ? d.e2 : var == 3 ? d.e3 : d.e4) -= 1;
        r.add_term(d, c * complex_t<Real>(static_cast<Real>(k)));
    }
    return r;
}

// The vector field L(f) = w3 df/dw2 - w1 df/dw4, applied term by term.
template <class Real>
SparsePoly4T<Real> apply_vector_field_L(const SparsePoly4T<Real>& p) {
    SparsePoly4T<Real> r;
    for (const auto& [e, c] : p.terms) {
        if (e.e2 > 0)
            r.add_term({e.e1, e.e2 - 1, e.e3 + 1, e.e4},
                       c * complex_t<Real>(static_cast<Real>(e.e2)));
        if (e.e4 > 0)
            r.add_term({e.e1 + 1, e.e2, e.e3, e.e4 - 1},
                       c * complex_t<Real>(static_cast<Real>(-e.e4)));
    }
    return r;
}

// Term-sum evaluation in lexicographic term order; powers by repeated
// multiplication so the result is deterministic.
template <class Real>
complex_t<Real> evaluate(const SparsePoly4T<Real>& p, const std::array<complex_t<Real>, 4>& w) {
    complex_t<Real> acc(0);
    for (const auto& [e, c] : p.terms) {
        complex_t<Real> t = c;
        for (int var = 1; var <= 4; ++var) {
            for (int i = 0; i < e[var]; ++i) t *= w[static_cast<std::size_t>(var - 1)];
        }
        acc += t;
    }
    return acc;
}

template <class Real>
Real max_abs_coeff(const SparsePoly4T<Real>& p) {
    Real m = 0;
    for (const auto& [e, c] : p.terms) m = std::max(m, std::abs(c));
    return m;
}

// Degree if homogeneous, nullopt otherwise (zero polynomial is homogeneous
// of every degree; reported as degree 0).
template <class Real>
std::optional<int> homogeneous_degree(const SparsePoly4T<Real>& p) {
    if (p.terms.empty()) return 0;
    int d = p.terms.begin()->first.total_degree();
    for (const auto& [e, c] : p.terms)
        if (e.total_degree() != d) return std::nullopt;
    return d;
}

// Max coefficient difference relative to the larger of the two coefficient
// scales; 0 for two zero polynomials.
template <class Real>
Real coeff_distance_rel(const SparsePoly4T<Real>& p, const SparsePoly4T<Real>& q) {
    Real scale = std::max(max_abs_coeff(p), max_abs_coeff(q));
    if (scale == Real(0)) return Real(0);
    Real worst = 0;
    auto probe = [&](const SparsePoly4T<Real>& a, const SparsePoly4T<Real>& b) {
        for (const auto& [e, c] : a.terms) worst = std::max(worst, std::abs(c - b.coeff(e)));
    };
    probe(p, q);
    probe(q, p);
    return worst / scale;
}

}  // namespace crlab
