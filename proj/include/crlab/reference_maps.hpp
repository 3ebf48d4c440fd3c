#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "crlab/quadric.hpp"
#include "crlab/roots.hpp"
#include "crlab/uv.hpp"

namespace crlab {

// Polynomials in w1, conj(w1), w3, conj(w3) with holomorphic and
// antiholomorphic exponents tracked separately. These carry the harmonic
// sources the comparison maps come from.
struct MixedExp {
    int p1 = 0, q1 = 0, p3 = 0, q3 = 0;  // w1^p1 conj(w1)^q1 w3^p3 conj(w3)^q3

    int total_degree() const { return p1 + q1 + p3 + q3; }

    friend bool operator==(const MixedExp& a, const MixedExp& b) {
        return a.p1 == b.p1 && a.q1 == b.q1 && a.p3 == b.p3 && a.q3 == b.q3;
    }
    friend bool operator<(const MixedExp& a, const MixedExp& b) {
        return std::tie(a.p1, a.q1, a.p3, a.q3) < std::tie(b.p1, b.q1, b.p3, b.q3);
    }
};

struct MixedPoly {
    std::map<MixedExp, Complex> terms;

    void add_term(const MixedExp& e, Complex c) {
        if (!is_finite<double>(c)) throw ConstructionError("non-finite coefficient");
        auto [it, inserted] = terms.try_emplace(e, c);
        if (!inserted) it->second += c;
        if (it->second == Complex(0)) terms.erase(it);
    }

    Complex coeff(const MixedExp& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? Complex(0) : it->second;
    }
};

inline MixedPoly mixed_add(const MixedPoly& a, const MixedPoly& b) {
    MixedPoly r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
}

inline MixedPoly mixed_scale(const MixedPoly& a, Complex c) {
    MixedPoly r;
    if (c == Complex(0)) return r;
    for (const auto& [e, pc] : a.terms) r.add_term(e, pc * c);
    return r;
}

inline MixedPoly mixed_mul(const MixedPoly& a, const MixedPoly& b) {
    MixedPoly r;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms)
            r.add_term({ea.p1 + eb.p1, ea.q1 + eb.q1, ea.p3 + eb.p3, ea.q3 + eb.q3}, ca * cb);
    return r;
}

inline double mixed_max_abs_coeff(const MixedPoly& p) {
    double m = 0;
    for (const auto& [e, c] : p.terms) m = std::max(m, std::abs(c));
    return m;
}

inline Complex mixed_evaluate(const MixedPoly& p, Complex w1, Complex w3) {
    Complex acc(0);
    const Complex c1 = std::conj(w1), c3 = std::conj(w3);
    for (const auto& [e, c] : p.terms) {
        Complex t = c;
        for (int i = 0; i < e.p1; ++i) t *= w1;
        for (int i = 0; i < e.q1; ++i) t *= c1;
        for (int i = 0; i < e.p3; ++i) t *= w3;
        for (int i = 0; i < e.q3; ++i) t *= c3;
        acc += t;
    }
    return acc;
}

// conj(w1) d/dw3 - conj(w3) d/dw1, applied term by term.
inline MixedPoly ar_operator(const MixedPoly& g) {
    MixedPoly r;
    for (const auto& [e, c] : g.terms) {
        if (e.p3 > 0) r.add_term({e.p1, e.q1 + 1, e.p3 - 1, e.q3}, c * static_cast<double>(e.p3));
        if (e.p1 > 0) r.add_term({e.p1 - 1, e.q1, e.p3, e.q3 + 1}, -c * static_cast<double>(e.p1));
    }
    return r;
}

// Harmonic means annihilated by d^2/dw1 dconj(w1) + d^2/dw3 dconj(w3), which
// is proportional to the flat Laplacian in the four real coordinates.
inline bool is_harmonic(const MixedPoly& g, double rel_tol = 1e-12) {
    MixedPoly lap;
    for (const auto& [e, c] : g.terms) {
        if (e.p1 > 0 && e.q1 > 0)
            lap.add_term({e.p1 - 1, e.q1 - 1, e.p3, e.q3}, c * static_cast<double>(e.p1 * e.q1));
        if (e.p3 > 0 && e.q3 > 0)
            lap.add_term({e.p1, e.q1, e.p3 - 1, e.q3 - 1}, c * static_cast<double>(e.p3 * e.q3));
    }
    const double scale = mixed_max_abs_coeff(g);
    return mixed_max_abs_coeff(lap) <= rel_tol * std::max(1.0, scale);
}

// Multiplies each homogeneous component of degree d < d_max by
// (|w1|^2 + |w3|^2)^((d_max - d)/2), which changes nothing on the sphere.
// Components at odd gap from d_max cannot be completed this way. d_max
// defaults to the top degree present; pass a larger target to lift further.
inline MixedPoly homogenize_on_sphere(const MixedPoly& g, int d_max = -1) {
    int top = 0;
    for (const auto& [e, c] : g.terms) top = std::max(top, e.total_degree());
    if (d_max < 0) d_max = top;
    if (d_max < top) throw NotHomogenizable("target degree below the top component");
    MixedPoly norm2;  // |w1|^2 + |w3|^2
    norm2.add_term({1, 1, 0, 0}, Complex(1));
    norm2.add_term({0, 0, 1, 1}, Complex(1));
    MixedPoly out;
    std::map<int, MixedPoly> components;
    for (const auto& [e, c] : g.terms) components[e.total_degree()].add_term(e, c);
    for (auto& [d, comp] : components) {
        const int gap = d_max - d;
        if (gap % 2 != 0)
            throw NotHomogenizable("component degree gap is odd; no power of |w1|^2 + |w3|^2 fits");
        MixedPoly lifted = comp;
        for (int i = 0; i < gap / 2; ++i) lifted = mixed_mul(lifted, norm2);
        out = mixed_add(out, lifted);
    }
    return out;
}

// conj(w1) -> w2, conj(w3) -> w4: the holomorphic extension to C^4 that
// restricts back to g on the sphere w2 = conj(w1), w4 = conj(w3).
inline SparsePoly4 extend_to_quadric_coords(const MixedPoly& g) {
    SparsePoly4 p;
    for (const auto& [e, c] : g.terms) p.add_term({e.p1, e.q1, e.p3, e.q3}, c);
    return p;
}

// Roots in v of the quadric restriction of L(f), with multiplicities. This
// is the dichotomy probe: the constructed maps give a single multiple root,
// the reference map gives two distinct ones.
inline std::vector<RootWithMultiplicity> degeneracy_root_profile(const SparsePoly4& f,
                                                                 double cluster_tol = 1e-7) {
    const VPoly restricted = uv_restrict_to_quadric(to_uv(apply_vector_field_L(f)));
    return root_profile(restricted, cluster_tol);
}

// The two-point witness that no F_n is injective on M_t once t >= sqrt(2):
// both points share (w1, w3) and P_n vanishes identically on both, so the
// images agree exactly.
template <class Real>
std::pair<QuadricPoint, QuadricPoint> noninjectivity_witness(const ImmersionMapT<Real>& m,
                                                             double t) {
    (void)m;  // the pair does not depend on n
    return collision_pair_points(t);
}

// Worked harmonic inputs.

// Q/6 + i (|w3|^2 - |w1|^2)/2 normalized as the operator source, with
// Q = |w1|^4 - 4 |w1|^2 |w3|^2 + |w3|^4 + i (|w3|^2 - |w1|^2).
inline MixedPoly reference_operator_source() {
    MixedPoly g;
    g.add_term({2, 2, 0, 0}, Complex(1.0 / 6));
    g.add_term({1, 1, 1, 1}, Complex(-4.0 / 6));
    g.add_term({0, 0, 2, 2}, Complex(1.0 / 6));
    g.add_term({0, 0, 1, 1}, Complex(0, 0.5));
    g.add_term({1, 1, 0, 0}, Complex(0, -0.5));
    return g;
}

// w3 conj(w1) conj(w3)^2 - w1 conj(w1)^2 conj(w3) + i conj(w1) conj(w3):
// the value of ar_operator on the source above.
inline MixedPoly reference_curly_p() {
    MixedPoly g;
    g.add_term({0, 1, 1, 2}, Complex(1));
    g.add_term({1, 2, 0, 1}, Complex(-1));
    g.add_term({0, 1, 0, 1}, Complex(0, 1));
    return g;
}

// The inhomogeneous harmonic polynomial whose homogenization and extension
// reproduce P_1:
//   (1/6) w3 conj(w1) conj(w3)^2 - (1/6) w1 conj(w1)^2 conj(w3)
//   - (i/(2 sqrt3)) conj(w1) conj(w3).
inline MixedPoly p1_harmonic_source() {
    const double s3 = std::sqrt(3.0);
    MixedPoly g;
    g.add_term({0, 1, 1, 2}, Complex(1.0 / 6));
    g.add_term({1, 2, 0, 1}, Complex(-1.0 / 6));
    g.add_term({0, 1, 0, 1}, Complex(0, -0.5 / s3));
    return g;
}

}  // namespace crlab
