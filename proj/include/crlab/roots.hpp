#pragma once

#include <algorithm>
#include <vector>

#include "crlab/core.hpp"

namespace crlab {

// Dense univariate complex polynomials, constant term first. Used for the
// fiber cubic oracle and for root-multiplicity profiles of quadric
// restrictions. Degrees here are tiny (<= a few dozen).

using Poly1 = std::vector<Complex>;

inline Complex eval_poly1(const Poly1& p, Complex z) {
    Complex acc(0);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
    return acc;
}

inline Poly1 derivative_poly1(const Poly1& p) {
    if (p.size() <= 1) return {Complex(0)};
    Poly1 d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
    return d;
}

inline Poly1 trim_poly1(Poly1 p, double eps = 0.0) {
    double scale = 0;
    for (const auto& c : p) scale = std::max(scale, std::abs(c));
    while (p.size() > 1 && std::abs(p.back()) <= eps * scale) p.pop_back();
    return p;
}

inline int degree_poly1(const Poly1& p) { return static_cast<int>(p.size()) - 1; }

// Newton polish from a starting guess; stops once the step stagnates.
inline Complex newton_polish(const Poly1& p, const Poly1& dp, Complex z, int max_steps = 8) {
    for (int i = 0; i < max_steps; ++i) {
        Complex f = eval_poly1(p, z);
        Complex df = eval_poly1(dp, z);
        if (std::abs(df) == 0.0) break;
        Complex step = f / df;
        z -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    return z;
}

// Durand-Kerner simultaneous iteration, then a Newton polish per root.
// Derivative-free in the iteration itself, so it is independent of any
// closed-form root expressions it gets checked against.
inline std::vector<Complex> find_roots(const Poly1& poly, int max_iters = 200) {
    Poly1 p = trim_poly1(poly, 1e-300);
    int n = degree_poly1(p);
    std::vector<Complex> roots;
    if (n <= 0) return roots;
    // Monic normalization.
    Poly1 m(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m[i] = p[i] / p.back();
    // Initial guesses on a spiral inside the Cauchy root bound.
    double radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(m[static_cast<std::size_t>(i)]));
    radius = 1.0 + radius;
    Complex seed(0.4, 0.9);
    Complex g(1.0, 0.0);
    roots.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g *= seed;
        roots[static_cast<std::size_t>(i)] = g * (radius / std::abs(g)) * (0.3 + 0.7 * (i + 1.0) / n);
    }
    for (int iter = 0; iter < max_iters; ++iter) {
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            Complex zi = roots[static_cast<std::size_t>(i)];
            Complex denom(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= zi - roots[static_cast<std::size_t>(j)];
            if (std::abs(denom) == 0.0) {
                // Coincident iterates: nudge and continue.
                roots[static_cast<std::size_t>(i)] += Complex(1e-8, 1e-8) * radius;
                worst = 1;
                continue;
            }
            Complex delta = eval_poly1(m, zi) / denom;
            roots[static_cast<std::size_t>(i)] = zi - delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14 * radius) break;
    }
    Poly1 dp = derivative_poly1(p);
    for (auto& r : roots) r = newton_polish(p, dp, r);
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

// Euclidean remainder with monic normalization of the divisor.
inline Poly1 poly1_rem(const Poly1& a, const Poly1& b) {
    Poly1 r = a;
    int db = degree_poly1(b);
    while (degree_poly1(r) >= db && !(r.size() == 1 && r[0] == Complex(0))) {
        int dr = degree_poly1(r);
        Complex f = r.back() / b.back();
        for (int i = 0; i <= db; ++i)
            r[static_cast<std::size_t>(dr - db + i)] -= f * b[static_cast<std::size_t>(i)];
        r.pop_back();
        if (r.empty()) {
            r.push_back(Complex(0));
            break;
        }
    }
    return r;
}

inline Poly1 poly1_div_exact(const Poly1& a, const Poly1& b) {
    Poly1 r = a;
    int db = degree_poly1(b);
    int dq = degree_poly1(a) - db;
    if (dq < 0) return {Complex(0)};
    Poly1 q(static_cast<std::size_t>(dq) + 1, Complex(0));
    for (int k = dq; k >= 0; --k) {
        Complex f = r[static_cast<std::size_t>(k + db)] / b.back();
        q[static_cast<std::size_t>(k)] = f;
        for (int i = 0; i <= db; ++i)
            r[static_cast<std::size_t>(k + i)] -= f * b[static_cast<std::size_t>(i)];
    }
    return q;
}

// Numeric gcd by the Euclidean remainder sequence with a relative cutoff.
// Adequate here: multiplicities come from exact binomial structure, so true
// remainders collapse to rounding noise.
inline Poly1 poly1_gcd_numeric(Poly1 a, Poly1 b, double rel_eps = 1e-8) {
    auto norm1 = [](const Poly1& p) {
        double s = 0;
        for (const auto& c : p) s = std::max(s, std::abs(c));
        return s;
    };
    a = trim_poly1(a, 1e-300);
    b = trim_poly1(b, 1e-300);
    if (degree_poly1(a) < degree_poly1(b)) std::swap(a, b);
    while (true) {
        double sb = norm1(b);
        if (degree_poly1(b) == 0 || sb == 0.0) break;
        Poly1 r = poly1_rem(a, b);
        r = trim_poly1(r, rel_eps);
        double sr = norm1(r);
        if (sr <= rel_eps * std::max(1.0, norm1(a))) {
            a = b;
            b = {Complex(0)};
            break;
        }
        // Rescale to keep the remainder sequence well conditioned.
        for (auto& c : r) c /= sr;
        a = b;
        b = r;
    }
    if (degree_poly1(b) == 0 && std::abs(b[0]) > 0) return {Complex(1)};
    return a;
}

inline Poly1 square_free_part(const Poly1& p) {
    Poly1 q = trim_poly1(p, 1e-300);
    if (degree_poly1(q) <= 1) return q;
    Poly1 g = poly1_gcd_numeric(q, derivative_poly1(q));
    if (degree_poly1(g) == 0) return q;
    return trim_poly1(poly1_div_exact(q, g), 1e-12);
}

struct RootWithMultiplicity {
    Complex root;
    int multiplicity = 0;
};

// Roots with multiplicities: square-free reduction, Durand-Kerner on the
// reduced polynomial, clustering at cluster_tol relative, then multiplicity
// of each cluster from the first non-negligible Taylor coefficient of the
// original polynomial at the root.
inline std::vector<RootWithMultiplicity> root_profile(const Poly1& p, double cluster_tol = 1e-7) {
    Poly1 q = trim_poly1(p, 1e-300);
    int deg = degree_poly1(q);
    std::vector<RootWithMultiplicity> out;
    if (deg <= 0) return out;
    Poly1 sf = square_free_part(q);
    std::vector<Complex> raw = find_roots(sf);
    double scale = 1.0;
    for (const auto& r : raw) scale = std::max(scale, std::abs(r));
    std::vector<Complex> reps;
    for (const auto& r : raw) {
        bool merged = false;
        for (auto& rep : reps)
            if (std::abs(r - rep) <= cluster_tol * scale) {
                merged = true;
                break;
            }
        if (!merged) reps.push_back(r);
    }
    // Taylor magnitudes |p^(j)(r)| / j!, scaled by |r|^j to compare orders.
    std::vector<Poly1> derivs(static_cast<std::size_t>(deg) + 1);
    derivs[0] = q;
    for (int j = 1; j <= deg; ++j) derivs[static_cast<std::size_t>(j)] = derivative_poly1(derivs[static_cast<std::size_t>(j - 1)]);
    for (const auto& r : reps) {
        double s = std::max(1.0, std::abs(r));
        std::vector<double> taylor(static_cast<std::size_t>(deg) + 1, 0.0);
        double fact = 1.0, spow = 1.0, top = 0.0;
        for (int j = 0; j <= deg; ++j) {
            if (j > 0) fact *= j;
            taylor[static_cast<std::size_t>(j)] =
                std::abs(eval_poly1(derivs[static_cast<std::size_t>(j)], r)) / fact * spow;
            top = std::max(top, taylor[static_cast<std::size_t>(j)]);
            spow *= s;
        }
        int mult = deg;
        for (int j = 0; j <= deg; ++j)
            if (taylor[static_cast<std::size_t>(j)] > 1e-6 * top) {
                mult = j;
                break;
            }
        out.push_back({r, mult});
    }
    std::sort(out.begin(), out.end(), [](const RootWithMultiplicity& a, const RootWithMultiplicity& b) {
        return a.root.real() != b.root.real() ? a.root.real() < b.root.real()
                                              : a.root.imag() < b.root.imag();
    });
    return out;
}

}  // namespace crlab
