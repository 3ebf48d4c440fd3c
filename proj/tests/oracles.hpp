#pragma once

// Test-only oracles, independent of the library paths they check.

#include <array>
#include <vector>

#include "crlab/poly.hpp"
#include "crlab/quadric.hpp"

namespace crlab::testing {

// Central finite differences for w3 df/dw2 - w1 df/dw4 at a point. Valid for
// polynomials (holomorphic), so real steps in each variable suffice.
inline Complex fd_vector_field(const SparsePoly4& f, const std::array<Complex, 4>& w,
                               double h = 1e-6) {
    auto shifted = [&](int var, double delta) {
        std::array<Complex, 4> s = w;
        s[static_cast<std::size_t>(var - 1)] += delta;
        return evaluate(f, s);
    };
    const Complex df2 = (shifted(2, h) - shifted(2, -h)) / (2 * h);
    const Complex df4 = (shifted(4, h) - shifted(4, -h)) / (2 * h);
    return w[2] * df2 - w[0] * df4;
}

// Brute-force minimizer of x + p/x over (0, 10 sqrt(p)].
inline std::pair<double, double> brute_min_g(double p, int grid = 2000000) {
    const double hi = 10 * std::sqrt(p);
    double best = std::numeric_limits<double>::infinity(), arg = hi;
    for (int i = 1; i <= grid; ++i) {
        const double x = hi * i / grid;
        const double value = x + p / x;
        if (value < best) {
            best = value;
            arg = x;
        }
    }
    return {best, arg};
}

// Dense boundary scan for the distance from c to {|v| + |1-v| <= t}.
inline double brute_distance_to_v_ellipse(Complex c, double t, int grid = 1000000) {
    if (std::abs(c) + std::abs(Complex(1) - c) <= t) return 0.0;
    const double A = t / 2, B = std::sqrt(t * t - 1.0) / 2;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double phi = 2 * kPi * i / grid;
        best = std::min(best, std::abs(c - Complex(0.5 + A * std::cos(phi), B * std::sin(phi))));
    }
    return best;
}

// Random polynomial with term exponents below max_exp per variable.
inline SparsePoly4 random_poly(Rng& rng, int terms, int max_exp) {
    SparsePoly4 p;
    for (int i = 0; i < terms; ++i) {
        Exponent4 e{static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_exp + 1)),
                    static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_exp + 1)),
                    static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_exp + 1)),
                    static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_exp + 1))};
        p.add_term(e, Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)));
    }
    return p;
}

// Balanced random polynomial (e1 = e2, e3 = e4 per monomial).
inline SparsePoly4 random_balanced_poly(Rng& rng, int terms, int max_exp) {
    SparsePoly4 p;
    for (int i = 0; i < terms; ++i) {
        const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_exp + 1));
        const int k = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_exp + 1));
        p.add_term({j, j, k, k}, Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)));
    }
    return p;
}

inline std::array<Complex, 4> random_unit_box_point(Rng& rng) {
    return {Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
            Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
            Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
            Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))};
}

// Quadric point built directly from (w1, w3, w4): w2 = (1 - w3 w4)/w1.
inline QuadricPoint random_quadric_point(Rng& rng) {
    const Complex w1(rng.uniform(0.3, 1.5), rng.uniform(-1, 1));
    const Complex w3(rng.uniform(0.3, 1.5), rng.uniform(-1, 1));
    const Complex w4(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return make_quadric_point(w1, (Complex(1) - w3 * w4) / w1, w3, w4);
}

}  // namespace crlab::testing
