#pragma once

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "crlab/quadric.hpp"
#include "crlab/roots.hpp"

namespace crlab {

inline const double kSqrt3 = std::sqrt(3.0);
inline const Complex kOmega(0.5, kSqrt3 / 2);  // (1 + i sqrt(3)) / 2

// F_1-specific fiber machinery. Away from the strata w1 = 0, w3 = 0, the
// fiber of F_1 through w consists of w and up to two siblings sharing
// (w1, w3), with fourth coordinates given in closed form below.

inline void require_generic_stratum(const QuadricPoint& w) {
    if (w.w1 == Complex(0) || w.w3 == Complex(0))
        throw StratumExcluded("fiber is a single point where w1 = 0 or w3 = 0");
}

// The two closed-form candidates for the sibling fourth coordinate.
inline std::pair<Complex, Complex> sibling_w4_candidates(const QuadricPoint& w) {
    require_generic_stratum(w);
    const Complex b = w.w3 * w.w4;
    const Complex c1 = -(2.0 * kOmega) * (b - Complex(1)) / (2.0 * w.w3);
    const Complex c2 = -(2.0 * std::conj(kOmega)) * (b - kOmega) / (2.0 * w.w3);
    return {c1, c2};
}

// Same candidates at the level of b = w3 w4: branch 1 sends b to
// -(1+i sqrt3)(b-1)/2, branch 2 to 1 - (1-i sqrt3) b/2.
inline Complex sibling_b_map(Complex b, int branch) {
    if (branch == 1) return -(2.0 * kOmega) * (b - Complex(1)) / 2.0;
    return Complex(1) - (2.0 * std::conj(kOmega)) * b / 2.0;
}

// The cubic in the sibling fourth coordinate X whose root set is exactly
// {w4} together with the two candidates:
//   (X - w4) [ -(w3^2/3) X^2 + ((1/2 + i/(2 sqrt3)) w3 - w3^2 w4 / 3) X
//              + (1/2 + i/(2 sqrt3)) w3 w4 - w3^2 w4^2 / 3 - (1/6 + i/(2 sqrt3)) ].
// Coefficients returned constant-first.
inline Poly1 fiber_cubic(const QuadricPoint& w) {
    require_generic_stratum(w);
    const Complex g(0.5, 0.5 / kSqrt3);      // 1/2 + i/(2 sqrt3)
    const Complex h(1.0 / 6, 0.5 / kSqrt3);  // 1/6 + i/(2 sqrt3)
    const Complex w3 = w.w3, w4 = w.w4;
    const Complex qa = -w3 * w3 / 3.0;
    const Complex qb = g * w3 - w3 * w3 * w4 / 3.0;
    const Complex qc = g * w3 * w4 - w3 * w3 * w4 * w4 / 3.0 - h;
    return {-qc * w4, qc - qb * w4, qb - qa * w4, qa};
}

// Completes a sibling fourth coordinate to the unique quadric point sharing
// (w1, w3): the second coordinate is (1 - w3 w4hat) / w1.
inline QuadricPoint complete_sibling(const QuadricPoint& w, Complex w4_hat) {
    if (w.w1 == Complex(0)) throw StratumExcluded("completion needs w1 != 0");
    return make_quadric_point(w.w1, (Complex(1) - w.w3 * w4_hat) / w.w1, w.w3, w4_hat);
}

// The open region D = E1 cap E2 in the b-plane: interiors of the ellipses
// with focus pairs (0, 1) and (1, (1+i sqrt3)/2), both with sum sqrt(5)/2.
struct EllipseDomain {
    static double sum_bound() { return std::sqrt(5.0) / 2; }

    static double e1_sum(Complex b) { return std::abs(b - Complex(1)) + std::abs(b); }
    static double e2_sum(Complex b) { return std::abs(b - Complex(1)) + std::abs(b - kOmega); }

    enum class Where { inside, boundary, outside };

    // Strict membership with a margin: points within the margin of either
    // boundary are "boundary" and excluded from minimization statistics.
    static Where classify(Complex b, double margin = 1e-12) {
        const double s = sum_bound();
        const double m1 = s - e1_sum(b), m2 = s - e2_sum(b);
        const double worst = std::min(m1, m2);
        if (worst > margin) return Where::inside;
        if (worst < -margin) return Where::outside;
        return Where::boundary;
    }

    static bool contains(Complex b, double margin = 1e-12) {
        return classify(b, margin) == Where::inside;
    }
};

// phi(b) = ((b1 - sqrt3 b2)/(2 b1 - 1) + 1) (|b-1|^2 (2 b1 - 1)/(b1 - sqrt3 b2) + |b|^2);
// the quantity whose infimum over D certifies that no sibling shares the
// level set for t^2 < 5/4. The two lines 2 b1 = 1 and b1 = sqrt3 b2 never
// meet D, so the quotients are safe there.
inline double phi(Complex b) {
    const double b1 = b.real(), b2 = b.imag();
    const double num = b1 - kSqrt3 * b2;
    const double den = 2 * b1 - 1;
    const double scale = 1.0 + std::abs(b);
    if (std::abs(den) < 1e-14 * scale || std::abs(num) < 1e-14 * scale)
        throw SingularLocus("phi is singular on the lines 2 b1 = 1 and b1 = sqrt3 b2");
    const double lambda = num / den;
    return (lambda + 1) * (std::norm(b - Complex(1)) / lambda + std::norm(b));
}

// The segment I = L cap D of the line b1 + sqrt3 b2 = 1, parametrized as
// b(sigma) = 1 + (-3 + i sqrt3) sigma / 8.
inline Complex b_on_segment(double sigma) {
    return Complex(1) + Complex(-3.0, kSqrt3) * sigma / 8.0;
}

inline std::pair<double, double> sigma_range() {
    const double s15 = std::sqrt(15.0);
    return {-1.0 / (s15 + 3), 1.0 / (s15 - 3)};
}

// Restriction of phi to I.
inline double phi_hat(double sigma) { return (3 * sigma * sigma - 6 * sigma + 8) / 4; }

// Line through b_on_segment(sigma0) orthogonal to I.
inline Complex b_on_orthogonal(double sigma0, double tau) {
    return kOmega * tau + Complex(-3.0, kSqrt3) * sigma0 / 8.0 + Complex(1);
}

// Restriction of phi to the orthogonal segment through sigma0.
inline double phi_hat_orth(double sigma0, double tau) {
    const double a = 4 - 3 * sigma0;
    const double den = a * a - 16 * tau * tau;
    if (std::abs(den) < 1e-14 * (1 + a * a))
        throw SingularLocus("denominator vanishes where the orthogonal line meets the excluded lines");
    const double num =
        (32 - 48 * sigma0) * tau * tau - 9 * sigma0 * sigma0 * sigma0 + 30 * sigma0 * sigma0 - 48 * sigma0 + 32;
    return a * num / (4 * den);
}

// h(sigma) = -9 sigma^3 + 30 sigma^2 - 36 sigma + 16, the factor controlling
// the sign of d(phi_hat_orth)/d tau; positive on the closed sigma range.
inline double h_poly(double sigma) { return ((-9 * sigma + 30) * sigma - 36) * sigma + 16; }

inline double h_poly_prime(double sigma) { return (-27 * sigma + 60) * sigma - 36; }

struct PhiMinimum {
    double min = 0;
    Complex argmin;
    long cells_in_domain = 0;
};

// Grid search over the bounding box of D with membership filtering, then
// coordinate-wise parabolic refinement from the best cell. The refinement
// stays in the interior (the minimum is interior and phi is smooth there).
inline PhiMinimum min_phi_over_D(int grid = 2001, int refine_iters = 50) {
    if (grid < 101) throw Infeasible("grid must be >= 101");
    const double x_lo = -0.2, x_hi = 1.2, y_lo = -0.1, y_hi = 1.0;
    PhiMinimum out;
    out.min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            const Complex b(x, y_lo + (y_hi - y_lo) * j / (grid - 1));
            if (!EllipseDomain::contains(b)) continue;
            ++out.cells_in_domain;
            const double value = phi(b);
            if (value < out.min) {
                out.min = value;
                out.argmin = b;
            }
        }
    }
    double hx = (x_hi - x_lo) / (grid - 1), hy = (y_hi - y_lo) / (grid - 1);
    Complex b = out.argmin;
    double fb = out.min;
    auto probe = [&](Complex c) {
        return EllipseDomain::contains(c) ? phi(c) : std::numeric_limits<double>::infinity();
    };
    for (int iter = 0; iter < refine_iters; ++iter) {
        for (int axis = 0; axis < 2; ++axis) {
            const double h = axis == 0 ? hx : hy;
            const Complex step = axis == 0 ? Complex(h, 0) : Complex(0, h);
            const double fm = probe(b - step), fp = probe(b + step);
            // Parabola through (-h, fm), (0, fb), (h, fp).
            const double denom = fm - 2 * fb + fp;
            Complex cand = b;
            if (std::isfinite(fm) && std::isfinite(fp) && denom > 0) {
                const double delta = 0.5 * (fm - fp) / denom * h;
                cand = b + (axis == 0 ? Complex(delta, 0) : Complex(0, delta));
            } else if (fm < fb) {
                cand = b - step;
            } else if (fp < fb) {
                cand = b + step;
            }
            const double fc = probe(cand);
            if (fc < fb) {
                b = cand;
                fb = fc;
            }
        }
        hx *= 0.6;
        hy *= 0.6;
    }
    out.min = fb;
    out.argmin = b;
    return out;
}

struct SiblingLevels {
    QuadricPoint base;
    QuadricPoint sibling1, sibling2;
    double gap1 = 0, gap2 = 0;  // |level(sibling) - t|
};

struct InjectivityScan {
    double t = 0;
    int samples = 0;
    double min_gap = std::numeric_limits<double>::infinity();
    SiblingLevels closest;
    bool all_gaps_positive = true;                  // against the configured threshold
    std::optional<std::pair<QuadricPoint, QuadricPoint>> collision;  // populated for t >= sqrt(2)
    double collision_image_mismatch = 0;            // exact 0 expected
};

// Empirical injectivity probe for F_1 on M_t: every generic sample gets both
// completed siblings; a sibling on the same level set would be a fiber
// collision. Below t = sqrt(5)/2 the phi bound rules those out; at
// t >= sqrt(2) the explicit collision pair is reproduced instead.
inline InjectivityScan injectivity_scan(const ImmersionMap& m, double t, int samples,
                                        std::uint64_t seed, double gap_threshold = 1e-9) {
    if (m.n != 1) throw Infeasible("closed-form fibers are available for n = 1 only");
    if (!(t > 1)) throw Infeasible("injectivity scan requires t > 1");
    InjectivityScan scan;
    scan.t = t;
    scan.samples = samples;
    SampleOptions opt;
    opt.boundary_probability = 0;  // fibers need the generic stratum
    const auto points = sample_level(LevelSpec(t), samples, seed, opt);
    for (const auto& w : points) {
        const auto [c1, c2] = sibling_w4_candidates(w);
        SiblingLevels s;
        s.base = w;
        s.sibling1 = complete_sibling(w, c1);
        s.sibling2 = complete_sibling(w, c2);
        s.gap1 = std::abs(s.sibling1.level - t);
        s.gap2 = std::abs(s.sibling2.level - t);
        const double gap = std::min(s.gap1, s.gap2);
        if (gap < scan.min_gap) {
            scan.min_gap = gap;
            scan.closest = s;
        }
        if (gap <= gap_threshold) scan.all_gaps_positive = false;
    }
    if (t >= std::sqrt(2.0) * (1 - 1e-12)) {
        const auto pair = collision_pair_points(t);
        const std::array<Complex, 4> wa = pair.first.coords(), wb = pair.second.coords();
        const Complex pa = evaluate(m.P, wa);
        const Complex pb = evaluate(m.P, wb);
        scan.collision = pair;
        scan.collision_image_mismatch =
            std::abs(wa[0] - wb[0]) + std::abs(wa[2] - wb[2]) + std::abs(pa - pb);
    }
    return scan;
}

}  // namespace crlab
