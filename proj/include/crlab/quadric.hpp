#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "crlab/immersion.hpp"
#include "crlab/poly.hpp"

namespace crlab {

// Point of C^4 tagged with its distance to the quadric w1 w2 + w3 w4 = 1 and
// its level t = (|w1|^2 + |w2|^2 + |w3|^2 + |w4|^2) / 2. Level 1 is the
// sphere; level t > 1 is the hypersurface M_t.
struct QuadricPoint {
    Complex w1, w2, w3, w4;
    double quadric_residual = 0;
    double level = 0;

    std::array<Complex, 4> coords() const { return {w1, w2, w3, w4}; }
};

inline QuadricPoint make_quadric_point(Complex w1, Complex w2, Complex w3, Complex w4) {
    QuadricPoint p{w1, w2, w3, w4, 0, 0};
    p.quadric_residual = std::abs(w1 * w2 + w3 * w4 - Complex(1));
    p.level = (std::norm(w1) + std::norm(w2) + std::norm(w3) + std::norm(w4)) / 2.0;
    return p;
}

inline bool on_quadric(const QuadricPoint& p, double tol = 1e-10) {
    return p.quadric_residual <= tol;
}

struct LevelSpec {
    double t = 1.0;

    explicit LevelSpec(double level) : t(level) {
        if (!(t >= 1.0)) throw Infeasible("level t must satisfy t >= 1");
    }
};

// w1 = z1 + i z2, w2 = z1 - i z2, w3 = z3 + i z4, w4 = z3 - i z4.
inline std::array<Complex, 4> coords_z_to_w(const std::array<Complex, 4>& z) {
    const Complex i(0, 1);
    return {z[0] + i * z[1], z[0] - i * z[1], z[2] + i * z[3], z[2] - i * z[3]};
}

inline std::array<Complex, 4> coords_w_to_z(const std::array<Complex, 4>& w) {
    const Complex two_i(0, 2);
    return {(w[0] + w[1]) / 2.0, (w[0] - w[1]) / two_i, (w[2] + w[3]) / 2.0,
            (w[2] - w[3]) / two_i};
}

// |v| + |1 - v|: the reachable v = w3 w4 values on M_t are exactly the closed
// ellipse where this sum is <= t.
inline double ellipse_sum_v(Complex v) { return std::abs(v) + std::abs(Complex(1) - v); }

// min over x > 0 of x + p/x together with its argmin.
inline std::pair<double, double> g_min(double p) {
    if (!(p > 0)) throw Infeasible("g_min requires p > 0");
    const double s = std::sqrt(p);
    return {2 * s, s};
}

// Feasible interval of x = |w1|^2 for a point of M_t above a given v:
// x + |1-v|^2/x <= 2t - 2|v|.
inline std::pair<double, double> x_interval_for_v(Complex v, double t) {
    const double av = std::abs(v), b = std::abs(Complex(1) - v);
    const double c = t - av;
    const double disc = c * c - b * b;
    if (!(c >= 0) || disc < 0) throw Infeasible("no M_t point above this v");
    const double root = std::sqrt(disc);
    return {c - root, c + root};
}

// Builds the point with w1 w2 = 1 - v, w3 w4 = v, |w1|^2 = x on M_t; the
// modulus of w3 is the larger root of y + |v|^2/y = 2t - x - |1-v|^2/x.
inline QuadricPoint lift_from_v(Complex v, const LevelSpec& level, double x, double phase1,
                                double phase3) {
    const double t = level.t;
    if (ellipse_sum_v(v) > t * (1 + 1e-12) + 1e-12)
        throw Infeasible("v outside the reachable ellipse |v| + |1-v| <= t");
    if (!(x > 0)) throw Infeasible("x = |w1|^2 must be positive");
    const Complex u = Complex(1) - v;
    const double s = 2 * t - x - std::norm(u) / x;
    const double disc = s * s - 4 * std::norm(v);
    if (s < 0 || disc < -1e-9 * std::max(1.0, s * s))
        throw Infeasible("x outside the feasible interval for this (v, t)");
    const double y = (s + std::sqrt(std::max(0.0, disc))) / 2;
    const Complex w1 = std::polar(std::sqrt(x), phase1);
    const Complex w2 = u / w1;
    Complex w3, w4;
    if (y > 0) {
        w3 = std::polar(std::sqrt(y), phase3);
        w4 = v / w3;
    } else {
        w3 = Complex(0);
        w4 = Complex(0);  // y = 0 forces v = 0
    }
    return make_quadric_point(w1, w2, w3, w4);
}

struct SampleOptions {
    double boundary_probability = 0.05;  // per degenerate stratum draw
    double eps_feasibility = 1e-9;       // shrink of the open v-ellipse
};

namespace detail {

inline QuadricPoint sample_sphere_point(Rng& rng) {
    const double v = rng.uniform01();  // v = |w3|^2 in [0,1); x = 1 - v > 0
    const double phase1 = rng.angle();
    const double phase3 = rng.angle();
    const Complex w1 = std::polar(std::sqrt(1 - v), phase1);
    const Complex w2 = Complex(1 - v) / w1;
    const Complex w3 = v > 0 ? std::polar(std::sqrt(v), phase3) : Complex(0);
    const Complex w4 = v > 0 ? Complex(v) / w3 : Complex(0);
    return make_quadric_point(w1, w2, w3, w4);
}

// Stratum with w1 w2 = 0 (so v = 1, one of w1/w2 zero) or w3 w4 = 0 (u = 1,
// one of w3/w4 zero). The remaining modulus budget is fixed by the level.
inline QuadricPoint sample_degenerate_stratum(Rng& rng, double t, bool u_zero) {
    const double spread = std::sqrt(t * t - 1.0);
    const double lo = t - spread, hi = t + spread;
    const double m = rng.uniform(lo, hi);  // modulus^2 of the unit-product pair
    const double rest = std::max(0.0, 2 * t - m - 1.0 / m);
    const Complex za = std::polar(std::sqrt(m), rng.angle());
    const Complex zb = Complex(1) / za;
    const Complex zc = std::polar(std::sqrt(rest), rng.angle());
    const bool first_zero = rng.bernoulli(0.5);
    if (u_zero) {
        // w3 w4 = 1 carries the unit product; w1 or w2 vanishes.
        return first_zero ? make_quadric_point(Complex(0), zc, za, zb)
                          : make_quadric_point(zc, Complex(0), za, zb);
    }
    return first_zero ? make_quadric_point(za, zb, Complex(0), zc)
                      : make_quadric_point(za, zb, zc, Complex(0));
}

}  // namespace detail

// Deterministic M_t sampler: rejection-samples v inside the reachable
// ellipse (shrunk by eps), x uniform in its feasible interval, the larger
// y-root, independent uniform phases. Degenerate strata are drawn with the
// configured probability when t > 1.
inline std::vector<QuadricPoint> sample_level(const LevelSpec& level, int count, std::uint64_t seed,
                                              const SampleOptions& opt = {}) {
    if (count < 1) throw Infeasible("count must be >= 1");
    const double t = level.t;
    Rng rng(seed);
    std::vector<QuadricPoint> out;
    out.reserve(static_cast<std::size_t>(count));

    const double eps = std::min(opt.eps_feasibility, (t - 1) / 2);
    const double teff = t - eps;
    for (int i = 0; i < count; ++i) {
        if (t <= 1 + 1e-15) {
            out.push_back(detail::sample_sphere_point(rng));
            continue;
        }
        const double stratum_draw = rng.uniform01();
        if (stratum_draw < opt.boundary_probability) {
            out.push_back(detail::sample_degenerate_stratum(rng, t, true));
            continue;
        }
        if (stratum_draw < 2 * opt.boundary_probability) {
            out.push_back(detail::sample_degenerate_stratum(rng, t, false));
            continue;
        }
        // Rejection sample v in the ellipse with foci 0, 1 and sum teff.
        const double semi_major = teff / 2;
        const double semi_minor = std::sqrt(teff * teff - 1.0) / 2;
        Complex v;
        do {
            v = Complex(0.5 + semi_major * rng.uniform(-1.0, 1.0),
                        semi_minor * rng.uniform(-1.0, 1.0));
        } while (ellipse_sum_v(v) > teff);
        auto [xlo, xhi] = x_interval_for_v(v, t);
        const double x = rng.uniform(xlo, xhi);
        out.push_back(lift_from_v(v, level, x, rng.angle(), rng.angle()));
    }
    return out;
}

// w3 df/dw2 - w1 df/dw4 evaluated at w: nonzero exactly when (w1, w3, f)
// restricted to the quadric is nondegenerate at w.
inline Complex jacobian_criterion(const SparsePoly4& f, const QuadricPoint& w) {
    const auto c = w.coords();
    return w.w3 * evaluate(partial_derivative(f, 2), c) -
           w.w1 * evaluate(partial_derivative(f, 4), c);
}

// Precomputed form for sampling loops.
class JacobianCriterion {
  public:
    explicit JacobianCriterion(const SparsePoly4& f)
        : df2_(partial_derivative(f, 2)), df4_(partial_derivative(f, 4)) {}

    Complex operator()(const QuadricPoint& w) const {
        const auto c = w.coords();
        return w.w3 * evaluate(df2_, c) - w.w1 * evaluate(df4_, c);
    }

  private:
    SparsePoly4 df2_, df4_;
};

// Per-chart Jacobians: J1 in the chart with coordinates (w1, w3, w4), valid
// for w1 != 0; J2 in the chart (w1, w2, w3), valid for w3 != 0. They satisfy
// w1 J1 = -criterion and w3 J2 = -criterion.
inline std::pair<std::optional<Complex>, std::optional<Complex>> chart_jacobians(
    const SparsePoly4& f, const QuadricPoint& w) {
    const auto c = w.coords();
    const Complex df2 = evaluate(partial_derivative(f, 2), c);
    const Complex df4 = evaluate(partial_derivative(f, 4), c);
    std::optional<Complex> j1, j2;
    if (w.w1 != Complex(0)) j1 = -(w.w3 / w.w1) * df2 + df4;
    if (w.w3 != Complex(0)) j2 = -df2 + (w.w1 / w.w3) * df4;
    return {j1, j2};
}

// The level-t point where R_n (and hence the criterion for P_n) vanishes:
// (sqrt(x0), (1/2-ia)/sqrt(x0), sqrt(x0), (1/2+ia)/sqrt(x0)) with x0 the
// larger root of x + (1/4+a^2)/x = t. Only exists for t >= t_threshold.
template <class Real>
QuadricPoint degenerate_witness(const ImmersionMapT<Real>& m, double t) {
    const double a = static_cast<double>(m.a);
    const double p = 0.25 + a * a;
    const double threshold = 2 * std::sqrt(p);
    if (t < threshold * (1 - 1e-12))
        throw NoWitnessBelowThreshold("criterion has no zero on M_t below t_threshold");
    const double disc = std::max(0.0, t * t - 4 * p);
    const double x0 = (t + std::sqrt(disc)) / 2;
    const double r = std::sqrt(x0);
    return make_quadric_point(Complex(r), Complex(0.5, -a) / r, Complex(r), Complex(0.5, a) / r);
}

// Criterion magnitude evaluated in the extended-precision instantiation,
// combining the field at the coefficient level before evaluating. Near the
// degeneracy witness the two partial sums are each large and cancel only in
// the difference, so evaluate-then-subtract loses most of the significand;
// the combined polynomial has 2n + 1 balanced terms and evaluates cleanly.
inline double jacobian_criterion_extended_abs(int n, const QuadricPoint& w,
                                              int degree_cap = kDefaultDegreeCap) {
    using C = complex_t<long double>;
    const auto m = build_immersion<long double>(n, degree_cap);
    const std::array<C, 4> c = {C(w.w1.real(), w.w1.imag()), C(w.w2.real(), w.w2.imag()),
                                C(w.w3.real(), w.w3.imag()), C(w.w4.real(), w.w4.imag())};
    return static_cast<double>(std::abs(evaluate(apply_vector_field_L(m.P), c)));
}

// The pair (u, 1/u, u, 0), (u, 0, u, 1/u) with 2u^2 + 1/u^2 = 2t (larger
// u-root). Both points lie on M_t and share the first and third coordinates;
// every P_n kills both since each of its monomials carries w2 and w4 factors.
// The level equation has no real solution below t = sqrt(2).
inline std::pair<QuadricPoint, QuadricPoint> collision_pair_points(double t) {
    const double kSqrt2 = std::sqrt(2.0);
    if (t < kSqrt2 * (1 - 1e-12)) throw Infeasible("collision pair requires t >= sqrt(2)");
    const double disc = std::max(0.0, t * t - 2.0);
    const double u = std::sqrt((t + std::sqrt(disc)) / 2);
    const Complex cu(u), inv(1.0 / u);
    return {make_quadric_point(cu, inv, cu, Complex(0)),
            make_quadric_point(cu, Complex(0), cu, inv)};
}

// Distance from c to the closed region {|v| + |1-v| <= t}, by parametric
// scan of the boundary ellipse plus ternary refinement. Zero inside.
inline double distance_to_v_ellipse(Complex c, double t) {
    if (ellipse_sum_v(c) <= t) return 0.0;
    const double A = t / 2;
    const double B = std::sqrt(t * t - 1.0) / 2;
    auto point_at = [&](double phi) {
        return Complex(0.5 + A * std::cos(phi), B * std::sin(phi));
    };
    const int n = 4096;
    double best_phi = 0, best = std::abs(c - point_at(0));
    for (int i = 1; i < n; ++i) {
        const double phi = 2 * kPi * i / n;
        const double d = std::abs(c - point_at(phi));
        if (d < best) {
            best = d;
            best_phi = phi;
        }
    }
    double lo = best_phi - 2 * kPi / n, hi = best_phi + 2 * kPi / n;
    for (int i = 0; i < 200; ++i) {
        const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (std::abs(c - point_at(m1)) < std::abs(c - point_at(m2)))
            hi = m2;
        else
            lo = m1;
    }
    return std::abs(c - point_at((lo + hi) / 2));
}

}  // namespace crlab
