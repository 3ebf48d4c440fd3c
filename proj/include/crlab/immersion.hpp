#pragma once

#include <vector>

#include "crlab/poly.hpp"
#include "crlab/uv.hpp"

namespace crlab {

// The bundle defining F_n = (w1, w3, P_n): the branch parameter a, the
// degeneracy threshold t_threshold = 2*sqrt(1/4 + a^2), the coefficient
// vector alpha, the solution polynomial P of L(P) = R, and R itself.
template <class Real>
struct ImmersionMapT {
    int n = 0;
    Real a = 0;
    Real t_threshold = 0;
    int K = 0;
    std::vector<complex_t<Real>> alpha;  // alpha[i] stores alpha_{i+1} of the 1-based chain
    SparsePoly4T<Real> P;
    SparsePoly4T<Real> R;
};

using ImmersionMap = ImmersionMapT<double>;

template <class Real>
struct BranchChoiceT {
    Real a = 0;
    int K = 0;
    Real theta = 0;
};

using BranchChoice = BranchChoiceT<double>;

// a is fixed by requiring Re (1/2 + i a)^(2n+1) = 0 on the branch with the
// largest admissible argument: arg(1/2 + i a) = (pi/2 + 2 pi K) / (2n + 1)
// with K = ceil(n/2) - 1, which keeps the angle inside (0, pi/2).
template <class Real = double>
BranchChoiceT<Real> compute_a(int n) {
    if (n < 1) throw ConstructionError("compute_a requires n >= 1");
    const int K = (n + 1) / 2 - 1;
    constexpr Real pi = std::numbers::pi_v<Real>;
    const Real theta = (pi / 2 + 2 * pi * K) / Real(2 * n + 1);
    if (!(theta > 0 && theta < pi / 2))
        throw ConstructionError("branch angle escaped (0, pi/2)");
    return {std::tan(theta) / 2, K, theta};
}

template <class Real = double>
Real compute_t(int n) {
    const Real a = compute_a<Real>(n).a;
    return 2 * std::sqrt(Real(0.25) + a * a);
}

namespace detail {

// T_k = (-1)^k C(2n,k) (1/2 + ia)^k (1/2 - ia)^(2n-k): the coefficient of
// (w1 w2)^k (w3 w4)^(2n-k) in the binomial expansion of R_n.
template <class Real>
std::vector<complex_t<Real>> binomial_rhs(int n, Real a) {
    using C = complex_t<Real>;
    const C zp(Real(0.5), a), zm(Real(0.5), -a);
    std::vector<C> plus_pow(static_cast<std::size_t>(2 * n) + 1), minus_pow(plus_pow.size());
    plus_pow[0] = minus_pow[0] = C(1);
    for (std::size_t i = 1; i < plus_pow.size(); ++i) {
        plus_pow[i] = plus_pow[i - 1] * zp;
        minus_pow[i] = minus_pow[i - 1] * zm;
    }
    std::vector<C> t(plus_pow.size());
    for (int k = 0; k <= 2 * n; ++k) {
        Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
        t[static_cast<std::size_t>(k)] = C(sign * binomial<Real>(2 * n, k)) *
                                         plus_pow[static_cast<std::size_t>(k)] *
                                         minus_pow[static_cast<std::size_t>(2 * n - k)];
    }
    return t;
}

}  // namespace detail

// Solves the coefficient relations (k+1) alpha_{2n-k} - (2n-k+1) alpha_{2n-k+1} = T_k.
// Both ends are pinned (alpha_1 = -(1/2+ia)^{2n}, alpha_{2n} = (1/2-ia)^{2n});
// the chain from alpha_{2n} fills alpha_{2n-1}..alpha_{n+1}, the chain from
// alpha_1 fills alpha_2..alpha_n, and the leftover relation at k = n is the
// executable form of the consistency condition on a. A residual there means
// a does not satisfy Re (1/2+ia)^{2n+1} = 0, so construction fails.
template <class Real = double>
std::vector<complex_t<Real>> alpha_coefficients(int n, Real a, Real rel_tol = Real(1e-10)) {
    using C = complex_t<Real>;
    if (n < 1) throw ConstructionError("alpha_coefficients requires n >= 1");
    const std::vector<C> t = detail::binomial_rhs(n, a);
    Real scale = 0;
    for (const auto& c : t) scale = std::max(scale, std::abs(c));

    std::vector<C> alpha(static_cast<std::size_t>(2 * n));
    auto at = [&alpha](int idx) -> C& { return alpha[static_cast<std::size_t>(idx - 1)]; };

    at(1) = -t[static_cast<std::size_t>(2 * n)] /
            C(binomial<Real>(2 * n, 2 * n));  // = -(1/2+ia)^{2n}
    at(2 * n) = t[0];                         // = (1/2-ia)^{2n}

    for (int k = 1; k <= n - 1; ++k)
        at(2 * n - k) = (C(Real(2 * n - k + 1)) * at(2 * n - k + 1) + t[static_cast<std::size_t>(k)]) /
                        C(Real(k + 1));
    for (int k = 2 * n - 1; k >= n + 1; --k)
        at(2 * n - k + 1) = (C(Real(k + 1)) * at(2 * n - k) - t[static_cast<std::size_t>(k)]) /
                            C(Real(2 * n - k + 1));

    const C gap = C(Real(n + 1)) * (at(n) - at(n + 1)) - t[static_cast<std::size_t>(n)];
    if (std::abs(gap) > rel_tol * scale)
        throw ConstructionError("coefficient chains disagree at the middle relation");
    return alpha;
}

// Displayed closed forms for the two middle coefficients; used to cross-check
// the chained fill.
template <class Real = double>
complex_t<Real> closed_form_alpha_np1(int n, Real a) {
    using C = complex_t<Real>;
    const C zp(Real(0.5), a), zm(Real(0.5), -a);
    C sum(0);
    C zp_pow(1);
    for (int l = 0; l <= n - 1; ++l) {
        C zm_pow(1);
        for (int i = 0; i < 2 * n - l; ++i) zm_pow *= zm;
        sum += C(Real(l % 2 == 0 ? 1 : -1)) * zp_pow * zm_pow;
        zp_pow *= zp;
    }
    return C(binomial<Real>(2 * n, n - 1) / Real(n)) * sum;
}

template <class Real = double>
complex_t<Real> closed_form_alpha_n(int n, Real a) {
    using C = complex_t<Real>;
    const C zp(Real(0.5), a), zm(Real(0.5), -a);
    C sum(0);
    C zm_pow(1);
    for (int l = 0; l <= n - 1; ++l) {
        C zp_pow(1);
        for (int i = 0; i < 2 * n - l; ++i) zp_pow *= zp;
        sum += C(Real(l % 2 == 0 ? 1 : -1)) * zp_pow * zm_pow;
        zm_pow *= zm;
    }
    return C(-binomial<Real>(2 * n, n + 1) / Real(n)) * sum;
}

// P_n = sum_k alpha_k w1^(2n-k) w2^(2n-k+1) w3^(k-1) w4^k, homogeneous of
// degree 4n; R_n = ((1/2+ia) w1 w2 - (1/2-ia) w3 w4)^(2n).
template <class Real = double>
ImmersionMapT<Real> build_immersion(int n, int degree_cap = kDefaultDegreeCap) {
    using C = complex_t<Real>;
    if (4 * n > degree_cap)
        throw DegreeCapExceeded("degree 4n exceeds the configured cap");
    ImmersionMapT<Real> m;
    m.n = n;
    const auto branch = compute_a<Real>(n);
    m.a = branch.a;
    m.K = branch.K;
    m.t_threshold = 2 * std::sqrt(Real(0.25) + m.a * m.a);
    m.alpha = alpha_coefficients<Real>(n, m.a);

    for (int k = 1; k <= 2 * n; ++k)
        m.P.add_term({2 * n - k, 2 * n - k + 1, k - 1, k}, m.alpha[static_cast<std::size_t>(k - 1)]);

    SparsePoly4T<Real> base;
    base.add_term({1, 1, 0, 0}, C(Real(0.5), m.a));
    base.add_term({0, 0, 1, 1}, -C(Real(0.5), -m.a));
    m.R = pow_poly(base, 2 * n, degree_cap);
    return m;
}

struct ConstructionChecks {
    double pde_residual = 0;       // max |coeff(L(P) - R)| / max |coeff R|
    double arg_residual = 0;       // |Re (1/2+ia)^{2n+1}| / |1/2+ia|^{2n+1}
    bool homogeneous = false;
    int degree = -1;
    double threshold_residual = 0; // |t - 2 sqrt(1/4+a^2)| / t
};

template <class Real>
ConstructionChecks check_construction(const ImmersionMapT<Real>& m) {
    ConstructionChecks out;
    const SparsePoly4T<Real> lp = apply_vector_field_L(m.P);
    out.pde_residual = static_cast<double>(coeff_distance_rel(lp, m.R));

    complex_t<Real> z(Real(0.5), m.a), zp(1);
    for (int i = 0; i < 2 * m.n + 1; ++i) zp *= z;
    out.arg_residual = static_cast<double>(std::abs(zp.real()) / std::abs(zp));

    auto deg = homogeneous_degree(m.P);
    out.homogeneous = deg.has_value() && *deg == 4 * m.n;
    out.degree = deg.value_or(-1);

    const Real t_ref = 2 * std::sqrt(Real(0.25) + m.a * m.a);
    out.threshold_residual = static_cast<double>(std::abs(m.t_threshold - t_ref) / t_ref);
    return out;
}

// Smallest n <= n_max with t_n > bound, or 0 if none: the executable form of
// t_n -> infinity.
template <class Real = double>
int min_n_with_t_exceeding(Real bound, int n_max) {
    for (int n = 1; n <= n_max; ++n)
        if (compute_t<Real>(n) > bound) return n;
    return 0;
}

}  // namespace crlab
