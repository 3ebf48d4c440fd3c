#include <doctest.h>

#include "crlab/fiber.hpp"
#include "oracles.hpp"

using namespace crlab;

namespace {

QuadricPoint symmetric_point() {
    const double s = 1 / std::sqrt(2.0);
    return make_quadric_point(Complex(s), Complex(s), Complex(s), Complex(s));
}

}  // namespace

TEST_CASE("sibling candidates") {
    SUBCASE("closed-form values at the symmetric point") {
        const auto [c1, c2] = sibling_w4_candidates(symmetric_point());
        const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
        CHECK(std::abs(c1 - Complex(1, s3) / (2 * s2)) < 1e-14);
        CHECK(std::abs(c2 - Complex(3, s3) / (2 * s2)) < 1e-14);
    }

    SUBCASE("candidates coincide exactly on the critical locus") {
        // w3 w4 = 1/2 + i/(2 sqrt3)
        const Complex b0(0.5, 0.5 / std::sqrt(3.0));
        const Complex w1(1.1, 0.2), w3(0.9, -0.4);
        const auto w = make_quadric_point(w1, (Complex(1) - b0) / w1, w3, b0 / w3);
        const auto [c1, c2] = sibling_w4_candidates(w);
        CHECK(std::abs(c1 - c2) < 1e-12);
    }

    SUBCASE("degenerate strata are excluded") {
        const auto w = make_quadric_point(Complex(1), Complex(1), Complex(0), Complex(0.3, 0.1));
        CHECK_THROWS_AS((void)sibling_w4_candidates(w), StratumExcluded);
    }
}

TEST_CASE("fiber cubic") {
    SUBCASE("root set at the symmetric point") {
        const auto w = symmetric_point();
        const auto [c1, c2] = sibling_w4_candidates(w);
        const auto roots = find_roots(fiber_cubic(w));
        REQUIRE(roots.size() == 3);
        for (const Complex expected : {w.w4, c1, c2}) {
            double best = 1e9;
            for (const auto& r : roots) best = std::min(best, std::abs(r - expected));
            CHECK(best < 1e-8);
        }
    }

    SUBCASE("bracket at w4 is minus the squared restriction") {
        Rng rng(51);
        const Complex crit(0.5, 0.5 / std::sqrt(3.0));
        for (int trial = 0; trial < 100; ++trial) {
            const auto w = testing::random_quadric_point(rng);
            const auto cubic = fiber_cubic(w);
            // bracket(w4) = cubic derivative factor: evaluate quadratic part at w4.
            const Complex qa = cubic[3];
            const Complex qb = cubic[2] + qa * w.w4;
            const Complex qc = cubic[1] + qb * w.w4;
            const Complex bracket = (qa * w.w4 + qb) * w.w4 + qc;
            const Complex b = w.w3 * w.w4;
            const Complex expected = -(b - crit) * (b - crit);
            CHECK(std::abs(bracket - expected) < 1e-12 * (1 + std::abs(expected)));
        }
    }

    SUBCASE("leading coefficient is -w3^2/3") {
        Rng rng(52);
        for (int trial = 0; trial < 20; ++trial) {
            const auto w = testing::random_quadric_point(rng);
            CHECK(std::abs(fiber_cubic(w)[3] + w.w3 * w.w3 / 3.0) < 1e-15);
        }
    }

    SUBCASE("roots match candidates at random generic points") {
        Rng rng(53);
        for (int trial = 0; trial < 200; ++trial) {
            const auto w = testing::random_quadric_point(rng);
            const auto [c1, c2] = sibling_w4_candidates(w);
            const auto roots = find_roots(fiber_cubic(w));
            double scale = std::max({1.0, std::abs(w.w4), std::abs(c1), std::abs(c2)});
            for (const Complex expected : {w.w4, c1, c2}) {
                double best = 1e9;
                for (const auto& r : roots) best = std::min(best, std::abs(r - expected));
                CHECK(best < 1e-8 * scale);
            }
        }
    }
}

TEST_CASE("sibling completion") {
    SUBCASE("first candidate of the symmetric point has level 3/2") {
        const auto w = symmetric_point();
        const auto [c1, c2] = sibling_w4_candidates(w);
        const auto sib = complete_sibling(w, c1);
        CHECK(std::abs(std::norm(sib.w2) - 1.5) < 1e-12);
        CHECK(std::abs(std::norm(sib.w4) - 0.5) < 1e-12);
        CHECK(std::abs(sib.level - 1.5) < 1e-12);
        CHECK(sib.quadric_residual < 1e-14);
    }

    SUBCASE("completing with w4 returns the point itself") {
        Rng rng(54);
        for (int trial = 0; trial < 20; ++trial) {
            const auto w = testing::random_quadric_point(rng);
            const auto same = complete_sibling(w, w.w4);
            CHECK(std::abs(same.w2 - w.w2) < 1e-12 * (1 + std::abs(w.w2)));
        }
    }

    SUBCASE("P1 takes equal values across the fiber") {
        const auto m = build_immersion(1);
        Rng rng(55);
        for (int trial = 0; trial < 200; ++trial) {
            const auto w = testing::random_quadric_point(rng);
            const Complex base = evaluate(m.P, w.coords());
            const auto [c1, c2] = sibling_w4_candidates(w);
            for (const Complex c : {c1, c2}) {
                const auto sib = complete_sibling(w, c);
                CHECK(std::abs(evaluate(m.P, sib.coords()) - base) < 1e-9 * (1 + std::abs(base)));
            }
        }
    }
}

TEST_CASE("sibling b-map") {
    SUBCASE("anchors") {
        CHECK(std::abs(sibling_b_map(Complex(1), 1)) < 1e-15);
        CHECK(std::abs(sibling_b_map(Complex(0.5), 1) - Complex(0.25, std::sqrt(3.0) / 4)) < 1e-15);
    }

    SUBCASE("branches agree exactly on the critical locus") {
        const Complex b0(0.5, 0.5 / std::sqrt(3.0));
        CHECK(std::abs(sibling_b_map(b0, 1) - sibling_b_map(b0, 2)) < 1e-15);
    }

    SUBCASE("consistency with the w4 candidates") {
        Rng rng(56);
        for (int trial = 0; trial < 50; ++trial) {
            const auto w = testing::random_quadric_point(rng);
            const Complex b = w.w3 * w.w4;
            const auto [c1, c2] = sibling_w4_candidates(w);
            CHECK(std::abs(w.w3 * c1 - sibling_b_map(b, 1)) < 1e-13 * (1 + std::abs(b)));
            CHECK(std::abs(w.w3 * c2 - sibling_b_map(b, 2)) < 1e-13 * (1 + std::abs(b)));
        }
    }
}

TEST_CASE("ellipse domain") {
    SUBCASE("b = 1/2 fails the second ellipse") {
        const Complex half(0.5, 0);
        CHECK(EllipseDomain::e1_sum(half) < EllipseDomain::sum_bound());
        CHECK(EllipseDomain::e2_sum(half) > EllipseDomain::sum_bound());
        CHECK_FALSE(EllipseDomain::contains(half));
    }

    SUBCASE("the phi argmin is interior") {
        CHECK(EllipseDomain::contains(Complex(5.0 / 8, std::sqrt(3.0) / 8)));
    }

    SUBCASE("boundary classification") {
        // A point on the first ellipse boundary along the real axis.
        const double s = EllipseDomain::sum_bound();
        const Complex b((1 + s) / 2.0 - 1e-16, 0);  // right vertex of E1
        CHECK(EllipseDomain::classify(b) == EllipseDomain::Where::boundary);
    }
}

TEST_CASE("phi and its restrictions") {
    SUBCASE("anchors") {
        CHECK(std::abs(phi(Complex(1)) - 2.0) < 1e-14);
        CHECK(std::abs(phi(Complex(5.0 / 8, std::sqrt(3.0) / 8)) - 1.25) < 1e-14);
    }

    SUBCASE("singular locus throws") {
        CHECK_THROWS_AS((void)phi(Complex(0.5, 0.1)), SingularLocus);
        CHECK_THROWS_AS((void)phi(Complex(std::sqrt(3.0) / 2, 0.5)), SingularLocus);
    }

    SUBCASE("phi_hat anchors and range") {
        CHECK(phi_hat(0) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(phi_hat(1) == doctest::Approx(1.25).epsilon(1e-15));
        const auto [lo, hi] = sigma_range();
        const double s15 = std::sqrt(15.0);
        CHECK(std::abs(lo + (s15 - 3) / 6) < 1e-15);
        CHECK(std::abs(hi - (s15 + 3) / 6) < 1e-15);
    }

    SUBCASE("segment restriction matches phi") {
        Rng rng(57);
        const auto [lo, hi] = sigma_range();
        for (int trial = 0; trial < 1000; ++trial) {
            const double sigma = rng.uniform(lo, hi);
            CHECK(std::abs(phi(b_on_segment(sigma)) - phi_hat(sigma)) < 1e-10);
        }
    }

    SUBCASE("orthogonal restriction matches phi and is flat at tau = 0") {
        Rng rng(58);
        const auto [lo, hi] = sigma_range();
        int found = 0;
        while (found < 1000) {
            const double sigma0 = rng.uniform(lo, hi);
            const double tau = rng.uniform(-0.6, 0.6);
            const Complex b = b_on_orthogonal(sigma0, tau);
            if (!EllipseDomain::contains(b, 1e-9)) continue;
            ++found;
            CHECK(std::abs(phi(b) - phi_hat_orth(sigma0, tau)) < 1e-10);
        }
        for (const double sigma0 : {0.0, 0.3, 0.8, 1.0}) {
            const double h = 1e-6;
            const double fd = (phi(b_on_orthogonal(sigma0, h)) - phi(b_on_orthogonal(sigma0, -h))) / (2 * h);
            CHECK(std::abs(fd) < 1e-6);
        }
    }

    SUBCASE("phi_hat_orth anchors") {
        CHECK(std::abs(phi_hat_orth(0, 0) - 2.0) < 1e-14);
        CHECK(std::abs(phi_hat_orth(1, 0) - 1.25) < 1e-14);
        CHECK_THROWS_AS((void)phi_hat_orth(0.0, 1.0), SingularLocus);
    }
}

TEST_CASE("h polynomial") {
    SUBCASE("anchors") {
        CHECK(h_poly(0) == doctest::Approx(16.0).epsilon(1e-15));
        const auto [lo, hi] = sigma_range();
        const double expected = (45 - 11 * std::sqrt(15.0)) / 4;
        CHECK(std::abs(h_poly(hi) - expected) < 1e-12);
        CHECK(expected == doctest::Approx(0.59930).epsilon(1e-4));
    }

    SUBCASE("monotone decreasing with minimum at the right endpoint") {
        const auto [lo, hi] = sigma_range();
        double min_value = 1e9, min_sigma = lo;
        double prev = h_poly(lo);
        for (int i = 0; i <= 5000; ++i) {
            const double sigma = lo + (hi - lo) * i / 5000;
            const double value = h_poly(sigma);
            CHECK(h_poly_prime(sigma) < 0);
            if (i > 0) CHECK(value < prev);
            prev = value;
            if (value < min_value) {
                min_value = value;
                min_sigma = sigma;
            }
        }
        CHECK(min_sigma == doctest::Approx(hi));
        CHECK(min_value > 0.59);
    }
}

TEST_CASE("minimum of phi over D") {
    const auto result = min_phi_over_D(501, 60);
    CHECK(std::abs(result.min - 1.25) < 1e-9);
    CHECK(std::abs(result.argmin - Complex(5.0 / 8, std::sqrt(3.0) / 8)) < 1e-6);
    CHECK(result.cells_in_domain > 1000);

    SUBCASE("strictly above 5/4 away from the argmin") {
        const Complex argmin(5.0 / 8, std::sqrt(3.0) / 8);
        double min_outside = 1e9;
        const int grid = 801;
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                const Complex b(-0.2 + 1.4 * i / (grid - 1), -0.1 + 1.1 * j / (grid - 1));
                if (!EllipseDomain::contains(b)) continue;
                if (std::abs(b - argmin) < 0.05) continue;
                min_outside = std::min(min_outside, phi(b));
            }
        CHECK(min_outside > 1.2501);
    }
}

TEST_CASE("segment endpoints sit on the boundary of D") {
    const auto [lo, hi] = sigma_range();
    CHECK(EllipseDomain::classify(b_on_segment(lo)) == EllipseDomain::Where::boundary);
    CHECK(EllipseDomain::classify(b_on_segment(hi)) == EllipseDomain::Where::boundary);
}

TEST_CASE("collision pair through the fiber machinery") {
    // The two collision points are each other's siblings: from the base with
    // b = 1 the first branch gives the fourth coordinate 0.
    for (const double t : {std::sqrt(2.0), 1.5, 2.0}) {
        const auto [w, wp] = collision_pair_points(t);
        const auto [c1, c2] = sibling_w4_candidates(wp);  // wp has b = 1
        const double match = std::min(std::abs(c1), std::abs(c2));
        CHECK(match < 1e-9);
        const auto back = complete_sibling(wp, Complex(0));
        CHECK(std::abs(back.w2 - w.w2) < 1e-9);
        // Chain direction: a same-level sibling forces phi(b) <= t^2; here
        // phi(1) = 2, with equality exactly at t = sqrt(2).
        CHECK(phi(Complex(1)) <= t * t + 1e-12);
    }
}

TEST_CASE("injectivity scan") {
    const auto m = build_immersion(1);

    SUBCASE("certified range sits inside the nondegeneracy range") {
        CHECK(std::sqrt(5.0) / 2 < m.t_threshold);
    }

    SUBCASE("gaps are positive below sqrt(5)/2") {
        const auto scan = injectivity_scan(m, 1.05, 300, 61);
        CHECK(scan.all_gaps_positive);
        CHECK(scan.min_gap > 1e-9);
        CHECK_FALSE(scan.collision.has_value());
    }

    SUBCASE("collision at sqrt(2) has exactly equal images") {
        const auto scan = injectivity_scan(m, std::sqrt(2.0), 50, 62);
        REQUIRE(scan.collision.has_value());
        CHECK(scan.collision_image_mismatch == 0.0);
    }

    SUBCASE("only n = 1 is supported") {
        const auto m3 = build_immersion(3);
        CHECK_THROWS_AS((void)injectivity_scan(m3, 1.05, 10, 63), Infeasible);
    }
}
