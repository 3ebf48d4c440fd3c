#include <doctest.h>

#include "crlab/core.hpp"
#include "crlab/roots.hpp"

using namespace crlab;

namespace {

Poly1 from_roots(const std::vector<Complex>& roots) {
    Poly1 p = {Complex(1)};
    for (const auto& r : roots) {
        Poly1 next(p.size() + 1, Complex(0));
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += p[i];
            next[i] -= p[i] * r;
        }
        p = next;
    }
    return p;
}

double match_roots(const std::vector<Complex>& found, const std::vector<Complex>& expected) {
    double worst = 0;
    for (const auto& e : expected) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : found) best = std::min(best, std::abs(f - e));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

TEST_CASE("simple cubic roots") {
    const std::vector<Complex> roots = {Complex(1, 0), Complex(0, 1), Complex(-2, 0.5)};
    const auto found = find_roots(from_roots(roots));
    REQUIRE(found.size() == 3);
    CHECK(match_roots(found, roots) < 1e-12);
}

TEST_CASE("random well-separated roots") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Complex> roots;
        const int degree = 2 + static_cast<int>(rng.next_u64() % 5);
        while (static_cast<int>(roots.size()) < degree) {
            Complex cand(rng.uniform(-2, 2), rng.uniform(-2, 2));
            bool ok = true;
            for (const auto& r : roots) ok &= std::abs(cand - r) > 0.2;
            if (ok) roots.push_back(cand);
        }
        const auto found = find_roots(from_roots(roots));
        REQUIRE(static_cast<int>(found.size()) == degree);
        CHECK(match_roots(found, roots) < 1e-8);
    }
}

TEST_CASE("roots solve the polynomial") {
    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        Poly1 p(5);
        for (auto& c : p) c = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        p.back() += Complex(1.5);  // keep the leading coefficient away from 0
        const auto found = find_roots(p);
        double scale = 0;
        for (const auto& c : p) scale = std::max(scale, std::abs(c));
        for (const auto& r : found) CHECK(std::abs(eval_poly1(p, r)) < 1e-8 * scale);
    }
}

TEST_CASE("square-free part strips multiplicity") {
    const Complex r(0.5, 0.9);
    for (int m : {2, 4, 6}) {
        const auto p = from_roots(std::vector<Complex>(static_cast<std::size_t>(m), r));
        const auto sf = square_free_part(p);
        CHECK(degree_poly1(sf) == 1);
    }
}

TEST_CASE("root profile distinguishes one multiple root from distinct roots") {
    SUBCASE("high multiplicity") {
        const Complex r(0.5, 0.936);
        for (int m : {2, 4, 6, 12}) {
            const auto profile = root_profile(from_roots(std::vector<Complex>(static_cast<std::size_t>(m), r)));
            REQUIRE(profile.size() == 1);
            CHECK(profile[0].multiplicity == m);
            CHECK(std::abs(profile[0].root - r) < 1e-9);
        }
    }

    SUBCASE("two distinct simple roots") {
        const std::vector<Complex> roots = {Complex(0.3, -0.1), Complex(0.9, 0.4)};
        const auto profile = root_profile(from_roots(roots));
        REQUIRE(profile.size() == 2);
        CHECK(profile[0].multiplicity == 1);
        CHECK(profile[1].multiplicity == 1);
    }

    SUBCASE("mixed profile") {
        std::vector<Complex> roots = {Complex(1, 0), Complex(1, 0), Complex(-1, 0)};
        const auto profile = root_profile(from_roots(roots));
        REQUIRE(profile.size() == 2);
        int total = 0;
        for (const auto& rm : profile) total += rm.multiplicity;
        CHECK(total == 3);
    }
}
