#pragma once

#include <array>
#include <tuple>

#include "crlab/core.hpp"

namespace crlab {

// Total-degree cap for monomials; multiplication checks products against it.
// Degree 4n constructions stay within the default through n = 16.
inline constexpr int kDefaultDegreeCap = 64;

// Monomial exponents of (w1, w2, w3, w4). Ordered lexicographically so that
// map iteration, evaluation and serialization are deterministic.
struct Exponent4 {
    int e1 = 0;
    int e2 = 0;
    int e3 = 0;
    int e4 = 0;

    int total_degree() const { return e1 + e2 + e3 + e4; }

    int operator[](int var) const {
        switch (var) {
            case 1: return e1;
            case 2: return e2;
            case 3: return e3;
            default: return e4;
        }
    }

    friend bool operator==(const Exponent4& a, const Exponent4& b) {
        return a.e1 == b.e1 && a.e2 == b.e2 && a.e3 == b.e3 && a.e4 == b.e4;
    }

    friend bool operator<(const Exponent4& a, const Exponent4& b) {
        return std::tie(a.e1, a.e2, a.e3, a.e4) < std::tie(b.e1, b.e2, b.e3, b.e4);
    }
};

inline Exponent4 operator+(const Exponent4& a, const Exponent4& b) {
    return {a.e1 + b.e1, a.e2 + b.e2, a.e3 + b.e3, a.e4 + b.e4};
}

}  // namespace crlab
