#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace crlab {

template <class Real>
using complex_t = std::complex<Real>;

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

template <class Real>
inline bool is_finite(const complex_t<Real>& z) {
    return std::isfinite(static_cast<double>(z.real())) &&
           std::isfinite(static_cast<double>(z.imag()));
}

// Error taxonomy. Constructors and operations throw these; callers that
// prefer recording over unwinding catch at the suite layer.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotUVExpressible : Error {
    explicit NotUVExpressible(const std::string& msg) : Error(msg) {}
};

struct ConstructionError : Error {
    explicit ConstructionError(const std::string& msg) : Error(msg) {}
};

struct Infeasible : Error {
    explicit Infeasible(const std::string& msg) : Error(msg) {}
};

struct StratumExcluded : Error {
    explicit StratumExcluded(const std::string& msg) : Error(msg) {}
};

struct SingularLocus : Error {
    explicit SingularLocus(const std::string& msg) : Error(msg) {}
};

struct NoWitnessBelowThreshold : Error {
    explicit NoWitnessBelowThreshold(const std::string& msg) : Error(msg) {}
};

struct NotHomogenizable : Error {
    explicit NotHomogenizable(const std::string& msg) : Error(msg) {}
};

struct DegreeCapExceeded : Error {
    explicit DegreeCapExceeded(const std::string& msg) : Error(msg) {}
};

// SplitMix64. Hand-rolled so that sampled point lists are bit-identical
// for a given seed regardless of standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double angle() { return uniform(0.0, 2.0 * kPi); }

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    std::uint64_t state_;
};

}  // namespace crlab
