#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace rtk {

/// Counter-based deterministic generator (splitmix64). Streams derived with
/// split() are independent of each other and of execution order, which keeps
/// ensemble runs reproducible across thread counts.
class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Derive an independent stream seed for realization r of an ensemble.
    static std::uint64_t split(std::uint64_t base_seed, std::uint64_t r) {
        Rng g(base_seed ^ (0x2545f4914f6cdd1dULL * (r + 1)));
        g();
        return g();
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller (no cached second value, so draws are
    /// position-independent).
    double normal() {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double mean, double stddev) {
        return mean + stddev * normal();
    }

    /// Exponential with given mean.
    double exponential(double mean) {
        double u = uniform();
        while (u == 0.0) u = uniform();
        return -mean * std::log(u);
    }

  private:
    std::uint64_t state_;
};

} // namespace rtk
