#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rtk/rng.hpp"

namespace rtk {

/// Sorted eigenvalues of a diagonal model Hamiltonian. Everything the method
/// does depends only on these energies and the initial-state amplitudes.
struct Spectrum {
    std::vector<double> energies; // nondecreasing, finite

    int size() const { return static_cast<int>(energies.size()); }
    double ground() const { return energies.front(); }
    double top() const { return energies.back(); }
    double range() const { return top() - ground(); }
    double gap() const { return energies[1] - energies[0]; }
    double top_gap() const {
        return energies[energies.size() - 1] - energies[energies.size() - 2];
    }
    double mean_spacing() const { return range() / (size() - 1); }
};

/// Validates (finite, size >= 2), sorts, and wraps raw energies.
Spectrum make_spectrum(std::vector<double> energies);

enum class SpacingKind { Bernoulli, Uniform, Exponential, WignerGUE };

/// i.i.d. level-spacing law with mean D. `a` is the kind-specific shape:
/// Bernoulli draws from {D(1-a), D(1+a)}, Uniform from [D(1-a), D(1+a)].
struct SpacingDistribution {
    SpacingKind kind = SpacingKind::Exponential;
    double mean = 1.0; // D
    double shape = 0.0;

    static SpacingDistribution bernoulli(double D, double a = 0.5);
    static SpacingDistribution uniform(double D, double a = 1.0);
    static SpacingDistribution exponential(double D);
    static SpacingDistribution wigner_gue(double D);

    /// Nondimensional spacing variance eta = var / D^2 (closed form).
    double eta() const;
    double variance() const { return eta() * mean * mean; }

    double sample(Rng& rng) const;
    double pdf(double spacing) const;
    double cdf(double spacing) const;
};

enum class DosKind { Flat, Semicircle, Gaussian };

/// Density of states normalized so the integral over its support equals the
/// Hilbert-space dimension Q.
struct DensityOfStates {
    DosKind kind = DosKind::Flat;
    int mass = 1; // Q
    // Flat: support [lo, hi]. Semicircle: center, radius. Gaussian: center,
    // sigma, optional truncation [lo, hi].
    double lo = 0.0, hi = 1.0;
    double center = 0.0;
    double scale = 1.0; // radius or sigma

    static DensityOfStates flat(int Q, double lo, double hi);
    static DensityOfStates semicircle(int Q, double center, double radius);
    static DensityOfStates gaussian(int Q, double center, double sigma,
                                    double lo = -1e308, double hi = 1e308);

    double density(double E) const;
    double mean_energy() const;
    double support_lo() const;
    double support_hi() const;
    double sample(Rng& rng) const;
};

// Deterministic families.
Spectrum linear_spectrum(int Q, double dE);
Spectrum gapped_linear_spectrum(int Q, double dE, double eps12);
Spectrum search_spectrum(int Q, double E1, double E2);

// Random families; deterministic per seed.
Spectrum random_spacing_spectrum(int Q, double E1,
                                 const SpacingDistribution& dist,
                                 std::uint64_t seed);
Spectrum dos_sampled_spectrum(int Q, const DensityOfStates& dos,
                              std::uint64_t seed);
Spectrum gue_matrix_spectrum(int Q, std::uint64_t seed);

/// Affine rescale so the ground energy is E1 and the mean spacing is D
/// ("proper scaling and shifting" for ensemble comparisons).
Spectrum rescaled_spectrum(const Spectrum& spec, double E1, double D);

enum class PerturbOrder { First, Second };

/// Energies shifted by a GOE perturbation via perturbation theory in the
/// eigenbasis, re-sorted. `strength` multiplies the unit-scaled GOE sample.
Spectrum perturbed_spectrum(const Spectrum& spec, double strength,
                            PerturbOrder order, std::uint64_t seed);

struct Histogram {
    std::vector<double> edges;  // bins + 1
    std::vector<double> counts; // normalized to unit mass per realization
};

/// Aggregate many perturbed-spectrum realizations into a normalized histogram.
Histogram broadened_dos(const Spectrum& spec, double strength,
                        int realizations, int bins, std::uint64_t seed);

// Text format: one energy per line, '#' comments; sorted on read.
Spectrum read_spectrum(std::istream& in);
Spectrum read_spectrum_file(const std::string& path);
void write_spectrum(std::ostream& out, const Spectrum& spec);
void write_spectrum_file(const std::string& path, const Spectrum& spec);

} // namespace rtk
