#pragma once

#include <cstdint>
#include <vector>

#include "rtk/solver.hpp"

namespace rtk {

enum class StatePolicy { Uniform, Random };

/// Recipe for drawing one random spectrum per realization.
struct EnsembleSpec {
    enum class Kind { Spacing, Dos, GueMatrix };

    Kind kind = Kind::Spacing;
    int Q = 1000;
    double E1 = 1.0;
    SpacingDistribution dist; // Kind::Spacing
    DensityOfStates dos;      // Kind::Dos
    bool rescale = true;      // map Dos/GueMatrix draws onto (E1, D)
    double D = 1.0;           // target mean spacing when rescaling
};

/// Draw realization `seed` of the ensemble.
Spectrum realize(const EnsembleSpec& gen, std::uint64_t seed);

/// Linear spectrum with the same ground energy and mean spacing the ensemble
/// targets; the convergence benchmark runs on this.
Spectrum effective_mean_spectrum(const SpacingDistribution& dist, int Q,
                                 double E1);
Spectrum effective_mean_spectrum(const EnsembleSpec& gen);

/// Per-step statistics of the ground-state error over disorder realizations.
struct Envelope {
    std::vector<int> steps;
    std::vector<double> min_err, max_err, mean_err, std_err;
    std::vector<double> benchmark; // effective-spectrum trace
    int realizations = 0;          // successful runs entering the statistics
    int failures = 0;              // recorded and excluded, never dropped
    std::uint64_t base_seed = 0;
};

/// Runs the driver once per realization with derived seeds
/// (split(base_seed, 2r) for the spectrum, split(base_seed, 2r+1) for the
/// state) and aggregates. Deterministic for fixed (base_seed, realizations)
/// regardless of thread count; early stopping is disabled so every trace has
/// the full grid length.
Envelope convergence_envelope(const EnsembleSpec& gen, StatePolicy policy,
                              const GridSpec& grid, int realizations,
                              std::uint64_t base_seed,
                              const RunOptions& opts = {}, int threads = 0);

struct JensenGap {
    double lhs = 0.0;      // |E e^{-i E_n dt} - e^{-i E_n^eff dt}|, MC estimate
    double rhs = 0.0;      // eta (n-1) (dt E[dE])^2 / sqrt(2)
    double mc_error = 0.0; // one standard error of the lhs estimate
};

/// Monte-Carlo check of the characteristic-function gap for the sum of n-1
/// i.i.d. spacings against its second-moment bound.
JensenGap jensen_gap(const SpacingDistribution& dist, int n, double dt,
                     int samples = 100000, std::uint64_t seed = 1);

struct SpacingSummary {
    double mean = 0.0;
    double variance = 0.0;
    double eta_hat = 0.0;     // variance / mean^2
    double ks_statistic = 0.0;
    bool ks_pass = false;     // level 0.01
};

/// Summary statistics plus a Kolmogorov-Smirnov test of `samples` against the
/// analytic CDF of `dist`. Needs at least 100 samples.
SpacingSummary spacing_diagnostics(std::vector<double> samples,
                                   const SpacingDistribution& dist);

} // namespace rtk
