#pragma once

#include <limits>
#include <vector>

#include "rtk/subspace.hpp"

namespace rtk {

enum class GridKind { Linear, Adaptive };

/// Time-grid family: Linear t_j = j t1, Adaptive t_j = sum_k gamma^(k-1) t1.
struct GridSpec {
    GridKind kind = GridKind::Linear;
    double t1 = 0.1;
    double gamma_t = 1.0; // Adaptive only
    int n_steps = 1;      // N_T
};

TimeGrid make_grid(const GridSpec& spec);

/// Nondimensional timestep convention t1 * dE = kappa * 2 pi / Q, with dE the
/// mean level spacing of the spectrum.
double t1_from_kappa(double kappa, const Spectrum& spec);
double kappa_from_t1(double t1, const Spectrum& spec);

enum class RunStatus { Converged, Exhausted };

struct StepRecord {
    int step = 0;
    double time = 0.0;       // t_j
    double energy = 0.0;     // E_g estimate
    double delta_e1 = 0.0;   // E_g - E_1
    int retained_rank = 0;
    double wall_time = 0.0;  // seconds spent in this step
};

struct RunTrace {
    std::vector<StepRecord> steps;
    RunStatus status = RunStatus::Exhausted;

    double final_energy() const { return steps.back().energy; }
    double final_error() const { return steps.back().delta_e1; }
};

struct RunOptions {
    double eps_tol = 0.0;    // stop when |dE_g| <= eps_tol (0: run the grid out)
    double s_sv_rel = 1e-10; // relative singular-value threshold
    bool relative_tol = false; // interpret eps_tol relative to |E_g|
};

/// Ground-state driver: grow the subspace one evolved state per iteration and
/// re-solve the projected problem on each grid prefix.
RunTrace vqpe_run(const Spectrum& spec, const StateVector& state,
                  const GridSpec& grid, const RunOptions& opts = {});

/// Iterative variant: after each timestep block the reference is replaced by
/// the current lowest Ritz state. n_inner is the number of partitions of each
/// [t_{j-1}, t_j] interval (uniform partition for n_inner > 1).
RunTrace ivqpe_run(const Spectrum& spec, const StateVector& state,
                   const GridSpec& grid, int n_inner = 1,
                   const RunOptions& opts = {});

enum class RunMode { VQPE, IVQPE };

struct ScanResult {
    std::vector<double> kappas;
    std::vector<double> gammas;
    std::vector<std::vector<double>> delta_e1; // [kappa][gamma]
    int argmin_kappa = 0;
    int argmin_gamma = 0;
    double min_delta_e1 = 0.0;
};

/// Final-error landscape over (kappa, gamma_t); each cell is an independent
/// run. Cells may be evaluated in parallel; results do not depend on order.
ScanResult scan(const Spectrum& spec, const StateVector& state,
                const std::vector<double>& kappa_range,
                const std::vector<double>& gamma_range, int n_steps,
                RunMode mode, const RunOptions& opts = {}, int threads = 0);

/// Optimal linear-grid timestep: golden-section refinement of a coarse
/// 64-point sweep of the final error over kappa in (0, kappa_max].
double optimal_kappa(const Spectrum& spec, const StateVector& state,
                     int n_steps, double kappa_max = 1.5,
                     const RunOptions& opts = {});

/// LCU success probability of a single step:
/// P = sum_n |z_n|^2 sin^2((E_x - E_n) t1 / 2).
double lcu_success(const StateVector& state, const Spectrum& spec, double E_x,
                   double t1);

struct LcuTrace {
    std::vector<double> step_probabilities;
    double cumulative = 1.0;
};

/// Chained success probabilities with the post-selection update
/// |z_n|^2 -> |z_n|^2 sin^2((E_x - E_n) dt_j / 2), renormalized per step.
/// When fixed_E_x is NaN the per-step E_x is the suppression-center energy
/// of the current intermediate state.
LcuTrace lcu_cumulative(const StateVector& state, const Spectrum& spec,
                        const GridSpec& grid,
                        double fixed_E_x = std::numeric_limits<double>::quiet_NaN());

} // namespace rtk
