#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "rtk/state.hpp"

namespace rtk {

/// Strictly increasing evolution times with t_0 = 0.
struct TimeGrid {
    std::vector<double> times;

    int steps() const { return static_cast<int>(times.size()) - 1; } // N_T
    int dim() const { return static_cast<int>(times.size()); }
    bool is_linear(double tol = 1e-12) const;
};

TimeGrid make_time_grid(std::vector<double> times);

/// Hermitian pair (H, S) in the basis of real-time evolved states.
struct SubspaceMatrices {
    Eigen::MatrixXcd H;
    Eigen::MatrixXcd S;
    TimeGrid grid;
};

/// S_jk = sum_n |z_n|^2 exp(-i E_n (t_k - t_j)); H_jk weights the sum by E_n.
/// Linear grids are assembled from the N_T+1 distinct lags only.
SubspaceMatrices assemble(const Spectrum& spec, const StateVector& state,
                          const TimeGrid& grid);

struct SolveResult {
    std::vector<double> ritz_values;       // ascending
    Eigen::MatrixXcd coefficient_vectors;  // one column per retained pair
    int retained_rank = 0;
    std::vector<double> discarded_singular_values;
};

struct SolveOptions {
    double s_sv = 1e-10;   // threshold on singular values of S
    bool absolute = false; // default interprets s_sv relative to s_max
};

/// Canonical orthogonalization of S with singular-value truncation, then a
/// Hermitian solve of the conjugated problem; coefficients back-transformed.
SolveResult solve(const SubspaceMatrices& mats, const SolveOptions& opts = {});

/// Reconstruct the retained Ritz vector `which` (0-based, ascending order)
/// in the eigenbasis: normalized sum_j c_j exp(-i E_n t_j) z_n.
StateVector ritz_state(const SolveResult& result, int which,
                       const Spectrum& spec, const StateVector& state,
                       const TimeGrid& grid);

/// JSON dump of (H, S) as row-major arrays of [re, im] pairs with grid
/// metadata, for the CLI `matrices` subcommand.
std::string matrices_to_json(const SubspaceMatrices& mats, double s_sv);

} // namespace rtk
