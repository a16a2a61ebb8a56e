#pragma once

#include <vector>

#include "rtk/state.hpp"
#include "rtk/subspace.hpp"

namespace rtk {

/// Auxiliary variables of the single-step closed form. chi is the phase
/// offset in (-pi, pi]; Z the population normalization.
struct SingleStepAuxiliaries {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double g = 0.0;
    double rho = 0.0;
    double rho_tilde = 0.0;
    double mu = 0.0;
    double mu_tilde = 0.0;
    double chi = 0.0;
    double Z = 0.0;
};

/// Build the auxiliaries from the 2x2 matrix elements. Throws
/// degenerate_input when |S01| is 0 or 1 or when (g = 0, rho <= 0); callers
/// fall back to the direct 2x2 solve on that measure-zero set.
SingleStepAuxiliaries single_step_aux(double H00, cplx H01, cplx S01, int Q);

/// Ground-state populations after one step of size t1. Uses the sinusoidal
/// closed form for uniform initial states and routes everything else (and
/// the degenerate set) through the numeric generalized eigensolve.
std::vector<double> single_step_population(const Spectrum& spec,
                                           const StateVector& state,
                                           double t1);

/// Relative location x in [0,1] of the small-t1 population suppression,
/// E_x = (1-x) E_1 + x E_Q. Analytic chi-derivative route for the linear
/// family with a uniform state; numeric profile minimization otherwise.
double suppression_center(const Spectrum& spec, const StateVector& state);

/// Continuum (H01, S01) for a density of states at evolution time t1,
/// normalized by the total mass Q. Closed forms for flat and untruncated
/// Gaussian densities; adaptive quadrature otherwise.
struct ContinuumElements {
    cplx H01;
    cplx S01;
};
ContinuumElements continuum_elements(const DensityOfStates& dos, double t1);

/// Moebius phase trajectory z_0(n)=1,
/// z_j(n) = 1 + c_{N_T-j+1} exp(-i E_n dt_{N_T-j+1}) z_{j-1}(n).
/// `coeffs` holds the nested combinators c_1..c_{N_T}; `n` is 1-based.
std::vector<cplx> phase_trajectory(const Spectrum& spec, const TimeGrid& grid,
                                   const std::vector<cplx>& coeffs, int n);

/// Convert a solver coefficient column (length N_T+1) into the nested
/// combinators used by phase_trajectory, normalizing so c_0 = 1.
std::vector<cplx> nested_coefficients(const Eigen::VectorXcd& column);

} // namespace rtk
