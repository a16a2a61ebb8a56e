#pragma once

#include <vector>

#include "rtk/solver.hpp"

namespace rtk {

/// One row of the convergence-bound verification harness.
struct BoundReport {
    int step = 0; // j
    double measured_error = 0.0;
    double bound_value = 0.0;
    double epsilon_tilde = 0.0;
    double cos2_xi = 0.0;
    bool satisfied = false;
    double margin = 0.0; // bound - measured
};

/// Rogers-Szego polynomial W_j evaluated at z = -q^(-1/2) exp(-i theta) via
/// the three-term recursion.
cplx rogers_szego(int j, double q, double theta);

/// Binomial-sum form valid at q = 1 (oracle for the recursion).
cplx rogers_szego_binomial(int j, double theta);

/// Largest Omega such that |W_j(theta)| <= 1 for all |theta| <= Omega,
/// located by dense sampling plus bisection.
double rs_window_check(int j, double q);

/// Half-width of the bounded angular window (pi/3 at q = 1).
double rs_omega(int j, double q = 1.0);

/// Largest linear-grid spacing for which the proof's window conditions hold
/// for this spectrum (the sup construction, stated for the ground state).
double admissible_dt(const Spectrum& spec, double omega);

/// Geometric convergence bound for the lowest eigenvalue after j steps of a
/// linear grid with spacing dt, checked against the measured driver error.
BoundReport thm11_bound(const Spectrum& spec, const StateVector& state,
                        double dt, int j);

/// Interior-eigenvalue extension; `ritz_values` supply the approximations of
/// the n-1 lowest levels entering the Y prefactor. n is 1-based.
BoundReport cor12_bound(const Spectrum& spec, const StateVector& state,
                        double dt, int n, int j,
                        const std::vector<double>& ritz_values);

} // namespace rtk
