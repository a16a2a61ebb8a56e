#include "rtk/bounds.hpp"

#include <cmath>

#include "rtk/errors.hpp"

namespace rtk {

namespace {
constexpr double kPi = 3.14159265358979323846;

cplx unit_phase(double energy, double t) {
    double phase = std::remainder(energy * t, 2.0 * kPi);
    return cplx(std::cos(phase), -std::sin(phase));
}

void check_window(const Spectrum& spec, double dt, double omega) {
    // conditions of the proof, stated after the spectral flip so they read on
    // the ground-state side: bulk without the ground level inside the window,
    // full spread between 2*Omega and pi + Omega
    const int Q = spec.size();
    double bulk = (spec.top() - spec.energies[1]) * dt;
    double spread = spec.range() * dt;
    double gap = spec.gap() * dt;
    (void)Q;
    if (bulk > 2.0 * omega * (1.0 + 1e-12) ||
        spread < 2.0 * omega * (1.0 - 1e-12) ||
        spread > (kPi + omega) * (1.0 + 1e-12) ||
        gap > (kPi - omega) * (1.0 + 1e-12))
        throw invalid_parameter("bound: dt violates the window conditions");
}
} // namespace

cplx rogers_szego(int j, double q, double theta) {
    if (j < 0) throw invalid_parameter("rogers_szego: j >= 0");
    if (q <= 0.0 || q > 1.0) throw invalid_parameter("rogers_szego: q in (0,1]");
    cplx z = -std::pow(q, -0.5) *
             cplx(std::cos(theta), -std::sin(theta));
    cplx w_prev = 1.0;      // W_0
    if (j == 0) return w_prev;
    cplx w = z + 1.0;       // W_1
    double qpow = 1.0;      // q^(k-1) for the k-th recursion step
    for (int k = 2; k <= j; ++k) {
        cplx w_next = (1.0 + z) * w - (1.0 - qpow) * z * w_prev;
        w_prev = w;
        w = w_next;
        qpow *= q;
    }
    return w;
}

cplx rogers_szego_binomial(int j, double theta) {
    cplx sum = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= j; ++k) {
        double ang = -k * (theta + kPi);
        sum += binom * cplx(std::cos(ang), std::sin(ang));
        binom = binom * (j - k) / (k + 1);
    }
    return sum;
}

double rs_window_check(int j, double q) {
    if (j < 1) throw invalid_parameter("rs_window_check: j >= 1");
    auto above = [&](double theta) {
        return std::abs(rogers_szego(j, q, theta)) > 1.0;
    };
    const int samples = 20000;
    double lo = 0.0, hi = kPi;
    bool found = false;
    for (int i = 1; i <= samples; ++i) {
        double theta = kPi * i / samples;
        if (above(theta)) {
            lo = kPi * (i - 1) / samples;
            hi = theta;
            found = true;
            break;
        }
    }
    if (!found) return kPi;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (above(mid))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double rs_omega(int j, double q) {
    if (q == 1.0) return kPi / 3.0;
    return rs_window_check(j, q);
}

double admissible_dt(const Spectrum& spec, double omega) {
    double gap = spec.gap();
    double bulk = spec.top() - spec.energies[1];
    if (gap <= 0.0)
        throw invalid_parameter("admissible_dt: degenerate ground gap");
    double dt = (kPi - omega) / gap;
    if (bulk > 0.0) dt = std::min(dt, 2.0 * omega / bulk);
    check_window(spec, dt, omega);
    return dt;
}

BoundReport thm11_bound(const Spectrum& spec, const StateVector& state,
                        double dt, int j) {
    if (j < 1) throw invalid_parameter("thm11_bound: j >= 1");
    if (spec.size() != state.size())
        throw dimension_mismatch("thm11_bound: size mismatch");
    const double omega = kPi / 3.0;
    check_window(spec, dt, omega);

    double cos2 = std::norm(state.amplitudes[0]);
    if (cos2 < 1e-14)
        throw zero_vector("thm11_bound: no overlap with the ground state");
    double sin2 = 1.0 - cos2;
    double eps_tilde = 1.0 + 3.0 * spec.gap() * dt / (2.0 * kPi);

    BoundReport rep;
    rep.step = j;
    rep.epsilon_tilde = eps_tilde;
    rep.cos2_xi = cos2;
    rep.bound_value =
        spec.range() * std::pow(eps_tilde, -2.0 * j) * sin2 / cos2;

    GridSpec grid{GridKind::Linear, dt, 1.0, j};
    if (sin2 == 0.0) {
        rep.measured_error = 0.0;
    } else {
        rep.measured_error = vqpe_run(spec, state, grid).final_error();
    }
    rep.margin = rep.bound_value - rep.measured_error;
    rep.satisfied = rep.measured_error <= rep.bound_value * (1.0 + 1e-9);
    return rep;
}

BoundReport cor12_bound(const Spectrum& spec, const StateVector& state,
                        double dt, int n, int j,
                        const std::vector<double>& ritz_values) {
    if (n < 1 || j < n) throw invalid_parameter("cor12_bound: need j >= n >= 1");
    if (static_cast<int>(ritz_values.size()) < n - 1)
        throw invalid_parameter("cor12_bound: need the n-1 lowest Ritz values");
    const double omega = kPi / 3.0;
    check_window(spec, dt, omega);

    double cos2 = std::norm(state.amplitudes[n - 1]);
    if (cos2 < 1e-14)
        throw zero_vector("cor12_bound: no overlap with the target eigenstate");
    double sin2 = 1.0 - cos2;
    double eps_tilde =
        1.0 + 3.0 * (spec.energies[n] - spec.energies[n - 1]) * dt / (2.0 * kPi);

    // Y prefactor: max over higher levels of the product of phase-distance
    // ratios against the supplied lower approximations
    double Y = 1.0;
    if (n >= 2) {
        cplx lam_n = unit_phase(spec.energies[n - 1], dt);
        Y = 0.0;
        for (int l = n; l < spec.size(); ++l) {
            cplx lam_l = unit_phase(spec.energies[l], dt);
            double prod = 1.0;
            for (int m = 0; m < n - 1; ++m) {
                cplx ritz_phase = unit_phase(ritz_values[m], dt);
                double denom = std::abs(lam_n - ritz_phase);
                if (denom < 1e-12)
                    throw degenerate_input(
                        "cor12_bound: Ritz phase collides with the target");
                prod *= std::abs(lam_l - ritz_phase) / denom;
            }
            Y = std::max(Y, prod);
        }
    }

    BoundReport rep;
    rep.step = j;
    rep.epsilon_tilde = eps_tilde;
    rep.cos2_xi = cos2;
    rep.bound_value = (spec.top() - spec.energies[n - 1]) * Y *
                      std::pow(eps_tilde, -2.0 * (j - n + 1)) * sin2 / cos2;

    if (sin2 == 0.0) {
        rep.measured_error = 0.0;
    } else {
        TimeGrid grid = make_grid({GridKind::Linear, dt, 1.0, j});
        SolveResult res = solve(assemble(spec, state, grid));
        if (res.retained_rank < n)
            throw numerical_error(
                "cor12_bound: subspace rank below the target level");
        rep.measured_error = res.ritz_values[n - 1] - spec.energies[n - 1];
    }
    rep.margin = rep.bound_value - rep.measured_error;
    rep.satisfied = rep.measured_error <= rep.bound_value * (1.0 + 1e-9);
    return rep;
}

} // namespace rtk
