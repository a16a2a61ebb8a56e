#include "rtk/analytic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

#include "rtk/errors.hpp"

namespace rtk {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

cplx unit_phase(double energy, double t) {
    double phase = std::remainder(energy * t, kTwoPi);
    return cplx(std::cos(phase), -std::sin(phase));
}

struct Elements {
    double H00;
    cplx H01;
    cplx S01;
};

Elements single_step_elements(const Spectrum& spec, double t1) {
    const int Q = spec.size();
    Elements el{0.0, 0.0, 0.0};
    for (int n = 0; n < Q; ++n) {
        cplx ph = unit_phase(spec.energies[n], t1) / static_cast<double>(Q);
        el.S01 += ph;
        el.H01 += spec.energies[n] * ph;
        el.H00 += spec.energies[n] / Q;
    }
    return el;
}

bool is_uniform(const StateVector& state, double tol = 1e-12) {
    double target = 1.0 / state.size();
    for (const cplx& z : state.amplitudes)
        if (std::abs(std::norm(z) - target) > tol) return false;
    return true;
}

bool is_linear_family(const Spectrum& spec, double tol = 1e-9) {
    double d = spec.mean_spacing();
    if (d <= 0.0) return false;
    for (int n = 1; n < spec.size(); ++n) {
        double dn = spec.energies[n] - spec.energies[n - 1];
        if (std::abs(dn - d) > tol * d) return false;
    }
    return true;
}

std::vector<double> numeric_single_step(const Spectrum& spec,
                                        const StateVector& state, double t1) {
    TimeGrid grid = make_time_grid({0.0, t1});
    SubspaceMatrices mats = assemble(spec, state, grid);
    SolveResult res = solve(mats);
    return population(ritz_state(res, 0, spec, state, grid));
}

double chi_of(const Spectrum& spec, double t1) {
    Elements el = single_step_elements(spec, t1);
    return single_step_aux(el.H00, el.H01, el.S01, spec.size()).chi;
}

} // namespace

SingleStepAuxiliaries single_step_aux(double H00, cplx H01, cplx S01, int Q) {
    if (Q < 1) throw invalid_parameter("single_step_aux needs Q >= 1");
    double s_abs = std::abs(S01);
    if (s_abs <= 1e-14 || s_abs >= 1.0 - 1e-14)
        throw degenerate_input("single_step_aux: |S01| at 0 or 1");

    SingleStepAuxiliaries a;
    a.lambda_plus = 1.0 / std::sqrt(1.0 + s_abs);
    a.lambda_minus = 1.0 / std::sqrt(1.0 - s_abs);
    const double lm2 = a.lambda_minus * a.lambda_minus;
    const double lp2 = a.lambda_plus * a.lambda_plus;

    a.g = (S01.real() * H01.imag() - S01.imag() * H01.real()) / s_abs *
          a.lambda_minus * a.lambda_plus;
    a.rho = (S01.real() * H01.real() + S01.imag() * H01.imag()) /
                (2.0 * s_abs) * (lm2 + lp2) -
            0.5 * H00 * (lm2 - lp2);
    a.rho_tilde = std::hypot(a.g, a.rho);
    if (a.g == 0.0 && a.rho <= 0.0)
        throw degenerate_input("single_step_aux: g = 0 with rho <= 0");

    const double denom = a.rho_tilde + a.rho;
    a.mu = 2.0 * a.g * a.lambda_plus / (denom * a.lambda_minus);
    a.mu_tilde =
        (-a.g * a.g * (lm2 - lp2) - 2.0 * a.rho * denom * lm2) /
        (denom * denom * lm2);
    a.chi = std::arg(cplx(a.mu, a.mu_tilde)) + std::arg(S01);
    a.chi = std::remainder(a.chi, kTwoPi);
    if (a.chi <= -kPi) a.chi += kTwoPi;
    a.Z = 2.0 * Q * a.rho_tilde * denom /
          (denom * denom * lm2 + a.g * a.g * lp2);
    return a;
}

std::vector<double> single_step_population(const Spectrum& spec,
                                           const StateVector& state,
                                           double t1) {
    if (t1 <= 0.0)
        throw invalid_parameter("single_step_population needs t1 > 0");
    if (spec.size() != state.size())
        throw dimension_mismatch("single_step_population: size mismatch");
    if (!is_uniform(state)) return numeric_single_step(spec, state, t1);
    const int Q = spec.size();
    Elements el = single_step_elements(spec, t1);
    try {
        SingleStepAuxiliaries aux = single_step_aux(el.H00, el.H01, el.S01, Q);
        std::vector<double> p(Q);
        for (int n = 0; n < Q; ++n) {
            double phase =
                std::remainder(aux.chi + spec.energies[n] * t1, kTwoPi);
            p[n] = (std::sin(phase) + 1.0) / aux.Z;
        }
        return p;
    } catch (const degenerate_input&) {
        return numeric_single_step(spec, state, t1);
    }
}

double suppression_center(const Spectrum& spec, const StateVector& state) {
    if (spec.size() != state.size())
        throw dimension_mismatch("suppression_center: size mismatch");
    const double range = spec.range();
    if (range <= 0.0)
        throw numerical_error("suppression_center: flat spectrum");

    if (is_linear_family(spec) && is_uniform(state)) {
        // chi'(0+) by symmetric differences with Richardson extrapolation
        const double t_base = 0.2 / range;
        const int levels = 4;
        double d[levels];
        for (int k = 0; k < levels; ++k) {
            double t = t_base / (1 << k);
            d[k] = (chi_of(spec, 1.5 * t) - chi_of(spec, 0.5 * t)) / t;
        }
        // Neville extrapolation to t -> 0 over nodes t_k = t_base / 2^k
        double x[levels];
        for (int k = 0; k < levels; ++k) x[k] = t_base / (1 << k);
        for (int m = 1; m < levels; ++m)
            for (int k = 0; k < levels - m; ++k)
                d[k] = (x[k] * d[k + 1] - x[k + m] * d[k]) / (x[k] - x[k + m]);
        double chi_prime = d[0];
        double Ex = -chi_prime;
        return (Ex - spec.ground()) / range;
    }

    // generic spectra: minimize the small-t1 profile directly
    const double t1 = 0.5 / range;
    std::vector<double> p = single_step_population(spec, state, t1);
    auto [mn, mx] = std::minmax_element(p.begin(), p.end());
    if (*mx - *mn < 1e-14)
        throw numerical_error("suppression_center: population profile is flat");
    int i = static_cast<int>(mn - p.begin());
    double E = spec.energies[i];
    if (i > 0 && i + 1 < spec.size()) { // parabolic refinement over energy
        double e0 = spec.energies[i - 1], e1 = spec.energies[i],
               e2 = spec.energies[i + 1];
        double f0 = p[i - 1], f1 = p[i], f2 = p[i + 1];
        double denom = (e0 - e1) * (f1 - f2) - (e1 - e2) * (f0 - f1);
        if (std::abs(denom) > 0.0) {
            double num = (e0 * e0 - e1 * e1) * (f1 - f2) -
                         (e1 * e1 - e2 * e2) * (f0 - f1);
            double vertex = 0.5 * num / denom;
            if (vertex >= e0 && vertex <= e2) E = vertex;
        }
    }
    return (E - spec.ground()) / range;
}

ContinuumElements continuum_elements(const DensityOfStates& dos, double t1) {
    if (!std::isfinite(t1))
        throw invalid_parameter("continuum_elements: t1 must be finite");
    const double Q = dos.mass;

    if (dos.kind == DosKind::Flat) {
        double c = 0.5 * (dos.lo + dos.hi);
        double L = dos.hi - dos.lo;
        double u = 0.5 * L * t1;
        double sinc = (std::abs(u) < 1e-8) ? 1.0 - u * u / 6.0
                                           : std::sin(u) / u;
        // d/du [sin u / u]
        double dsinc = (std::abs(u) < 1e-8)
                           ? -u / 3.0
                           : (std::cos(u) - sinc) / u;
        cplx phase = unit_phase(c, t1);
        cplx S01 = phase * sinc;
        // H01 = i d/dt S01
        cplx H01 = cplx(0.0, 1.0) *
                   (cplx(0.0, -c) * phase * sinc + phase * dsinc * 0.5 * L);
        return {H01, S01};
    }
    if (dos.kind == DosKind::Gaussian && dos.lo < dos.center - 12.0 * dos.scale &&
        dos.hi > dos.center + 12.0 * dos.scale) {
        // untruncated Gaussian characteristic function
        double s2t = dos.scale * dos.scale * t1;
        cplx S01 = unit_phase(dos.center, t1) * std::exp(-0.5 * s2t * t1);
        cplx H01 = (dos.center - cplx(0.0, 1.0) * s2t) * S01;
        return {H01, S01};
    }

    double lo = std::max(dos.support_lo(), dos.center - 12.0 * dos.scale);
    double hi = std::min(dos.support_hi(), dos.center + 12.0 * dos.scale);
    using boost::math::quadrature::gauss_kronrod;
    auto integrate = [&](auto&& f) {
        double err;
        double v = gauss_kronrod<double, 31>::integrate(f, lo, hi, 14, 1e-12,
                                                        &err);
        if (!(std::abs(err) <= 1e-6 * std::max(1.0, std::abs(v))))
            throw numerical_error("continuum_elements: quadrature failed");
        return v;
    };
    auto w = [&](double E) { return dos.density(E) / Q; };
    cplx S01(integrate([&](double E) { return std::cos(E * t1) * w(E); }),
             integrate([&](double E) { return -std::sin(E * t1) * w(E); }));
    cplx H01(integrate([&](double E) { return E * std::cos(E * t1) * w(E); }),
             integrate([&](double E) { return -E * std::sin(E * t1) * w(E); }));
    return {H01, S01};
}

std::vector<cplx> phase_trajectory(const Spectrum& spec, const TimeGrid& grid,
                                   const std::vector<cplx>& coeffs, int n) {
    const int NT = grid.steps();
    if (static_cast<int>(coeffs.size()) != NT)
        throw invalid_parameter("phase_trajectory: coeffs must have length N_T");
    if (n < 1 || n > spec.size())
        throw index_out_of_range("phase_trajectory: eigenstate index");
    const double E = spec.energies[n - 1];
    std::vector<cplx> traj(NT + 1);
    traj[0] = 1.0;
    for (int j = 1; j <= NT; ++j) {
        int step = NT - j + 1; // 1-based timestep applied at this move
        double dt = grid.times[step] - grid.times[step - 1];
        traj[j] = 1.0 + coeffs[step - 1] * unit_phase(E, dt) * traj[j - 1];
    }
    return traj;
}

std::vector<cplx> nested_coefficients(const Eigen::VectorXcd& column) {
    const int m = static_cast<int>(column.size());
    if (m < 2)
        throw invalid_parameter("nested_coefficients: need at least two rows");
    if (std::abs(column(0)) < 1e-300)
        throw degenerate_input("nested_coefficients: c_0 vanishes");
    std::vector<cplx> out(m - 1);
    for (int j = 1; j < m; ++j) {
        if (std::abs(column(j - 1)) < 1e-300)
            throw degenerate_input("nested_coefficients: interior coefficient vanishes");
        out[j - 1] = column(j) / column(j - 1);
    }
    return out;
}

} // namespace rtk
