#include "rtk/spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rtk/errors.hpp"

namespace rtk {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Spectrum make_spectrum(std::vector<double> energies) {
    if (energies.size() < 2)
        throw invalid_parameter("spectrum needs at least 2 energies");
    for (double e : energies)
        if (!std::isfinite(e))
            throw invalid_parameter("spectrum energies must be finite");
    std::sort(energies.begin(), energies.end());
    return Spectrum{std::move(energies)};
}

// ---------------------------------------------------------------------------
// Spacing distributions

SpacingDistribution SpacingDistribution::bernoulli(double D, double a) {
    if (D <= 0.0 || a < 0.0 || a >= 1.0)
        throw invalid_parameter("bernoulli spacing needs D > 0, 0 <= a < 1");
    return {SpacingKind::Bernoulli, D, a};
}

SpacingDistribution SpacingDistribution::uniform(double D, double a) {
    if (D <= 0.0 || a < 0.0 || a > 1.0)
        throw invalid_parameter("uniform spacing needs D > 0, 0 <= a <= 1");
    return {SpacingKind::Uniform, D, a};
}

SpacingDistribution SpacingDistribution::exponential(double D) {
    if (D <= 0.0) throw invalid_parameter("exponential spacing needs D > 0");
    return {SpacingKind::Exponential, D, 0.0};
}

SpacingDistribution SpacingDistribution::wigner_gue(double D) {
    if (D <= 0.0) throw invalid_parameter("wigner spacing needs D > 0");
    return {SpacingKind::WignerGUE, D, 0.0};
}

double SpacingDistribution::eta() const {
    switch (kind) {
        case SpacingKind::Bernoulli: return shape * shape;
        case SpacingKind::Uniform: return shape * shape / 3.0;
        case SpacingKind::Exponential: return 1.0;
        case SpacingKind::WignerGUE: return 3.0 * kPi / 8.0 - 1.0;
    }
    return 0.0;
}

double SpacingDistribution::sample(Rng& rng) const {
    switch (kind) {
        case SpacingKind::Bernoulli:
            return rng.uniform() < 0.5 ? mean * (1.0 - shape)
                                       : mean * (1.0 + shape);
        case SpacingKind::Uniform:
            return rng.uniform(mean * (1.0 - shape), mean * (1.0 + shape));
        case SpacingKind::Exponential:
            return rng.exponential(mean);
        case SpacingKind::WignerGUE: {
            // Wigner surmise for the GUE is a Maxwell (chi-3) law with
            // scale s = D sqrt(pi/8), so mean = D.
            double s = mean * std::sqrt(kPi / 8.0);
            double x = rng.normal(), y = rng.normal(), z = rng.normal();
            return s * std::sqrt(x * x + y * y + z * z);
        }
    }
    return mean;
}

double SpacingDistribution::pdf(double d) const {
    switch (kind) {
        case SpacingKind::Uniform: {
            double lo = mean * (1.0 - shape), hi = mean * (1.0 + shape);
            return (d >= lo && d <= hi && hi > lo) ? 1.0 / (hi - lo) : 0.0;
        }
        case SpacingKind::Exponential:
            return d >= 0.0 ? std::exp(-d / mean) / mean : 0.0;
        case SpacingKind::WignerGUE: {
            double D = mean;
            return d >= 0.0 ? 32.0 * d * d *
                                  std::exp(-4.0 * d * d / (kPi * D * D)) /
                                  (kPi * kPi * D * D * D)
                            : 0.0;
        }
        case SpacingKind::Bernoulli:
            return 0.0; // atomic law, no density
    }
    return 0.0;
}

double SpacingDistribution::cdf(double d) const {
    switch (kind) {
        case SpacingKind::Bernoulli: {
            double lo = mean * (1.0 - shape), hi = mean * (1.0 + shape);
            if (d < lo) return 0.0;
            if (d < hi) return 0.5;
            return 1.0;
        }
        case SpacingKind::Uniform: {
            double lo = mean * (1.0 - shape), hi = mean * (1.0 + shape);
            if (d <= lo) return 0.0;
            if (d >= hi) return 1.0;
            return (d - lo) / (hi - lo);
        }
        case SpacingKind::Exponential:
            return d <= 0.0 ? 0.0 : 1.0 - std::exp(-d / mean);
        case SpacingKind::WignerGUE: {
            if (d <= 0.0) return 0.0;
            double s = mean * std::sqrt(kPi / 8.0);
            double u = d / s;
            return std::erf(u / std::sqrt(2.0)) -
                   std::sqrt(2.0 / kPi) * u * std::exp(-0.5 * u * u);
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Densities of states

DensityOfStates DensityOfStates::flat(int Q, double lo, double hi) {
    if (Q < 1 || hi <= lo) throw invalid_parameter("flat dos needs hi > lo");
    DensityOfStates d;
    d.kind = DosKind::Flat;
    d.mass = Q;
    d.lo = lo;
    d.hi = hi;
    d.center = 0.5 * (lo + hi);
    d.scale = hi - lo;
    return d;
}

DensityOfStates DensityOfStates::semicircle(int Q, double center,
                                            double radius) {
    if (Q < 1 || radius <= 0.0)
        throw invalid_parameter("semicircle dos needs radius > 0");
    DensityOfStates d;
    d.kind = DosKind::Semicircle;
    d.mass = Q;
    d.center = center;
    d.scale = radius;
    d.lo = center - radius;
    d.hi = center + radius;
    return d;
}

DensityOfStates DensityOfStates::gaussian(int Q, double center, double sigma,
                                          double lo, double hi) {
    if (Q < 1 || sigma <= 0.0 || hi <= lo)
        throw invalid_parameter("gaussian dos needs sigma > 0, hi > lo");
    DensityOfStates d;
    d.kind = DosKind::Gaussian;
    d.mass = Q;
    d.center = center;
    d.scale = sigma;
    d.lo = lo;
    d.hi = hi;
    return d;
}

double DensityOfStates::support_lo() const { return lo; }
double DensityOfStates::support_hi() const { return hi; }

double DensityOfStates::density(double E) const {
    switch (kind) {
        case DosKind::Flat:
            return (E >= lo && E <= hi) ? mass / (hi - lo) : 0.0;
        case DosKind::Semicircle: {
            double u = E - center;
            double r2 = scale * scale - u * u;
            return r2 > 0.0 ? 2.0 * mass * std::sqrt(r2) /
                                  (kPi * scale * scale)
                            : 0.0;
        }
        case DosKind::Gaussian: {
            if (E < lo || E > hi) return 0.0;
            double zlo = (lo - center) / (scale * std::sqrt(2.0));
            double zhi = (hi - center) / (scale * std::sqrt(2.0));
            double norm = 0.5 * (std::erf(zhi) - std::erf(zlo));
            double u = (E - center) / scale;
            return mass * std::exp(-0.5 * u * u) /
                   (scale * std::sqrt(2.0 * kPi) * norm);
        }
    }
    return 0.0;
}

double DensityOfStates::mean_energy() const {
    switch (kind) {
        case DosKind::Flat: return 0.5 * (lo + hi);
        case DosKind::Semicircle: return center;
        case DosKind::Gaussian: {
            // truncated-normal mean
            double a = (lo - center) / scale;
            double b = (hi - center) / scale;
            auto phi = [](double x) {
                return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
            };
            double Z = 0.5 * (std::erf(b / std::sqrt(2.0)) -
                              std::erf(a / std::sqrt(2.0)));
            return center + scale * (phi(a) - phi(b)) / Z;
        }
    }
    return center;
}

double DensityOfStates::sample(Rng& rng) const {
    switch (kind) {
        case DosKind::Flat:
            return rng.uniform(lo, hi);
        case DosKind::Semicircle:
            for (;;) { // rejection against a flat envelope
                double x = rng.uniform(lo, hi);
                double u = (x - center) / scale;
                double accept = std::sqrt(std::max(0.0, 1.0 - u * u));
                if (rng.uniform() <= accept) return x;
            }
        case DosKind::Gaussian:
            for (;;) {
                double x = rng.normal(center, scale);
                if (x >= lo && x <= hi) return x;
            }
    }
    return center;
}

// ---------------------------------------------------------------------------
// Spectrum constructors

Spectrum linear_spectrum(int Q, double dE) {
    if (Q < 2 || dE <= 0.0)
        throw invalid_parameter("linear_spectrum needs Q >= 2, dE > 0");
    std::vector<double> e(Q);
    for (int n = 1; n <= Q; ++n) e[n - 1] = n * dE;
    return Spectrum{std::move(e)};
}

Spectrum gapped_linear_spectrum(int Q, double dE, double eps12) {
    if (Q < 2 || dE <= 0.0)
        throw invalid_parameter("gapped_linear_spectrum needs Q >= 2, dE > 0");
    if (eps12 <= -dE)
        throw invalid_parameter("gapped_linear_spectrum needs eps12 > -dE");
    std::vector<double> e(Q);
    e[0] = dE;
    for (int n = 2; n <= Q; ++n) e[n - 1] = n * dE + eps12;
    std::sort(e.begin(), e.end());
    return Spectrum{std::move(e)};
}

Spectrum search_spectrum(int Q, double E1, double E2) {
    if (Q < 2) throw invalid_parameter("search_spectrum needs Q >= 2");
    if (E1 >= E2) throw invalid_parameter("search_spectrum needs E1 < E2");
    std::vector<double> e(Q, E2);
    e[0] = E1;
    return Spectrum{std::move(e)};
}

Spectrum random_spacing_spectrum(int Q, double E1,
                                 const SpacingDistribution& dist,
                                 std::uint64_t seed) {
    if (Q < 2) throw invalid_parameter("random_spacing_spectrum needs Q >= 2");
    Rng rng(seed);
    std::vector<double> e(Q);
    e[0] = E1;
    for (int n = 1; n < Q; ++n) e[n] = e[n - 1] + dist.sample(rng);
    return Spectrum{std::move(e)};
}

Spectrum dos_sampled_spectrum(int Q, const DensityOfStates& dos,
                              std::uint64_t seed) {
    if (Q < 2) throw invalid_parameter("dos_sampled_spectrum needs Q >= 2");
    Rng rng(seed);
    std::vector<double> e(Q);
    for (int n = 0; n < Q; ++n) e[n] = dos.sample(rng);
    std::sort(e.begin(), e.end());
    return Spectrum{std::move(e)};
}

Spectrum gue_matrix_spectrum(int Q, std::uint64_t seed) {
    if (Q < 2) throw invalid_parameter("gue_matrix_spectrum needs Q >= 2");
    Rng rng(seed);
    Eigen::MatrixXcd H(Q, Q);
    double sd_diag = 1.0 / std::sqrt(static_cast<double>(Q));
    double sd_off = 1.0 / std::sqrt(2.0 * Q);
    for (int i = 0; i < Q; ++i) {
        H(i, i) = rng.normal(0.0, sd_diag);
        for (int j = i + 1; j < Q; ++j) {
            std::complex<double> v(rng.normal(0.0, sd_off),
                                   rng.normal(0.0, sd_off));
            H(i, j) = v;
            H(j, i) = std::conj(v);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H,
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw numerical_error("gue_matrix_spectrum: diagonalization failed");
    std::vector<double> e(es.eigenvalues().data(),
                          es.eigenvalues().data() + Q);
    std::sort(e.begin(), e.end());
    return Spectrum{std::move(e)};
}

Spectrum rescaled_spectrum(const Spectrum& spec, double E1, double D) {
    if (D <= 0.0) throw invalid_parameter("rescaled_spectrum needs D > 0");
    double old_D = spec.mean_spacing();
    if (old_D <= 0.0)
        throw invalid_parameter("rescaled_spectrum needs a nondegenerate spectrum");
    double alpha = D / old_D;
    std::vector<double> e(spec.energies.size());
    for (std::size_t n = 0; n < e.size(); ++n)
        e[n] = E1 + alpha * (spec.energies[n] - spec.ground());
    return Spectrum{std::move(e)};
}

Spectrum perturbed_spectrum(const Spectrum& spec, double strength,
                            PerturbOrder order, std::uint64_t seed) {
    if (strength < 0.0)
        throw invalid_parameter("perturbed_spectrum needs strength >= 0");
    if (strength == 0.0) return spec;
    int Q = spec.size();
    Rng rng(seed);
    // GOE sample: diagonal N(0, 2/Q), off-diagonal N(0, 1/Q), scaled.
    double sd_diag = strength * std::sqrt(2.0 / Q);
    double sd_off = strength * std::sqrt(1.0 / Q);
    std::vector<double> diag(Q);
    for (int i = 0; i < Q; ++i) diag[i] = rng.normal(0.0, sd_diag);
    std::vector<double> e(Q);
    if (order == PerturbOrder::First) {
        for (int n = 0; n < Q; ++n) e[n] = spec.energies[n] + diag[n];
    } else {
        Eigen::MatrixXd off = Eigen::MatrixXd::Zero(Q, Q);
        for (int i = 0; i < Q; ++i)
            for (int j = i + 1; j < Q; ++j) {
                off(i, j) = rng.normal(0.0, sd_off);
                off(j, i) = off(i, j);
            }
        for (int n = 0; n < Q; ++n) {
            double corr = 0.0;
            for (int m = 0; m < Q; ++m) {
                if (m == n) continue;
                double de = spec.energies[n] - spec.energies[m];
                if (std::abs(de) < 1e-12)
                    throw degenerate_input(
                        "perturbed_spectrum: second order hit a degenerate pair");
                corr += off(n, m) * off(n, m) / de;
            }
            e[n] = spec.energies[n] + diag[n] + corr;
        }
    }
    std::sort(e.begin(), e.end());
    return Spectrum{std::move(e)};
}

Histogram broadened_dos(const Spectrum& spec, double strength,
                        int realizations, int bins, std::uint64_t seed) {
    if (realizations < 1) throw invalid_parameter("broadened_dos: realizations >= 1");
    if (bins < 2) throw invalid_parameter("broadened_dos: bins >= 2");
    double pad = 5.0 * strength + 0.5 * spec.mean_spacing();
    double lo = spec.ground() - pad, hi = spec.top() + pad;
    double width = (hi - lo) / bins;
    Histogram h;
    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) h.edges[b] = lo + b * width;
    h.counts.assign(bins, 0.0);
    for (int r = 0; r < realizations; ++r) {
        Spectrum p = perturbed_spectrum(spec, strength, PerturbOrder::First,
                                        Rng::split(seed, r));
        for (double e : p.energies) {
            int b = static_cast<int>((e - lo) / width);
            if (b >= 0 && b < bins) h.counts[b] += 1.0;
        }
    }
    // normalize to a density integrating to one
    double total = 0.0;
    for (double c : h.counts) total += c;
    if (total > 0.0)
        for (double& c : h.counts) c /= total * width;
    return h;
}

// ---------------------------------------------------------------------------
// Text format

Spectrum read_spectrum(std::istream& in) {
    std::vector<double> e;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double v;
        while (ss >> v) e.push_back(v);
    }
    return make_spectrum(std::move(e));
}

Spectrum read_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_parameter("cannot open spectrum file: " + path);
    return read_spectrum(in);
}

void write_spectrum(std::ostream& out, const Spectrum& spec) {
    char buf[64];
    for (double e : spec.energies) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", e);
        out << buf;
    }
}

void write_spectrum_file(const std::string& path, const Spectrum& spec) {
    std::ofstream out(path);
    if (!out) throw invalid_parameter("cannot open spectrum file: " + path);
    write_spectrum(out, spec);
}

} // namespace rtk
