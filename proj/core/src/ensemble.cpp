#include "rtk/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "rtk/errors.hpp"

namespace rtk {

Spectrum realize(const EnsembleSpec& gen, std::uint64_t seed) {
    switch (gen.kind) {
    case EnsembleSpec::Kind::Spacing:
        return random_spacing_spectrum(gen.Q, gen.E1, gen.dist, seed);
    case EnsembleSpec::Kind::Dos: {
        Spectrum s = dos_sampled_spectrum(gen.Q, gen.dos, seed);
        return gen.rescale ? rescaled_spectrum(s, gen.E1, gen.D) : s;
    }
    case EnsembleSpec::Kind::GueMatrix: {
        Spectrum s = gue_matrix_spectrum(gen.Q, seed);
        return gen.rescale ? rescaled_spectrum(s, gen.E1, gen.D) : s;
    }
    }
    throw invalid_parameter("realize: unknown ensemble kind");
}

Spectrum effective_mean_spectrum(const SpacingDistribution& dist, int Q,
                                 double E1) {
    if (Q < 2) throw invalid_parameter("effective_mean_spectrum: Q >= 2");
    std::vector<double> e(Q);
    for (int n = 0; n < Q; ++n) e[n] = E1 + n * dist.mean;
    return make_spectrum(std::move(e));
}

Spectrum effective_mean_spectrum(const EnsembleSpec& gen) {
    if (gen.kind == EnsembleSpec::Kind::Spacing)
        return effective_mean_spectrum(gen.dist, gen.Q, gen.E1);
    if (!gen.rescale)
        throw invalid_parameter(
            "effective_mean_spectrum: unscaled ensembles have no target scale");
    std::vector<double> e(gen.Q);
    for (int n = 0; n < gen.Q; ++n) e[n] = gen.E1 + n * gen.D;
    return make_spectrum(std::move(e));
}

Envelope convergence_envelope(const EnsembleSpec& gen, StatePolicy policy,
                              const GridSpec& grid, int realizations,
                              std::uint64_t base_seed, const RunOptions& opts,
                              int threads) {
    if (realizations < 1)
        throw invalid_parameter("convergence_envelope: realizations >= 1");
    RunOptions run_opts = opts;
    run_opts.eps_tol = 0.0; // full-length traces only

    std::vector<std::vector<double>> errors(realizations);
    std::vector<char> ok(realizations, 0);

    auto one = [&](int r) {
        try {
            Spectrum spec =
                realize(gen, Rng::split(base_seed, 2 * std::uint64_t(r)));
            StateVector state =
                policy == StatePolicy::Uniform
                    ? uniform_state(spec.size())
                    : random_state(spec.size(),
                                   Rng::split(base_seed,
                                              2 * std::uint64_t(r) + 1));
            RunTrace trace = vqpe_run(spec, state, grid, run_opts);
            std::vector<double> errs(trace.steps.size());
            for (size_t j = 0; j < trace.steps.size(); ++j)
                errs[j] = trace.steps[j].delta_e1;
            errors[r] = std::move(errs);
            ok[r] = 1;
        } catch (const std::exception&) {
            ok[r] = 0;
        }
    };

    int workers = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, realizations));
    if (workers == 1) {
        for (int r = 0; r < realizations; ++r) one(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < realizations;
                     r = next.fetch_add(1))
                    one(r);
            });
        for (auto& th : pool) th.join();
    }

    Envelope env;
    env.base_seed = base_seed;
    const int nt = grid.n_steps;
    env.steps.resize(nt);
    env.min_err.assign(nt, 0.0);
    env.max_err.assign(nt, 0.0);
    env.mean_err.assign(nt, 0.0);
    env.std_err.assign(nt, 0.0);
    for (int j = 0; j < nt; ++j) env.steps[j] = j + 1;

    // serial aggregation in realization order keeps the result independent of
    // the thread schedule
    for (int r = 0; r < realizations; ++r) {
        if (!ok[r]) {
            ++env.failures;
            continue;
        }
        const auto& errs = errors[r];
        for (int j = 0; j < nt; ++j) {
            double e = errs[j];
            if (env.realizations == 0) {
                env.min_err[j] = env.max_err[j] = e;
            } else {
                env.min_err[j] = std::min(env.min_err[j], e);
                env.max_err[j] = std::max(env.max_err[j], e);
            }
            env.mean_err[j] += e;
            env.std_err[j] += e * e;
        }
        ++env.realizations;
    }
    if (env.realizations == 0)
        throw numerical_error("convergence_envelope: every realization failed");
    for (int j = 0; j < nt; ++j) {
        env.mean_err[j] /= env.realizations;
        double var =
            env.std_err[j] / env.realizations - env.mean_err[j] * env.mean_err[j];
        env.std_err[j] = std::sqrt(std::max(0.0, var));
    }

    Spectrum bench_spec = effective_mean_spectrum(gen);
    RunTrace bench =
        vqpe_run(bench_spec, uniform_state(bench_spec.size()), grid, run_opts);
    env.benchmark.resize(nt);
    for (int j = 0; j < nt; ++j) env.benchmark[j] = bench.steps[j].delta_e1;
    return env;
}

JensenGap jensen_gap(const SpacingDistribution& dist, int n, double dt,
                     int samples, std::uint64_t seed) {
    if (n < 1) throw invalid_parameter("jensen_gap: n >= 1");
    if (samples < 1) throw invalid_parameter("jensen_gap: samples >= 1");

    JensenGap out;
    double scale = dt * dist.mean;
    out.rhs = dist.eta() * (n - 1) * scale * scale / std::sqrt(2.0);
    if (n == 1) return out; // E_1 is fixed: no gap by construction

    // MC average of e^{-i X dt} with X the sum of n-1 i.i.d. spacings
    Rng rng(seed);
    double sum_re = 0.0, sum_im = 0.0, sum_re2 = 0.0, sum_im2 = 0.0;
    for (int s = 0; s < samples; ++s) {
        double x = 0.0;
        for (int k = 1; k < n; ++k) x += dist.sample(rng);
        double re = std::cos(x * dt), im = -std::sin(x * dt);
        sum_re += re;
        sum_im += im;
        sum_re2 += re * re;
        sum_im2 += im * im;
    }
    double mre = sum_re / samples, mim = sum_im / samples;
    double eff = (n - 1) * dist.mean * dt;
    out.lhs = std::hypot(mre - std::cos(eff), mim + std::sin(eff));
    double var_re = std::max(0.0, sum_re2 / samples - mre * mre);
    double var_im = std::max(0.0, sum_im2 / samples - mim * mim);
    out.mc_error = std::sqrt((var_re + var_im) / samples);
    return out;
}

SpacingSummary spacing_diagnostics(std::vector<double> samples,
                                   const SpacingDistribution& dist) {
    const int n = static_cast<int>(samples.size());
    if (n < 100)
        throw invalid_parameter("spacing_diagnostics: need >= 100 samples");

    SpacingSummary out;
    for (double s : samples) out.mean += s;
    out.mean /= n;
    for (double s : samples) out.variance += (s - out.mean) * (s - out.mean);
    out.variance /= n;
    out.eta_hat = out.mean == 0.0 ? 0.0 : out.variance / (out.mean * out.mean);

    std::sort(samples.begin(), samples.end());
    for (int i = 0; i < n; ++i) {
        double F = dist.cdf(samples[i]);
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        out.ks_statistic =
            std::max({out.ks_statistic, std::abs(F - lo), std::abs(F - hi)});
    }
    // alpha = 0.01 asymptotic critical value
    out.ks_pass = out.ks_statistic <= 1.628 / std::sqrt(double(n));
    return out;
}

} // namespace rtk
