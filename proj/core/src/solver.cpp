#include "rtk/solver.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "rtk/analytic.hpp"
#include "rtk/errors.hpp"

namespace rtk {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

SubspaceMatrices prefix(const SubspaceMatrices& mats, int dim) {
    SubspaceMatrices out;
    out.H = mats.H.topLeftCorner(dim, dim);
    out.S = mats.S.topLeftCorner(dim, dim);
    out.grid.times.assign(mats.grid.times.begin(),
                          mats.grid.times.begin() + dim);
    return out;
}

} // namespace

TimeGrid make_grid(const GridSpec& spec) {
    if (spec.t1 <= 0.0) throw invalid_parameter("make_grid: t1 must be > 0");
    if (spec.n_steps < 1) throw invalid_parameter("make_grid: N_T must be >= 1");
    if (spec.kind == GridKind::Adaptive && spec.gamma_t <= 0.0)
        throw invalid_parameter("make_grid: gamma_t must be > 0");
    std::vector<double> t(spec.n_steps + 1, 0.0);
    double step = spec.t1;
    for (int j = 1; j <= spec.n_steps; ++j) {
        t[j] = t[j - 1] + step;
        if (spec.kind == GridKind::Adaptive) step *= spec.gamma_t;
    }
    return make_time_grid(std::move(t));
}

double t1_from_kappa(double kappa, const Spectrum& spec) {
    if (kappa <= 0.0) throw invalid_parameter("kappa must be > 0");
    return kappa * kTwoPi / (spec.size() * spec.mean_spacing());
}

double kappa_from_t1(double t1, const Spectrum& spec) {
    return t1 * spec.size() * spec.mean_spacing() / kTwoPi;
}

RunTrace vqpe_run(const Spectrum& spec, const StateVector& state,
                  const GridSpec& grid, const RunOptions& opts) {
    if (opts.eps_tol < 0.0) throw invalid_parameter("vqpe_run: eps_tol >= 0");
    TimeGrid full = make_grid(grid);
    SubspaceMatrices mats = assemble(spec, state, full);
    SolveOptions sopts{opts.s_sv_rel, false};

    RunTrace trace;
    double e_prev = rayleigh_quotient(state, spec);
    for (int j = 1; j <= full.steps(); ++j) {
        auto t0 = std::chrono::steady_clock::now();
        SolveResult res = solve(prefix(mats, j + 1), sopts);
        double e_g = res.ritz_values.front();
        double eps = std::abs(e_prev - e_g);
        if (opts.relative_tol) eps /= std::max(1e-300, std::abs(e_g));
        trace.steps.push_back({j, full.times[j], e_g, e_g - spec.ground(),
                               res.retained_rank, seconds_since(t0)});
        e_prev = e_g;
        if (opts.eps_tol > 0.0 && eps <= opts.eps_tol) {
            trace.status = RunStatus::Converged;
            return trace;
        }
    }
    trace.status = RunStatus::Exhausted;
    return trace;
}

RunTrace ivqpe_run(const Spectrum& spec, const StateVector& state,
                   const GridSpec& grid, int n_inner, const RunOptions& opts) {
    if (n_inner < 1) throw invalid_parameter("ivqpe_run: N_I must be >= 1");
    TimeGrid full = make_grid(grid);
    SolveOptions sopts{opts.s_sv_rel, false};

    RunTrace trace;
    StateVector current = state;
    double e_prev = rayleigh_quotient(current, spec);
    for (int j = 1; j <= full.steps(); ++j) {
        auto t0 = std::chrono::steady_clock::now();
        double dt = full.times[j] - full.times[j - 1];
        std::vector<double> inner(n_inner + 1, 0.0);
        for (int k = 1; k <= n_inner; ++k) inner[k] = dt * k / n_inner;
        TimeGrid block = make_time_grid(std::move(inner));
        SubspaceMatrices mats = assemble(spec, current, block);
        SolveResult res = solve(mats, sopts);
        current = ritz_state(res, 0, spec, current, block);
        double e_g = res.ritz_values.front();
        double eps = std::abs(e_prev - e_g);
        if (opts.relative_tol) eps /= std::max(1e-300, std::abs(e_g));
        trace.steps.push_back({j, full.times[j], e_g, e_g - spec.ground(),
                               res.retained_rank, seconds_since(t0)});
        e_prev = e_g;
        if (opts.eps_tol > 0.0 && eps <= opts.eps_tol) {
            trace.status = RunStatus::Converged;
            return trace;
        }
    }
    trace.status = RunStatus::Exhausted;
    return trace;
}

ScanResult scan(const Spectrum& spec, const StateVector& state,
                const std::vector<double>& kappa_range,
                const std::vector<double>& gamma_range, int n_steps,
                RunMode mode, const RunOptions& opts, int threads) {
    if (kappa_range.empty() || gamma_range.empty())
        throw invalid_parameter("scan: ranges must be nonempty");
    ScanResult result;
    result.kappas = kappa_range;
    result.gammas = gamma_range;
    const int nk = static_cast<int>(kappa_range.size());
    const int ng = static_cast<int>(gamma_range.size());
    result.delta_e1.assign(nk, std::vector<double>(ng, 0.0));

    auto cell = [&](int ik, int ig) {
        GridSpec g;
        g.kind = gamma_range[ig] == 1.0 ? GridKind::Linear : GridKind::Adaptive;
        g.t1 = t1_from_kappa(kappa_range[ik], spec);
        g.gamma_t = gamma_range[ig];
        g.n_steps = n_steps;
        RunTrace trace = mode == RunMode::VQPE
                             ? vqpe_run(spec, state, g, opts)
                             : ivqpe_run(spec, state, g, 1, opts);
        result.delta_e1[ik][ig] = trace.final_error();
    };

    const int total = nk * ng;
    int workers = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, total));
    if (workers == 1) {
        for (int i = 0; i < total; ++i) cell(i / ng, i % ng);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < total;
                     i = next.fetch_add(1))
                    cell(i / ng, i % ng);
            });
        for (auto& th : pool) th.join();
    }

    result.min_delta_e1 = result.delta_e1[0][0];
    for (int ik = 0; ik < nk; ++ik)
        for (int ig = 0; ig < ng; ++ig)
            if (result.delta_e1[ik][ig] < result.min_delta_e1) {
                result.min_delta_e1 = result.delta_e1[ik][ig];
                result.argmin_kappa = ik;
                result.argmin_gamma = ig;
            }
    return result;
}

double optimal_kappa(const Spectrum& spec, const StateVector& state,
                     int n_steps, double kappa_max, const RunOptions& opts) {
    auto error_at = [&](double kappa) {
        GridSpec g{GridKind::Linear, t1_from_kappa(kappa, spec), 1.0, n_steps};
        return vqpe_run(spec, state, g, opts).final_error();
    };
    const int coarse = 64;
    int best = 1;
    double best_err = std::numeric_limits<double>::infinity();
    std::vector<double> ks(coarse + 1), errs(coarse + 1);
    for (int i = 1; i <= coarse; ++i) {
        ks[i] = kappa_max * i / coarse;
        errs[i] = error_at(ks[i]);
        if (errs[i] < best_err) {
            best_err = errs[i];
            best = i;
        }
    }
    double a = ks[std::max(1, best - 1)];
    double b = ks[std::min(coarse, best + 1)];
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = error_at(x1), f2 = error_at(x2);
    for (int it = 0; it < 40 && (b - a) > 1e-6 * kappa_max; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = error_at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = error_at(x2);
        }
    }
    return 0.5 * (a + b);
}

double lcu_success(const StateVector& state, const Spectrum& spec, double E_x,
                   double t1) {
    if (t1 <= 0.0) throw invalid_parameter("lcu_success: t1 must be > 0");
    if (state.size() != spec.size())
        throw dimension_mismatch("lcu_success: size mismatch");
    double p = 0.0;
    for (int n = 0; n < spec.size(); ++n) {
        double s = std::sin(0.5 * (E_x - spec.energies[n]) * t1);
        p += std::norm(state.amplitudes[n]) * s * s;
    }
    return p;
}

LcuTrace lcu_cumulative(const StateVector& state, const Spectrum& spec,
                        const GridSpec& grid, double fixed_E_x) {
    TimeGrid full = make_grid(grid);
    LcuTrace trace;
    StateVector current = state;
    for (int j = 1; j <= full.steps(); ++j) {
        double dt = full.times[j] - full.times[j - 1];
        double E_x = fixed_E_x;
        if (std::isnan(E_x)) {
            double x = suppression_center(spec, current);
            E_x = spec.ground() + x * spec.range();
        }
        double p = lcu_success(current, spec, E_x, dt);
        trace.step_probabilities.push_back(p);
        trace.cumulative *= p;
        // post-selection update on success
        double norm2 = 0.0;
        for (int n = 0; n < spec.size(); ++n) {
            double s = std::sin(0.5 * (E_x - spec.energies[n]) * dt);
            current.amplitudes[n] *= s;
            norm2 += std::norm(current.amplitudes[n]);
        }
        if (norm2 <= 0.0)
            throw zero_vector("lcu_cumulative: step annihilated the state");
        current = normalized(std::move(current));
    }
    return trace;
}

} // namespace rtk
