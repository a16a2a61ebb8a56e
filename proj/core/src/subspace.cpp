#include "rtk/subspace.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "rtk/errors.hpp"

namespace rtk {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

cplx unit_phase(double energy, double t) {
    double phase = std::remainder(energy * t, kTwoPi);
    return cplx(std::cos(phase), -std::sin(phase));
}
} // namespace

bool TimeGrid::is_linear(double tol) const {
    if (times.size() < 3) return true;
    double dt = times[1] - times[0];
    for (std::size_t j = 1; j < times.size(); ++j)
        if (std::abs(times[j] - j * dt) > tol * std::max(1.0, std::abs(times[j])))
            return false;
    return true;
}

TimeGrid make_time_grid(std::vector<double> times) {
    if (times.empty() || times.front() != 0.0)
        throw invalid_parameter("time grid must start at t_0 = 0");
    for (std::size_t j = 0; j < times.size(); ++j) {
        if (!std::isfinite(times[j]))
            throw invalid_parameter("time grid entries must be finite");
        if (j > 0 && times[j] <= times[j - 1])
            throw invalid_parameter("time grid must be strictly increasing");
    }
    return TimeGrid{std::move(times)};
}

SubspaceMatrices assemble(const Spectrum& spec, const StateVector& state,
                          const TimeGrid& grid) {
    if (spec.size() != state.size())
        throw dimension_mismatch("assemble: state/spectrum size mismatch");
    const int m = grid.dim();
    const int Q = spec.size();
    std::vector<double> p = population(state);

    auto lag_sums = [&](double tau, cplx& s, cplx& h) {
        s = h = 0.0;
        for (int n = 0; n < Q; ++n) {
            cplx ph = p[n] * unit_phase(spec.energies[n], tau);
            s += ph;
            h += spec.energies[n] * ph;
        }
    };

    SubspaceMatrices out;
    out.grid = grid;
    out.H.resize(m, m);
    out.S.resize(m, m);

    double rq = 0.0;
    for (int n = 0; n < Q; ++n) rq += spec.energies[n] * p[n];

    if (grid.is_linear()) {
        // entries depend only on k - j; one lag per diagonal
        std::vector<cplx> s_lag(m), h_lag(m);
        for (int d = 1; d < m; ++d)
            lag_sums(grid.times[d], s_lag[d], h_lag[d]);
        for (int j = 0; j < m; ++j) {
            out.S(j, j) = 1.0;
            out.H(j, j) = rq;
            for (int k = j + 1; k < m; ++k) {
                out.S(j, k) = s_lag[k - j];
                out.H(j, k) = h_lag[k - j];
                out.S(k, j) = std::conj(s_lag[k - j]);
                out.H(k, j) = std::conj(h_lag[k - j]);
            }
        }
    } else {
        for (int j = 0; j < m; ++j) {
            out.S(j, j) = 1.0;
            out.H(j, j) = rq;
            for (int k = j + 1; k < m; ++k) {
                cplx s, h;
                lag_sums(grid.times[k] - grid.times[j], s, h);
                out.S(j, k) = s;
                out.H(j, k) = h;
                out.S(k, j) = std::conj(s);
                out.H(k, j) = std::conj(h);
            }
        }
    }
    return out;
}

SolveResult solve(const SubspaceMatrices& mats, const SolveOptions& opts) {
    if (opts.s_sv < 0.0) throw invalid_parameter("solve: s_sv must be >= 0");
    const int m = static_cast<int>(mats.S.rows());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_s(mats.S);
    if (es_s.info() != Eigen::Success)
        throw numerical_error("solve: overlap eigendecomposition failed");
    const auto& sv = es_s.eigenvalues(); // ascending
    double s_max = sv(m - 1);
    if (s_max <= 0.0) throw empty_subspace("solve: overlap matrix has no mass");
    double threshold = opts.absolute ? opts.s_sv : opts.s_sv * s_max;

    SolveResult res;
    std::vector<int> keep;
    for (int i = 0; i < m; ++i) {
        if (sv(i) >= threshold && sv(i) > 0.0)
            keep.push_back(i);
        else
            res.discarded_singular_values.push_back(sv(i));
    }
    if (keep.empty())
        throw empty_subspace("solve: all singular values below threshold");

    const int r = static_cast<int>(keep.size());
    Eigen::MatrixXcd B(m, r); // canonical (Loewdin-style) orthogonalizer
    for (int i = 0; i < r; ++i)
        B.col(i) = es_s.eigenvectors().col(keep[i]) / std::sqrt(sv(keep[i]));

    Eigen::MatrixXcd A = B.adjoint() * mats.H * B;
    A = 0.5 * (A + A.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_a(A);
    if (es_a.info() != Eigen::Success)
        throw numerical_error("solve: conjugated eigenproblem failed");

    res.retained_rank = r;
    res.ritz_values.assign(es_a.eigenvalues().data(),
                           es_a.eigenvalues().data() + r);
    res.coefficient_vectors = B * es_a.eigenvectors();
    return res;
}

StateVector ritz_state(const SolveResult& result, int which,
                       const Spectrum& spec, const StateVector& state,
                       const TimeGrid& grid) {
    if (which < 0 || which >= result.retained_rank)
        throw index_out_of_range("ritz_state: index exceeds retained rank");
    const int Q = spec.size();
    if (Q != state.size())
        throw dimension_mismatch("ritz_state: state/spectrum size mismatch");
    StateVector out;
    out.amplitudes.assign(Q, cplx(0.0, 0.0));
    for (int n = 0; n < Q; ++n) {
        cplx filter = 0.0;
        for (int j = 0; j < grid.dim(); ++j)
            filter += result.coefficient_vectors(j, which) *
                      unit_phase(spec.energies[n], grid.times[j]);
        out.amplitudes[n] = state.amplitudes[n] * filter;
    }
    return normalized(std::move(out));
}

std::string matrices_to_json(const SubspaceMatrices& mats, double s_sv) {
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    auto matrix = [&](const Eigen::MatrixXcd& M) {
        std::string s = "[";
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j) {
                if (i + j > 0) s += ",";
                s += "[" + num(M(i, j).real()) + "," + num(M(i, j).imag()) + "]";
            }
        return s + "]";
    };
    std::string grid = "[";
    for (std::size_t j = 0; j < mats.grid.times.size(); ++j) {
        if (j > 0) grid += ",";
        grid += num(mats.grid.times[j]);
    }
    grid += "]";
    std::ostringstream out;
    out << "{\"dim\":" << mats.grid.dim() << ",\"grid\":" << grid
        << ",\"s_sv\":" << num(s_sv) << ",\"H\":" << matrix(mats.H)
        << ",\"S\":" << matrix(mats.S) << "}";
    return out.str();
}

} // namespace rtk
