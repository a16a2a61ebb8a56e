#include "rtk/state.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rtk/errors.hpp"
#include "rtk/rng.hpp"

namespace rtk {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const cplx& z : amplitudes) s += std::norm(z);
    return std::sqrt(s);
}

StateVector normalized(StateVector state) {
    double n = state.norm();
    if (n == 0.0) throw zero_vector("cannot normalize the zero vector");
    for (cplx& z : state.amplitudes) z /= n;
    return state;
}

StateVector uniform_state(int Q) {
    if (Q < 1) throw invalid_parameter("uniform_state needs Q >= 1");
    double a = 1.0 / std::sqrt(static_cast<double>(Q));
    return StateVector{std::vector<cplx>(Q, cplx(a, 0.0))};
}

StateVector basis_state(int Q, int n) {
    if (Q < 1) throw invalid_parameter("basis_state needs Q >= 1");
    if (n < 1 || n > Q)
        throw index_out_of_range("basis_state index out of range");
    StateVector s{std::vector<cplx>(Q, cplx(0.0, 0.0))};
    s.amplitudes[n - 1] = 1.0;
    return s;
}

StateVector concentrated_state(int Q, const std::map<int, double>& weights) {
    if (Q < 1) throw invalid_parameter("concentrated_state needs Q >= 1");
    if (weights.empty())
        throw invalid_parameter("concentrated_state needs nonempty weights");
    double total = 0.0;
    for (auto& [n, w] : weights) {
        if (n < 1 || n > Q)
            throw index_out_of_range("concentrated_state index out of range");
        if (w < 0.0)
            throw invalid_parameter("concentrated_state weights must be >= 0");
        total += w;
    }
    if (total <= 0.0)
        throw invalid_parameter("concentrated_state needs a positive weight");
    StateVector s{std::vector<cplx>(Q, cplx(0.0, 0.0))};
    for (auto& [n, w] : weights)
        s.amplitudes[n - 1] = std::sqrt(w / total);
    return s;
}

StateVector random_state(int Q, std::uint64_t seed) {
    if (Q < 1) throw invalid_parameter("random_state needs Q >= 1");
    Rng rng(seed);
    StateVector s;
    s.amplitudes.resize(Q);
    for (int n = 0; n < Q; ++n) s.amplitudes[n] = rng.uniform();
    return normalized(std::move(s));
}

StateVector evolve(const StateVector& state, const Spectrum& spec, double t) {
    if (state.size() != spec.size())
        throw dimension_mismatch("evolve: state/spectrum size mismatch");
    if (!std::isfinite(t)) throw invalid_parameter("evolve: t must be finite");
    StateVector out = state;
    for (int n = 0; n < state.size(); ++n) {
        double phase = std::remainder(spec.energies[n] * t, kTwoPi);
        out.amplitudes[n] *= cplx(std::cos(phase), -std::sin(phase));
    }
    return out;
}

std::vector<double> population(const StateVector& state) {
    std::vector<double> p(state.size());
    for (int n = 0; n < state.size(); ++n)
        p[n] = std::norm(state.amplitudes[n]);
    return p;
}

double rayleigh_quotient(const StateVector& state, const Spectrum& spec) {
    if (state.size() != spec.size())
        throw dimension_mismatch("rayleigh_quotient: size mismatch");
    double num = 0.0, den = 0.0;
    for (int n = 0; n < state.size(); ++n) {
        double p = std::norm(state.amplitudes[n]);
        num += spec.energies[n] * p;
        den += p;
    }
    if (den == 0.0) throw zero_vector("rayleigh_quotient of the zero vector");
    return num / den;
}

StateVector read_state(std::istream& in) {
    std::vector<cplx> amps;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double re, im;
        if (ss >> re >> im) amps.push_back(cplx(re, im));
    }
    if (amps.empty()) throw invalid_parameter("state file holds no amplitudes");
    StateVector s{std::move(amps)};
    double n = s.norm();
    if (std::abs(n - 1.0) > 1e-6)
        std::cerr << "warning: state norm " << n << " deviates from 1, renormalizing\n";
    return normalized(std::move(s));
}

StateVector read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_parameter("cannot open state file: " + path);
    return read_state(in);
}

void write_state(std::ostream& out, const StateVector& state) {
    char buf[96];
    for (const cplx& z : state.amplitudes) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", z.real(), z.imag());
        out << buf;
    }
}

void write_state_file(const std::string& path, const StateVector& state) {
    std::ofstream out(path);
    if (!out) throw invalid_parameter("cannot open state file: " + path);
    write_state(out, state);
}

} // namespace rtk
