#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rtk/spectrum.hpp"

namespace rtk {

using cplx = std::complex<double>;

/// Normalized amplitudes z_n of a state expanded in the eigenbasis.
struct StateVector {
    std::vector<cplx> amplitudes;

    int size() const { return static_cast<int>(amplitudes.size()); }
    double norm() const;
};

StateVector uniform_state(int Q);
StateVector basis_state(int Q, int n); // 1-based index
/// Real nonnegative amplitudes proportional to sqrt(weight); 1-based keys.
StateVector concentrated_state(int Q, const std::map<int, double>& weights);
/// i.i.d. U[0,1] draws, normalized; deterministic per seed.
StateVector random_state(int Q, std::uint64_t seed);

StateVector normalized(StateVector state);

/// z_n -> exp(-i E_n t) z_n. Phases are argument-reduced mod 2pi so large
/// adaptive-grid times do not lose accuracy.
StateVector evolve(const StateVector& state, const Spectrum& spec, double t);

std::vector<double> population(const StateVector& state);
double rayleigh_quotient(const StateVector& state, const Spectrum& spec);

// Text format: one "re im" pair per line, '#' comments; renormalized on read.
StateVector read_state(std::istream& in);
StateVector read_state_file(const std::string& path);
void write_state(std::ostream& out, const StateVector& state);
void write_state_file(const std::string& path, const StateVector& state);

} // namespace rtk
