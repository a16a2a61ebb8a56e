#pragma once

#include <stdexcept>
#include <string>

namespace rtk {

// Validation failures: bad sizes, parameters out of range, malformed input.
struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct dimension_mismatch : invalid_parameter {
    using invalid_parameter::invalid_parameter;
};

struct index_out_of_range : invalid_parameter {
    using invalid_parameter::invalid_parameter;
};

// Numerical failures: degenerate inputs, empty subspaces, nonconvergence.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_input : numerical_error {
    using numerical_error::numerical_error;
};

struct empty_subspace : numerical_error {
    using numerical_error::numerical_error;
};

struct zero_vector : numerical_error {
    using numerical_error::numerical_error;
};

} // namespace rtk
