#ifndef PTAA_COMMON_HPP
#define PTAA_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace ptaa {

using cdouble = std::complex<double>;

/// Numerical failure in a solver or integrator (never silent garbage).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Eigensolver failed to converge or was handed a non-finite matrix.
struct EigError : NumericalError {
    using NumericalError::NumericalError;
};

/// Intensity exceeded the overflow guard during propagation.
struct OverflowError : NumericalError {
    using NumericalError::NumericalError;
};

/// Bad command line: unknown flag, out-of-range value, missing option.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Output path cannot be opened or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ptaa

#endif
