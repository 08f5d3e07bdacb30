#ifndef BELLCERT_ERRORS_HPP
#define BELLCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bellcert {

// Bad caller input: shape/dimension mismatches, out-of-range parameters,
// unparseable or invalid files. CLI maps these to exit code 1.
struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerical breakdown inside an otherwise valid computation. CLI exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonSquareError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct NonHermitianError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct DimensionMismatchError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct ShapeMismatchError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct NotAStateError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct UnknownNameError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct TooLargeToEnumerateError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct BadRankError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct Eps1OutOfRangeError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct GammaOutOfRangeError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct NotFullSchmidtRankError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct ProportionalStatesError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct BadSpecError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct ParseError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct ValidationError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};

struct SingularMatrixError : NumericalError {
  using NumericalError::NumericalError;
};
struct ConvergenceError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace bellcert

#endif
