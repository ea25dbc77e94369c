#pragma once

#include <stdexcept>
#include <string>

namespace liqsched {

/// Bad input: wrong dimensions, out-of-range indices, malformed files.
/// The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs are well formed but the model is degenerate at them.
/// The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LIQSCHED_DEFINE_ERROR(Name, Base) \
  class Name : public Base {              \
   public:                                \
    using Base::Base;                     \
  }

LIQSCHED_DEFINE_ERROR(DimensionError, ValidationError);
LIQSCHED_DEFINE_ERROR(IndexOutOfRange, ValidationError);
LIQSCHED_DEFINE_ERROR(InvalidStepCount, ValidationError);
LIQSCHED_DEFINE_ERROR(InvalidTau, ValidationError);
LIQSCHED_DEFINE_ERROR(ZeroNotional, ValidationError);
LIQSCHED_DEFINE_ERROR(UnsupportedKind, ValidationError);

LIQSCHED_DEFINE_ERROR(NotPositiveDefinite, NumericalError);
LIQSCHED_DEFINE_ERROR(DegenerateVolatility, NumericalError);
LIQSCHED_DEFINE_ERROR(DegenerateRisk, NumericalError);
LIQSCHED_DEFINE_ERROR(DegenerateMarket, NumericalError);
LIQSCHED_DEFINE_ERROR(NoInteriorMinimum, NumericalError);

#undef LIQSCHED_DEFINE_ERROR

}  // namespace liqsched
