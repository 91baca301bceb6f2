#pragma once

#include <stdexcept>
#include <string>

namespace faltings {

// Base of every error the library raises. `kind()` is a stable short name
// used in reports; the CLI maps the three families below onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Numeric failure: the computation could not reach the requested accuracy.
class NumericError : public Error {
  using Error::Error;
};

// Input violates a mathematical precondition of the operation.
class PreconditionError : public Error {
  using Error::Error;
};

// Malformed user input (polynomial text, corpus lines, unknown identifiers).
class InputError : public Error {
  using Error::Error;
};

#define FALTINGS_DEFINE_ERROR(Name, Base) \
  struct Name : Base {                    \
    explicit Name(const std::string& w) : Base(#Name, w) {} \
  };

FALTINGS_DEFINE_ERROR(PrecisionExhausted, NumericError)
FALTINGS_DEFINE_ERROR(NoConvergence, NumericError)
FALTINGS_DEFINE_ERROR(InsufficientPrecision, NumericError)

FALTINGS_DEFINE_ERROR(UnsupportedArgument, PreconditionError)
FALTINGS_DEFINE_ERROR(DomainTooLow, PreconditionError)
FALTINGS_DEFINE_ERROR(OutOfRange, PreconditionError)
FALTINGS_DEFINE_ERROR(NegativeInput, PreconditionError)
FALTINGS_DEFINE_ERROR(NotSquarefree, PreconditionError)
FALTINGS_DEFINE_ERROR(Reducible, PreconditionError)
FALTINGS_DEFINE_ERROR(IrreducibilityUnknown, PreconditionError)
FALTINGS_DEFINE_ERROR(BadCongruence, PreconditionError)
FALTINGS_DEFINE_ERROR(NotPrime, PreconditionError)
FALTINGS_DEFINE_ERROR(NotUnimodal, NumericError)

FALTINGS_DEFINE_ERROR(ParseError, InputError)
FALTINGS_DEFINE_ERROR(NonIntegerCoefficient, InputError)
FALTINGS_DEFINE_ERROR(ZeroPolynomial, InputError)
FALTINGS_DEFINE_ERROR(UnknownLemma, InputError)
FALTINGS_DEFINE_ERROR(InvalidContext, InputError)

#undef FALTINGS_DEFINE_ERROR

}  // namespace faltings
