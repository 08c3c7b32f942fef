#pragma once

#include <stdexcept>
#include <string>

namespace germcalc {

/// Machine-readable failure categories. The CLI prints the category name and
/// exits 1 for domain errors, 2 for usage errors.
enum class ErrorKind {
  DimensionMismatch,
  BaseMismatch,
  OrderTooLow,
  DuplicateBasePoints,
  DivisionNotDefined,
  NotDeramifiable,
  ImplicitNotApplicable,
  NotABlowDown,
  NonRationalExponential,
  SingularSystem,
  RelationNotSatisfied,
  UnboundGerm,
  ParseError,
  BadArgument,
};

const char* error_kind_name(ErrorKind k);

class CalcError : public std::runtime_error {
public:
  CalcError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  const char* kind_name() const { return error_kind_name(kind_); }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw CalcError(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

}  // namespace germcalc
