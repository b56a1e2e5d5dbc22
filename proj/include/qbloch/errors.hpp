#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qbloch {

/// Base class of every error thrown by the library.
///
/// `kind()` is a stable machine-readable name used by the CLI error JSON.
/// `numerical()` separates numerical failures (exit status 2) from input
/// validation failures (exit status 1).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
  virtual bool numerical() const noexcept { return false; }
};

#define QBLOCH_DECLARE_ERROR(Name, IsNumerical)                       \
  class Name : public Error {                                         \
   public:                                                            \
    using Error::Error;                                               \
    const char* kind() const noexcept override { return #Name; }      \
    bool numerical() const noexcept override { return IsNumerical; }  \
  };

QBLOCH_DECLARE_ERROR(AdmissibilityError, false)
QBLOCH_DECLARE_ERROR(PolytopeError, false)
QBLOCH_DECLARE_ERROR(DomainError, false)
QBLOCH_DECLARE_ERROR(OddShiftError, false)
QBLOCH_DECLARE_ERROR(DegenerateTupleError, false)
QBLOCH_DECLARE_ERROR(DegenerateFamilyError, false)
QBLOCH_DECLARE_ERROR(ConfigError, false)
QBLOCH_DECLARE_ERROR(NotOnVarietyError, false)
QBLOCH_DECLARE_ERROR(BranchParityError, true)
QBLOCH_DECLARE_ERROR(InsufficientDataError, true)
QBLOCH_DECLARE_ERROR(SingularSystemError, true)
QBLOCH_DECLARE_ERROR(ConvergenceError, true)

#undef QBLOCH_DECLARE_ERROR

/// One violated invariant of an input document, located by JSON pointer.
struct SchemaIssue {
  std::string pointer;
  std::string message;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<SchemaIssue> issues);
  const char* kind() const noexcept override { return "SchemaError"; }
  const std::vector<SchemaIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<SchemaIssue> issues_;
};

}  // namespace qbloch
