#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyplc {

/// 1-based source position; line 0 means "no position available".
struct Location {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
};

enum class ErrorKind {
  kSyntaxError,
  kInvalidIdent,
  kDialectMismatch,
  kUnboundVariable,
  kDivisionByZero,
  kDomainError,
  kNotNormalForm,
  kConflictingEpsilon,
  kMissingEpsilon,
  kPlantVariableClash,
  kMissingInput,
  kSchemaError,
  kNondeterministicCtrl,
  kInvalidArgument,
  kIoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure surfaced by the library. The kind doubles as the rule name
/// printed in CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, Location loc = {});

  ErrorKind kind() const { return kind_; }
  const Location& location() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  Location loc_;
  std::string message_;
};

}  // namespace hyplc
