#include "hyplc/error.hpp"

namespace hyplc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSyntaxError: return "SyntaxError";
    case ErrorKind::kInvalidIdent: return "InvalidIdent";
    case ErrorKind::kDialectMismatch: return "DialectMismatch";
    case ErrorKind::kUnboundVariable: return "UnboundVariable";
    case ErrorKind::kDivisionByZero: return "DivisionByZero";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kNotNormalForm: return "NotNormalForm";
    case ErrorKind::kConflictingEpsilon: return "ConflictingEpsilon";
    case ErrorKind::kMissingEpsilon: return "MissingEpsilon";
    case ErrorKind::kPlantVariableClash: return "PlantVariableClash";
    case ErrorKind::kMissingInput: return "MissingInput";
    case ErrorKind::kSchemaError: return "SchemaError";
    case ErrorKind::kNondeterministicCtrl: return "NondeterministicCtrl";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Error";
}

namespace {

std::string format(ErrorKind kind, const std::string& message, const Location& loc) {
  std::string out;
  if (loc.known()) {
    out += std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": ";
  }
  out += to_string(kind);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string message, Location loc)
    : std::runtime_error(format(kind, message, loc)),
      kind_(kind),
      loc_(loc),
      message_(std::move(message)) {}

}  // namespace hyplc
