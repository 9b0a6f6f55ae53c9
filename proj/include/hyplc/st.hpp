#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyplc/program.hpp"

namespace hyplc {

enum class VarKind { kInput, kOutput, kLocal, kExternal };
enum class StType { kLReal, kReal, kBool };

struct StVarDecl {
  Ident name;
  StType type;
  friend bool operator==(const StVarDecl&, const StVarDecl&) = default;
};

struct StVarBlock {
  VarKind kind;
  std::vector<StVarDecl> decls;
  friend bool operator==(const StVarBlock&, const StVarBlock&) = default;
};

/// CONFIGURATION / RESOURCE / TASK section for a single task.
struct StConfig {
  Ident config_name{"Config0"};
  Ident resource_name{"Res0"};
  Ident resource_target{"PLC"};
  Ident task_name{"Main"};
  Ident program_instance{"Inst0"};
  double interval = 1.0;  // seconds, > 0
  int priority = 0;
  friend bool operator==(const StConfig&, const StConfig&) = default;
};

struct StUnit {
  Ident program_name{"prog0"};
  std::vector<StVarBlock> var_blocks;
  StStatement body;
  std::optional<StConfig> config;

  /// Names declared in blocks of `kind`, in declaration order.
  std::vector<Ident> declared(VarKind kind) const;
  friend bool operator==(const StUnit&, const StUnit&) = default;
};

/// Parses a complete PROGRAM unit, optionally followed by a CONFIGURATION.
StUnit parse_st(std::string_view text);
/// Parses a bare statement list, e.g. a listing fragment.
StStatement parse_st_statements(std::string_view text);
/// Expression entry point; comparisons, connectives and TRUE/FALSE make a
/// formula, anything else a term.
std::variant<Term, Formula> parse_st_expression(std::string_view text);
Term parse_st_term(std::string_view text);
Formula parse_st_formula(std::string_view text);

std::string print_st(const StUnit& unit);
std::string print_st_statement(const StStatement& s, int indent = 0);
std::string print_st_term(const Term& t);
std::string print_st_formula(const Formula& f);

std::string_view to_string(VarKind kind);
std::string_view to_string(StType type);

}  // namespace hyplc
