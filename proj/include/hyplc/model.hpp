#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyplc/formula.hpp"
#include "hyplc/program.hpp"

namespace hyplc {

/// Continuous dynamics `t:=0; {x'=f(x,u), ..., t'=1 & t<=eps & Q}`.
/// The clock ODE and the `t<=eps` conjunct are implied and not stored.
struct PlantSpec {
  std::vector<std::pair<Ident, Term>> odes;
  Ident clock{"t"};
  std::optional<Formula> domain;  // Q, HP dialect; absent means true

  std::vector<Ident> state_vars() const;
  friend bool operator==(const PlantSpec&, const PlantSpec&) = default;
};

/// Scan-cycle duration: a concrete number of seconds or a symbolic parameter.
struct Epsilon {
  std::variant<double, Ident> value;

  bool concrete() const { return std::holds_alternative<double>(value); }
  double seconds() const { return std::get<double>(value); }
  Term as_term() const;
  friend bool operator==(const Epsilon&, const Epsilon&) = default;
};

/// `A -> [{inputs; ctrl; plant}*] S` after normal-form validation.
struct ScanCycleModel {
  Formula assumptions;
  std::vector<Ident> inputs;
  HybridProgram ctrl;
  PlantSpec plant;
  Epsilon epsilon;
  /// The term the domain compares the clock against, kept for lossless printing.
  Term epsilon_term;
  Formula safety;
};

}  // namespace hyplc
