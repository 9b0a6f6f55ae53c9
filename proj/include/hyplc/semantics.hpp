#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyplc/program.hpp"
#include "hyplc/state.hpp"

namespace hyplc {

/// Raises DivisionByZero for `/0` and `0^negative`, DomainError for a
/// negative base with a non-integer exponent.
double eval_term(const Term& t, const State& s);
/// Two-valued and strict: every operand is evaluated.
bool eval_formula(const Formula& f, const State& s);

/// Runs the statement to completion with the small-step IF/sequence rules.
State run_st(const StStatement& s, const State& sigma);

/// Final states of a translatable program, deduplicated by bit pattern.
class ReachSet {
 public:
  ReachSet() = default;
  explicit ReachSet(std::vector<State> states);

  bool contains(const State& s) const;
  size_t size() const { return states_.size(); }
  bool empty() const { return states_.empty(); }
  const std::vector<State>& states() const { return states_; }
  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

 private:
  std::vector<State> states_;  // sorted by bit_less
};

ReachSet hp_reachable(const HybridProgram& p, const State& sigma);

// ---------------------------------------------------------------------------
// Random generation and differential testing

struct GenWeights {
  int assign = 4;
  int seq = 3;
  int if_then_else = 2;
  int if_then = 2;
  int default_choice = 1;  // HP only
};

struct GenConfig {
  int max_depth = 5;
  int max_term_depth = 3;
  int max_formula_depth = 2;
  std::vector<Ident> var_pool{"x", "y", "z", "u", "v", "w"};
  std::vector<double> literal_pool{0, 1, 2, 3, 0.5, 10, 0.1};
  std::uint64_t seed = 0;
  GenWeights weights;
  int max_choices = 12;
};

Term gen_term(const GenConfig& cfg);
Formula gen_formula(const GenConfig& cfg, Dialect d);
StStatement gen_st(const GenConfig& cfg);
HybridProgram gen_hp(const GenConfig& cfg);
/// Binds every pool variable; values come from the literal pool or [-10, 10].
State gen_state(const GenConfig& cfg);

enum class DiffKind { kStToHp, kHpToSt, kExpr, kDeterministic };
char diff_kind_letter(DiffKind k);

struct DiffFailure {
  std::uint64_t seed;
  DiffKind kind;
  std::string program;
  std::string state;
  std::string detail;
};

struct DiffReport {
  std::size_t total = 0;
  std::vector<bool> passed;  // per trial, in seed order
  std::vector<DiffFailure> failures;

  std::size_t failed() const { return failures.size(); }
  std::string to_text() const;
};

/// Outcome of one check; `nullopt` when it holds.
using CheckResult = std::optional<std::string>;

CheckResult check_st_to_hp(const StStatement& s, const State& sigma);
CheckResult check_hp_to_st(const HybridProgram& p, const State& sigma);
/// Only meaningful for fully complemented programs.
CheckResult check_deterministic(const HybridProgram& p, const State& sigma);
CheckResult check_term_equivalence(const Term& t, Dialect from, const State& sigma);
CheckResult check_formula_equivalence(const Formula& f, const State& sigma);

/// Trial i uses seed `cfg.seed + i`. Trials whose evaluation divides by zero
/// or leaves the real domain are redrawn.
DiffReport difftest(const GenConfig& cfg, std::size_t n);

}  // namespace hyplc
