#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hyplc/model.hpp"
#include "hyplc/program.hpp"

namespace hyplc {

namespace dl {

namespace detail {
struct ProgramNode;
}

/// A hybrid program as written, before it is checked against the
/// translatable fragment. Nodes carry their source position.
class Program {
 public:
  static Program assign(Ident x, Term value, Location loc = {});
  static Program random(Ident x, Location loc = {});
  static Program test(Formula cond, Location loc = {});
  static Program seq(Program first, Program second);
  static Program choice(Program left, Program right, Location loc = {});
  static Program loop(Program body, Location loc = {});
  static Program ode(std::vector<std::pair<Ident, Term>> eqs, std::optional<Formula> domain,
                     Location loc = {});

  const detail::ProgramNode& node() const { return *node_; }
  const Location& location() const;

  friend bool operator==(const Program& a, const Program& b);

 private:
  explicit Program(std::shared_ptr<const detail::ProgramNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::ProgramNode> node_;
};

struct Assign {
  Ident target;
  Term value;
  friend bool operator==(const Assign&, const Assign&) = default;
};
struct Random {
  Ident target;
  friend bool operator==(const Random&, const Random&) = default;
};
struct Test {
  Formula cond;
  friend bool operator==(const Test&, const Test&) = default;
};
struct Seq {
  Program first;
  Program second;
  friend bool operator==(const Seq&, const Seq&) = default;
};
struct Choice {
  Program left;
  Program right;
  friend bool operator==(const Choice&, const Choice&) = default;
};
struct Loop {
  Program body;
  friend bool operator==(const Loop&, const Loop&) = default;
};
struct Ode {
  std::vector<std::pair<Ident, Term>> equations;
  std::optional<Formula> domain;
  friend bool operator==(const Ode&, const Ode&) = default;
};

namespace detail {
struct ProgramNode {
  std::variant<Assign, Random, Test, Seq, Choice, Loop, Ode> v;
  Location loc;
};
}  // namespace detail

inline bool operator==(const Program& a, const Program& b) {
  return a.node_ == b.node_ || a.node_->v == b.node_->v;
}
inline const Location& Program::location() const { return node_->loc; }

/// Elements of a sequential composition in execution order.
std::vector<Program> flatten_seq(const Program& p);
/// Right fold of `parts` with `;`. `parts` must be non-empty.
Program fold_seq(const std::vector<Program>& parts);

}  // namespace dl

/// `A -> [prog] S`, where a well-formed model has prog = `{in; ctrl; plant}*`.
struct DlSafetyFormula {
  Formula assumptions;
  dl::Program program;
  Formula safety;
  friend bool operator==(const DlSafetyFormula&, const DlSafetyFormula&) = default;
};

DlSafetyFormula parse_dl_safety(std::string_view text);
dl::Program parse_dl_program(std::string_view text);
/// Parses and converts to the translatable fragment (NotNormalForm otherwise).
HybridProgram parse_dl_hybrid_program(std::string_view text);
Formula parse_dl_formula(std::string_view text);
Term parse_dl_term(std::string_view text);

std::string print_dl(const DlSafetyFormula& f);
std::string print_dl(const dl::Program& p);
std::string print_dl(const HybridProgram& p);
std::string print_dl(const Formula& f);
std::string print_dl(const Term& t);

/// Structural complement test: one guard is the negation of the other after
/// stripping double negations at the top. No semantic reasoning.
bool detect_complement(const Formula& left_guard, const Formula& right_guard);

/// Checks the translatable grammar; throws NotNormalForm at the offending node.
HybridProgram to_translatable(const dl::Program& p);
dl::Program from_translatable(const HybridProgram& p);

/// `t:=0; {x'=f, ..., t'=1 & t<=eps & Q}`.
dl::Program plant_program(const PlantSpec& plant, const Term& epsilon);
/// Assembles `A -> [{i:=*...; ctrl; plant}*] S`.
DlSafetyFormula make_safety_formula(const Formula& assumptions, const std::vector<Ident>& inputs,
                                    const HybridProgram& ctrl, const PlantSpec& plant,
                                    const Term& epsilon, const Formula& safety);
DlSafetyFormula to_safety_formula(const ScanCycleModel& m);

}  // namespace hyplc
