#pragma once

#include <memory>
#include <set>
#include <variant>
#include <vector>

#include "hyplc/term.hpp"

namespace hyplc {

/// Which surface language a formula belongs to. HP admits `->`/`<->`,
/// ST admits XOR; the constructors refuse anything else.
enum class Dialect { kHp, kSt };

enum class Relation { kEq, kNe, kGt, kGe, kLt, kLe };

enum class Connective { kAnd, kOr, kImply, kEquiv, kXor };

namespace detail {
struct FormulaNode;
}

class Formula {
 public:
  static Formula constant(Dialect d, bool value);
  static Formula cmp(Dialect d, Relation rel, Term lhs, Term rhs);
  static Formula negate(Formula operand);
  /// Both operands must share a dialect, and the connective must be legal in it.
  static Formula binary(Connective op, Formula lhs, Formula rhs);

  static Formula conj(Formula a, Formula b) { return binary(Connective::kAnd, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Connective::kOr, std::move(a), std::move(b)); }

  Dialect dialect() const { return dialect_; }
  const detail::FormulaNode& node() const { return *node_; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  Formula(Dialect d, std::shared_ptr<const detail::FormulaNode> node)
      : dialect_(d), node_(std::move(node)) {}

  Dialect dialect_;
  std::shared_ptr<const detail::FormulaNode> node_;
};

struct TruthConst {
  bool value;
  friend bool operator==(const TruthConst&, const TruthConst&) = default;
};

struct Comparison {
  Relation rel;
  Term lhs;
  Term rhs;
  friend bool operator==(const Comparison&, const Comparison&) = default;
};

struct NotFormula {
  Formula operand;
  friend bool operator==(const NotFormula&, const NotFormula&) = default;
};

struct BinaryFormula {
  Connective op;
  Formula lhs;
  Formula rhs;
  friend bool operator==(const BinaryFormula&, const BinaryFormula&) = default;
};

namespace detail {
struct FormulaNode {
  std::variant<TruthConst, Comparison, NotFormula, BinaryFormula> v;
};
}  // namespace detail

inline bool operator==(const Formula& a, const Formula& b) {
  return a.dialect_ == b.dialect_ && (a.node_ == b.node_ || a.node_->v == b.node_->v);
}

bool connective_allowed(Dialect d, Connective op);

std::set<Ident> collect_vars(const Formula& f);
void collect_vars(const Formula& f, std::set<Ident>& out);

/// Flattens a left- or right-nested chain of conjunctions into its conjuncts,
/// in reading order.
std::vector<Formula> conjuncts(const Formula& f);
/// Left fold of `parts` with AND. `parts` must be non-empty.
Formula fold_conj(const std::vector<Formula>& parts);

}  // namespace hyplc
