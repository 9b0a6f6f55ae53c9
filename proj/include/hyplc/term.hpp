#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>

#include "hyplc/ident.hpp"

namespace hyplc {

enum class BinaryOp { kAdd, kSub, kMul, kDiv, kPow };

namespace detail {
struct TermNode;
}

/// Immutable arithmetic expression tree shared by both dialects. Compilation
/// between ST and dL never changes the shape; only the printers differ.
class Term {
 public:
  static Term number(std::string lexeme);
  static Term var(Ident name);
  static Term neg(Term operand);
  static Term binary(BinaryOp op, Term lhs, Term rhs);

  const detail::TermNode& node() const { return *node_; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

/// Numeric literal. The source lexeme is kept so printing is lossless.
struct NumberLit {
  std::string lexeme;
  double value;

  friend bool operator==(const NumberLit& a, const NumberLit& b) { return a.lexeme == b.lexeme; }
};

struct VarRef {
  Ident name;
  friend bool operator==(const VarRef&, const VarRef&) = default;
};

struct NegTerm {
  Term operand;
  friend bool operator==(const NegTerm&, const NegTerm&) = default;
};

struct BinaryTerm {
  BinaryOp op;
  Term lhs;
  Term rhs;
  friend bool operator==(const BinaryTerm&, const BinaryTerm&) = default;
};

namespace detail {
struct TermNode {
  std::variant<NumberLit, VarRef, NegTerm, BinaryTerm> v;
};
}  // namespace detail

inline bool operator==(const Term& a, const Term& b) {
  return a.node_ == b.node_ || a.node_->v == b.node_->v;
}

/// Identifiers occurring anywhere in the term.
std::set<Ident> collect_vars(const Term& t);
void collect_vars(const Term& t, std::set<Ident>& out);

/// Number of nodes, used by generators and tests.
int term_size(const Term& t);

}  // namespace hyplc
