#include "hyplc/formula.hpp"

#include "hyplc/error.hpp"

namespace hyplc {

namespace {

std::shared_ptr<const detail::FormulaNode> make(auto alt) {
  return std::make_shared<const detail::FormulaNode>(detail::FormulaNode{std::move(alt)});
}

std::string_view connective_name(Connective op) {
  switch (op) {
    case Connective::kAnd: return "AND";
    case Connective::kOr: return "OR";
    case Connective::kImply: return "->";
    case Connective::kEquiv: return "<->";
    case Connective::kXor: return "XOR";
  }
  return "?";
}

}  // namespace

bool connective_allowed(Dialect d, Connective op) {
  switch (op) {
    case Connective::kAnd:
    case Connective::kOr: return true;
    case Connective::kImply:
    case Connective::kEquiv: return d == Dialect::kHp;
    case Connective::kXor: return d == Dialect::kSt;
  }
  return false;
}

Formula Formula::constant(Dialect d, bool value) { return Formula(d, make(TruthConst{value})); }

Formula Formula::cmp(Dialect d, Relation rel, Term lhs, Term rhs) {
  return Formula(d, make(Comparison{rel, std::move(lhs), std::move(rhs)}));
}

Formula Formula::negate(Formula operand) {
  Dialect d = operand.dialect();
  return Formula(d, make(NotFormula{std::move(operand)}));
}

Formula Formula::binary(Connective op, Formula lhs, Formula rhs) {
  if (lhs.dialect() != rhs.dialect()) {
    throw Error(ErrorKind::kDialectMismatch, "operands of a connective come from different dialects");
  }
  Dialect d = lhs.dialect();
  if (!connective_allowed(d, op)) {
    throw Error(ErrorKind::kDialectMismatch,
                std::string(connective_name(op)) + " is not available in the " +
                    (d == Dialect::kHp ? "hybrid program" : "structured text") + " dialect");
  }
  return Formula(d, make(BinaryFormula{op, std::move(lhs), std::move(rhs)}));
}

void collect_vars(const Formula& f, std::set<Ident>& out) {
  const auto& v = f.node().v;
  if (const auto* c = std::get_if<Comparison>(&v)) {
    collect_vars(c->lhs, out);
    collect_vars(c->rhs, out);
  } else if (const auto* n = std::get_if<NotFormula>(&v)) {
    collect_vars(n->operand, out);
  } else if (const auto* b = std::get_if<BinaryFormula>(&v)) {
    collect_vars(b->lhs, out);
    collect_vars(b->rhs, out);
  }
}

std::set<Ident> collect_vars(const Formula& f) {
  std::set<Ident> out;
  collect_vars(f, out);
  return out;
}

namespace {

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (const auto* b = std::get_if<BinaryFormula>(&f.node().v); b && b->op == Connective::kAnd) {
    flatten_and(b->lhs, out);
    flatten_and(b->rhs, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  flatten_and(f, out);
  return out;
}

Formula fold_conj(const std::vector<Formula>& parts) {
  if (parts.empty()) throw Error(ErrorKind::kInvalidArgument, "empty conjunction");
  Formula acc = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

}  // namespace hyplc
