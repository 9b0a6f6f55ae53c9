#include "expr_print.hpp"

namespace hyplc::detail {

const FormulaSyntax kStSyntax = {
    "AND", "OR", "XOR", nullptr, nullptr, "NOT", "TRUE", "FALSE",
    {"=", "<>", ">", ">=", "<", "<="}, true, {"**", false}};

const FormulaSyntax kDlSyntax = {
    "&", "|", nullptr, "->", "<->", "!", "true", "false",
    {"=", "!=", ">", ">=", "<", "<="}, false, {"^", false}};

namespace {

int binary_prec(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd:
    case BinaryOp::kSub: return 1;
    case BinaryOp::kMul:
    case BinaryOp::kDiv: return 2;
    case BinaryOp::kPow: return 3;
  }
  return 0;
}

const char* binary_symbol(BinaryOp op, const TermSyntax& syn) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kPow: return syn.pow;
  }
  return "?";
}

std::string wrap(const std::string& s, bool paren) { return paren ? "(" + s + ")" : s; }

// Formula precedence. Both dialects share the ladder; the connective set differs.
// equiv 1, imply 2, or/xor 3, and 4, not 5, comparison 6, constant 7.
int formula_prec(const Formula& f) {
  const auto& v = f.node().v;
  if (std::holds_alternative<TruthConst>(v)) return 7;
  if (std::holds_alternative<Comparison>(v)) return 6;
  if (std::holds_alternative<NotFormula>(v)) return 5;
  switch (std::get<BinaryFormula>(v).op) {
    case Connective::kEquiv: return 1;
    case Connective::kImply: return 2;
    case Connective::kOr:
    case Connective::kXor: return 3;
    case Connective::kAnd: return 4;
  }
  return 0;
}

}  // namespace

int term_prec(const Term& t) {
  const auto& v = t.node().v;
  if (const auto* b = std::get_if<BinaryTerm>(&v)) return binary_prec(b->op);
  if (std::holds_alternative<NegTerm>(v)) return 4;
  return 5;
}

std::string print_term(const Term& t, const TermSyntax& syn) {
  const auto& v = t.node().v;
  if (const auto* n = std::get_if<NumberLit>(&v)) return n->lexeme;
  if (const auto* x = std::get_if<VarRef>(&v)) return x->name.str();
  if (const auto* n = std::get_if<NegTerm>(&v)) {
    return "-" + wrap(print_term(n->operand, syn), term_prec(n->operand) < 4);
  }
  const auto& b = std::get<BinaryTerm>(v);
  int p = binary_prec(b.op);
  std::string lhs = wrap(print_term(b.lhs, syn), term_prec(b.lhs) < p);
  std::string rhs = wrap(print_term(b.rhs, syn), term_prec(b.rhs) <= p);
  std::string op = binary_symbol(b.op, syn);
  bool spaced = syn.spaced_additive && p == 1;
  // Keep "a - -b" from lexing as a single operator or a comment opener.
  if (!spaced && !rhs.empty() && rhs[0] == '-') return lhs + op + " " + rhs;
  return spaced ? lhs + " " + op + " " + rhs : lhs + op + rhs;
}

std::string print_formula(const Formula& f, const FormulaSyntax& syn) {
  const auto& v = f.node().v;
  if (const auto* c = std::get_if<TruthConst>(&v)) return c->value ? syn.true_lit : syn.false_lit;
  if (const auto* c = std::get_if<Comparison>(&v)) {
    std::string rel = syn.rel[static_cast<int>(c->rel)];
    std::string lhs = print_term(c->lhs, syn.term);
    std::string rhs = print_term(c->rhs, syn.term);
    if (syn.spaced_cmp) return lhs + " " + rel + " " + rhs;
    // "x<-3" would lex as "<" "-" anyway, but keep it readable.
    if (!rhs.empty() && rhs[0] == '-') return lhs + rel + " " + rhs;
    return lhs + rel + rhs;
  }
  if (const auto* n = std::get_if<NotFormula>(&v)) {
    return std::string(syn.not_op) + "(" + print_formula(n->operand, syn) + ")";
  }
  const auto& b = std::get<BinaryFormula>(v);
  int p = formula_prec(f);
  const char* op = nullptr;
  bool right_assoc = false;
  switch (b.op) {
    case Connective::kAnd: op = syn.and_op; break;
    case Connective::kOr: op = syn.or_op; break;
    case Connective::kXor: op = syn.xor_op; break;
    case Connective::kImply: op = syn.imply_op; right_assoc = true; break;
    case Connective::kEquiv: op = syn.equiv_op; break;
  }
  int lp = formula_prec(b.lhs);
  int rp = formula_prec(b.rhs);
  bool lparen = right_assoc ? lp <= p : lp < p;
  bool rparen = right_assoc ? rp < p : rp <= p;
  return wrap(print_formula(b.lhs, syn), lparen) + " " + op + " " +
         wrap(print_formula(b.rhs, syn), rparen);
}

}  // namespace hyplc::detail
