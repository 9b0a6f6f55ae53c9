#include "expr_print.hpp"
#include "hyplc/dl.hpp"

namespace hyplc {

namespace {

using detail::kDlSyntax;

std::string term_text(const Term& t) { return detail::print_term(t, kDlSyntax.term); }
std::string formula_text(const Formula& f) { return detail::print_formula(f, kDlSyntax); }

std::string program_text(const dl::Program& p);

// A sequence element. Choices are braced so `++` never captures neighbours.
std::string element_text(const dl::Program& p) {
  const auto& v = p.node().v;
  if (const auto* a = std::get_if<dl::Assign>(&v)) return a->target.str() + ":=" + term_text(a->value) + ";";
  if (const auto* r = std::get_if<dl::Random>(&v)) return r->target.str() + ":=*;";
  if (const auto* t = std::get_if<dl::Test>(&v)) return "?" + formula_text(t->cond) + ";";
  if (std::holds_alternative<dl::Choice>(v)) return "{" + program_text(p) + "}";
  if (const auto* l = std::get_if<dl::Loop>(&v)) return "{" + program_text(l->body) + "}*";
  if (const auto* o = std::get_if<dl::Ode>(&v)) {
    std::string out = "{";
    for (size_t i = 0; i < o->equations.size(); ++i) {
      if (i) out += ", ";
      out += o->equations[i].first.str() + "'=" + term_text(o->equations[i].second);
    }
    if (o->domain) out += " & " + formula_text(*o->domain);
    return out + "}";
  }
  return program_text(p);
}

std::string seq_text(const dl::Program& p) {
  std::string out;
  for (const auto& e : dl::flatten_seq(p)) {
    if (!out.empty()) out += " ";
    out += element_text(e);
  }
  return out;
}

std::string program_text(const dl::Program& p) {
  if (const auto* c = std::get_if<dl::Choice>(&p.node().v)) {
    // `++` is right-associative, so only a left operand that is itself a
    // choice needs its own braces.
    std::string lhs = std::holds_alternative<dl::Choice>(c->left.node().v) ? "{" + program_text(c->left) + "}"
                                                                          : seq_text(c->left);
    return lhs + " ++ " + program_text(c->right);
  }
  return seq_text(p);
}

bool needs_parens_as_assumption(const Formula& f) {
  const auto* b = std::get_if<BinaryFormula>(&f.node().v);
  return b && (b->op == Connective::kImply || b->op == Connective::kEquiv);
}

// Long left-nested conjunctions are wrapped four conjuncts per line.
std::string assumption_text(const Formula& a) {
  if (needs_parens_as_assumption(a)) return "(" + formula_text(a) + ")";
  std::vector<Formula> parts = conjuncts(a);
  if (parts.size() <= 4 || !(fold_conj(parts) == a)) return formula_text(a);
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += i % 4 == 0 ? "\n  & " : " & ";
    out += formula_text(parts[i]);
  }
  return out;
}

}  // namespace

std::string print_dl(const Term& t) { return term_text(t); }

std::string print_dl(const Formula& f) {
  if (f.dialect() != Dialect::kHp) {
    throw Error(ErrorKind::kDialectMismatch, "cannot print a structured-text formula as dL");
  }
  return formula_text(f);
}

std::string print_dl(const dl::Program& p) {
  if (std::holds_alternative<dl::Choice>(p.node().v)) return "{" + program_text(p) + "}";
  return program_text(p);
}

std::string print_dl(const HybridProgram& p) { return print_dl(from_translatable(p)); }

std::string print_dl(const DlSafetyFormula& f) {
  std::string a = assumption_text(f.assumptions);
  std::string out = a + " ->\n  [";
  if (const auto* loop = std::get_if<dl::Loop>(&f.program.node().v)) {
    out += "{\n";
    for (const auto& e : dl::flatten_seq(loop->body)) out += "    " + element_text(e) + "\n";
    out += "  }*";
  } else {
    out += print_dl(f.program);
  }
  out += "]\n  " + formula_text(f.safety) + "\n";
  return out;
}

}  // namespace hyplc
