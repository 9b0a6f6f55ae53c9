#include "hyplc/term.hpp"

#include <cstdlib>

#include "hyplc/error.hpp"

namespace hyplc {

namespace {

bool valid_number_lexeme(const std::string& s) {
  size_t i = 0;
  auto digits = [&] {
    size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    return i > start;
  };
  if (!digits()) return false;
  if (i < s.size() && s[i] == '.') {
    ++i;
    if (!digits()) return false;
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (!digits()) return false;
  }
  return i == s.size();
}

}  // namespace

Term Term::number(std::string lexeme) {
  if (!valid_number_lexeme(lexeme)) {
    throw Error(ErrorKind::kInvalidArgument, "malformed number literal '" + lexeme + "'");
  }
  double value = std::strtod(lexeme.c_str(), nullptr);
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{NumberLit{std::move(lexeme), value}}));
}

Term Term::var(Ident name) {
  return Term(std::make_shared<const detail::TermNode>(detail::TermNode{VarRef{std::move(name)}}));
}

Term Term::neg(Term operand) {
  return Term(std::make_shared<const detail::TermNode>(detail::TermNode{NegTerm{std::move(operand)}}));
}

Term Term::binary(BinaryOp op, Term lhs, Term rhs) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{BinaryTerm{op, std::move(lhs), std::move(rhs)}}));
}

void collect_vars(const Term& t, std::set<Ident>& out) {
  const auto& v = t.node().v;
  if (const auto* var = std::get_if<VarRef>(&v)) {
    out.insert(var->name);
  } else if (const auto* neg = std::get_if<NegTerm>(&v)) {
    collect_vars(neg->operand, out);
  } else if (const auto* bin = std::get_if<BinaryTerm>(&v)) {
    collect_vars(bin->lhs, out);
    collect_vars(bin->rhs, out);
  }
}

std::set<Ident> collect_vars(const Term& t) {
  std::set<Ident> out;
  collect_vars(t, out);
  return out;
}

int term_size(const Term& t) {
  const auto& v = t.node().v;
  if (const auto* neg = std::get_if<NegTerm>(&v)) return 1 + term_size(neg->operand);
  if (const auto* bin = std::get_if<BinaryTerm>(&v)) return 1 + term_size(bin->lhs) + term_size(bin->rhs);
  return 1;
}

}  // namespace hyplc
