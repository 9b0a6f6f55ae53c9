#pragma once

// Precedence-driven printing shared by the ST and dL printers.

#include <string>

#include "hyplc/formula.hpp"
#include "hyplc/term.hpp"

namespace hyplc::detail {

struct TermSyntax {
  const char* pow;      // "**" or "^"
  bool spaced_additive;  // "a + b" vs "a+b"
};

struct FormulaSyntax {
  const char* and_op;
  const char* or_op;
  const char* xor_op;    // nullptr when unavailable
  const char* imply_op;  // nullptr when unavailable
  const char* equiv_op;
  const char* not_op;    // printed as not_op + "(" + operand + ")"
  const char* true_lit;
  const char* false_lit;
  const char* rel[6];    // indexed by Relation
  bool spaced_cmp;
  TermSyntax term;
};

// Term precedence: additive 1, multiplicative 2, power 3, unary minus 4, atoms 5.
int term_prec(const Term& t);
std::string print_term(const Term& t, const TermSyntax& syn);
std::string print_formula(const Formula& f, const FormulaSyntax& syn);

extern const FormulaSyntax kStSyntax;
extern const FormulaSyntax kDlSyntax;

}  // namespace hyplc::detail
