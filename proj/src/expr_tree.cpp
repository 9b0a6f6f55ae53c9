#include "expr_tree.hpp"

namespace hyplc::detail {

Term to_term(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kNumber: return Term::number(e.text);
    case Expr::Kind::kVar: return Term::var(Ident(e.text));
    case Expr::Kind::kNeg: return Term::neg(to_term(e.kids[0]));
    case Expr::Kind::kArith: return Term::binary(e.arith, to_term(e.kids[0]), to_term(e.kids[1]));
    default: break;
  }
  throw Error(ErrorKind::kSyntaxError, "expected an arithmetic term but found a condition", e.loc);
}

Formula to_formula(const Expr& e, Dialect d, bool bare_var_is_bool) {
  switch (e.kind) {
    case Expr::Kind::kConst: return Formula::constant(d, e.truth);
    case Expr::Kind::kCmp: return Formula::cmp(d, e.rel, to_term(e.kids[0]), to_term(e.kids[1]));
    case Expr::Kind::kNot: return Formula::negate(to_formula(e.kids[0], d, bare_var_is_bool));
    case Expr::Kind::kConn:
      return Formula::binary(e.conn, to_formula(e.kids[0], d, bare_var_is_bool),
                             to_formula(e.kids[1], d, bare_var_is_bool));
    case Expr::Kind::kVar:
      if (bare_var_is_bool) {
        return Formula::cmp(d, Relation::kNe, Term::var(Ident(e.text)), Term::number("0"));
      }
      break;
    default: break;
  }
  throw Error(ErrorKind::kSyntaxError, "expected a condition but found an arithmetic term", e.loc);
}

}  // namespace hyplc::detail
