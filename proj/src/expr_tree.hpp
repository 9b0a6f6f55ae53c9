#pragma once

// Untyped expression tree produced by both parsers. The surface syntaxes use
// one expression grammar for terms and conditions, so the category is only
// known once a whole subtree has been read.

#include <string>
#include <vector>

#include "hyplc/error.hpp"
#include "hyplc/formula.hpp"

namespace hyplc::detail {

struct Expr {
  enum class Kind { kNumber, kVar, kConst, kNeg, kArith, kCmp, kNot, kConn };
  Kind kind = Kind::kNumber;
  Location loc;
  std::string text;  // number lexeme or identifier
  bool truth = false;
  BinaryOp arith{};
  Relation rel{};
  Connective conn{};
  std::vector<Expr> kids;

  bool is_formula() const {
    return kind == Kind::kConst || kind == Kind::kCmp || kind == Kind::kNot || kind == Kind::kConn;
  }

  static Expr make(Kind k, Location loc, std::vector<Expr> kids = {}) {
    Expr out;
    out.kind = k;
    out.loc = loc;
    out.kids = std::move(kids);
    return out;
  }
  static Expr number(Location loc, std::string lexeme) {
    Expr out = make(Kind::kNumber, loc);
    out.text = std::move(lexeme);
    return out;
  }
  static Expr var(Location loc, std::string name) {
    Expr out = make(Kind::kVar, loc);
    out.text = std::move(name);
    return out;
  }
  static Expr constant(Location loc, bool v) {
    Expr out = make(Kind::kConst, loc);
    out.truth = v;
    return out;
  }
  static Expr neg(Location loc, Expr e) { return make(Kind::kNeg, loc, {std::move(e)}); }
  static Expr arith_op(Location loc, BinaryOp op, Expr a, Expr b) {
    Expr out = make(Kind::kArith, loc, {std::move(a), std::move(b)});
    out.arith = op;
    return out;
  }
  static Expr cmp(Location loc, Relation rel, Expr a, Expr b) {
    Expr out = make(Kind::kCmp, loc, {std::move(a), std::move(b)});
    out.rel = rel;
    return out;
  }
  static Expr negate(Location loc, Expr e) { return make(Kind::kNot, loc, {std::move(e)}); }
  static Expr conn_op(Location loc, Connective op, Expr a, Expr b) {
    Expr out = make(Kind::kConn, loc, {std::move(a), std::move(b)});
    out.conn = op;
    return out;
  }
};

Term to_term(const Expr& e);
/// `bare_var_is_bool` turns a lone identifier in condition position into
/// `x <> 0` (ST BOOL variables); otherwise it is a syntax error.
Formula to_formula(const Expr& e, Dialect d, bool bare_var_is_bool);

}  // namespace hyplc::detail
