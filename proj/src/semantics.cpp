#include "hyplc/semantics.hpp"

#include <algorithm>
#include <cmath>

namespace hyplc {

double eval_term(const Term& t, const State& s) {
  const auto& v = t.node().v;
  if (const auto* n = std::get_if<NumberLit>(&v)) return n->value;
  if (const auto* r = std::get_if<VarRef>(&v)) return s.get(r->name);
  if (const auto* n = std::get_if<NegTerm>(&v)) return -eval_term(n->operand, s);
  const auto& b = std::get<BinaryTerm>(v);
  double l = eval_term(b.lhs, s);
  double r = eval_term(b.rhs, s);
  switch (b.op) {
    case BinaryOp::kAdd: return l + r;
    case BinaryOp::kSub: return l - r;
    case BinaryOp::kMul: return l * r;
    case BinaryOp::kDiv:
      if (r == 0) throw Error(ErrorKind::kDivisionByZero, "division by zero");
      return l / r;
    case BinaryOp::kPow:
      if (l == 0 && r < 0) throw Error(ErrorKind::kDivisionByZero, "zero raised to a negative power");
      if (l < 0 && std::isfinite(r) && std::trunc(r) != r) {
        throw Error(ErrorKind::kDomainError, "negative base with non-integer exponent");
      }
      return std::pow(l, r);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown operator");
}

bool eval_formula(const Formula& f, const State& s) {
  const auto& v = f.node().v;
  if (const auto* c = std::get_if<TruthConst>(&v)) return c->value;
  if (const auto* c = std::get_if<Comparison>(&v)) {
    double l = eval_term(c->lhs, s);
    double r = eval_term(c->rhs, s);
    switch (c->rel) {
      case Relation::kEq: return l == r;
      case Relation::kNe: return l != r;
      case Relation::kGt: return l > r;
      case Relation::kGe: return l >= r;
      case Relation::kLt: return l < r;
      case Relation::kLe: return l <= r;
    }
  }
  if (const auto* n = std::get_if<NotFormula>(&v)) return !eval_formula(n->operand, s);
  const auto& b = std::get<BinaryFormula>(v);
  bool l = eval_formula(b.lhs, s);
  bool r = eval_formula(b.rhs, s);
  switch (b.op) {
    case Connective::kAnd: return l && r;
    case Connective::kOr: return l || r;
    case Connective::kXor: return l != r;
    case Connective::kImply: return !l || r;
    case Connective::kEquiv: return l == r;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown connective");
}

namespace {

[[noreturn]] void relocate(const Error& e, const Location& loc) {
  if (e.location().known() || !loc.known()) throw e;
  throw Error(e.kind(), e.message(), loc);
}

}  // namespace

State run_st(const StStatement& s, const State& sigma) {
  // Configuration (stack of pending statements, context); an empty stack is skip.
  State ctx = sigma;
  std::vector<const StStatement*> pending{&s};
  while (!pending.empty()) {
    const StStatement* cur = pending.back();
    pending.pop_back();
    const auto& v = cur->node().v;
    try {
      if (const auto* a = std::get_if<StAssign>(&v)) {
        ctx.put(a->target, eval_term(a->value, ctx));
      } else if (const auto* q = std::get_if<StSeq>(&v)) {
        pending.push_back(&q->second);
        pending.push_back(&q->first);
      } else if (const auto* c = std::get_if<StIfThenElse>(&v)) {
        pending.push_back(eval_formula(c->cond, ctx) ? &c->then_branch : &c->else_branch);
      } else {
        const auto& c1 = std::get<StIfThen>(v);
        if (eval_formula(c1.cond, ctx)) pending.push_back(&c1.then_branch);
      }
    } catch (const Error& e) {
      relocate(e, cur->location());
    }
  }
  return ctx;
}

ReachSet::ReachSet(std::vector<State> states) : states_(std::move(states)) {
  std::sort(states_.begin(), states_.end(), bit_less);
  states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
}

bool ReachSet::contains(const State& s) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), s, bit_less);
  return it != states_.end() && *it == s;
}

namespace {

void reach(const HybridProgram& p, const State& sigma, std::vector<State>& out) {
  const auto& v = p.node().v;
  if (const auto* a = std::get_if<HpAssign>(&v)) {
    out.push_back(sigma.set(a->target, eval_term(a->value, sigma)));
    return;
  }
  if (const auto* s = std::get_if<HpSeq>(&v)) {
    std::vector<State> mid;
    reach(s->first, sigma, mid);
    ReachSet dedup(std::move(mid));
    for (const auto& m : dedup) reach(s->second, m, out);
    return;
  }
  const auto& c = std::get<HpChoice>(v);
  bool guard = eval_formula(c.guard, sigma);
  // Left branch: ?guard; then.
  if (guard) reach(c.then_branch, sigma, out);
  // Right branch: ?!guard; else (complemented) or the unguarded default.
  if (c.complemented) {
    if (!guard) {
      if (c.else_branch) {
        reach(*c.else_branch, sigma, out);
      } else {
        out.push_back(sigma);
      }
    }
  } else {
    reach(*c.else_branch, sigma, out);
  }
}

}  // namespace

ReachSet hp_reachable(const HybridProgram& p, const State& sigma) {
  std::vector<State> out;
  reach(p, sigma, out);
  return ReachSet(std::move(out));
}

}  // namespace hyplc
