#include "hyplc/program.hpp"

#include <algorithm>

namespace hyplc {

HybridProgram HybridProgram::assign(Ident target, Term value) {
  return HybridProgram(std::make_shared<const detail::HpNode>(
      detail::HpNode{HpAssign{std::move(target), std::move(value)}}));
}

HybridProgram HybridProgram::seq(HybridProgram first, HybridProgram second) {
  return HybridProgram(std::make_shared<const detail::HpNode>(
      detail::HpNode{HpSeq{std::move(first), std::move(second)}}));
}

HybridProgram HybridProgram::choice(Formula guard, HybridProgram then_branch,
                                    std::optional<HybridProgram> else_branch, bool complemented) {
  if (guard.dialect() != Dialect::kHp) {
    throw Error(ErrorKind::kDialectMismatch, "choice guard must be a hybrid-program formula");
  }
  if (!complemented && !else_branch) {
    throw Error(ErrorKind::kInvalidArgument, "a non-complemented choice needs a default branch");
  }
  return HybridProgram(std::make_shared<const detail::HpNode>(detail::HpNode{
      HpChoice{std::move(guard), std::move(then_branch), std::move(else_branch), complemented}}));
}

int choice_count(const HybridProgram& p) {
  const auto& v = p.node().v;
  if (const auto* s = std::get_if<HpSeq>(&v)) return choice_count(s->first) + choice_count(s->second);
  if (const auto* c = std::get_if<HpChoice>(&v)) {
    return 1 + choice_count(c->then_branch) + (c->else_branch ? choice_count(*c->else_branch) : 0);
  }
  return 0;
}

bool fully_complemented(const HybridProgram& p) {
  const auto& v = p.node().v;
  if (const auto* s = std::get_if<HpSeq>(&v)) {
    return fully_complemented(s->first) && fully_complemented(s->second);
  }
  if (const auto* c = std::get_if<HpChoice>(&v)) {
    return c->complemented && fully_complemented(c->then_branch) &&
           (!c->else_branch || fully_complemented(*c->else_branch));
  }
  return true;
}

int program_depth(const HybridProgram& p) {
  const auto& v = p.node().v;
  if (const auto* s = std::get_if<HpSeq>(&v)) {
    return 1 + std::max(program_depth(s->first), program_depth(s->second));
  }
  if (const auto* c = std::get_if<HpChoice>(&v)) {
    int d = program_depth(c->then_branch);
    if (c->else_branch) d = std::max(d, program_depth(*c->else_branch));
    return 1 + d;
  }
  return 1;
}

StStatement StStatement::assign(Ident target, Term value, Location loc) {
  return StStatement(std::make_shared<const detail::StNode>(
      detail::StNode{StAssign{std::move(target), std::move(value)}, loc}));
}

StStatement StStatement::seq(StStatement first, StStatement second) {
  Location loc = first.location();
  return StStatement(std::make_shared<const detail::StNode>(
      detail::StNode{StSeq{std::move(first), std::move(second)}, loc}));
}

namespace {

void require_st(const Formula& cond) {
  if (cond.dialect() != Dialect::kSt) {
    throw Error(ErrorKind::kDialectMismatch, "IF condition must be a structured-text formula");
  }
}

}  // namespace

StStatement StStatement::if_then_else(Formula cond, StStatement then_branch,
                                      StStatement else_branch, Location loc) {
  require_st(cond);
  return StStatement(std::make_shared<const detail::StNode>(detail::StNode{
      StIfThenElse{std::move(cond), std::move(then_branch), std::move(else_branch)}, loc}));
}

StStatement StStatement::if_then(Formula cond, StStatement then_branch, Location loc) {
  require_st(cond);
  return StStatement(std::make_shared<const detail::StNode>(
      detail::StNode{StIfThen{std::move(cond), std::move(then_branch)}, loc}));
}

int statement_depth(const StStatement& s) {
  const auto& v = s.node().v;
  if (const auto* q = std::get_if<StSeq>(&v)) {
    return 1 + std::max(statement_depth(q->first), statement_depth(q->second));
  }
  if (const auto* i = std::get_if<StIfThenElse>(&v)) {
    return 1 + std::max(statement_depth(i->then_branch), statement_depth(i->else_branch));
  }
  if (const auto* i = std::get_if<StIfThen>(&v)) return 1 + statement_depth(i->then_branch);
  return 1;
}

}  // namespace hyplc
