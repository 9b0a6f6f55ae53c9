#include <utility>

#include "hyplc/dl.hpp"

namespace hyplc {

namespace dl {

Program Program::assign(Ident x, Term value, Location loc) {
  return Program(std::make_shared<const detail::ProgramNode>(
      detail::ProgramNode{Assign{std::move(x), std::move(value)}, loc}));
}

Program Program::random(Ident x, Location loc) {
  return Program(
      std::make_shared<const detail::ProgramNode>(detail::ProgramNode{Random{std::move(x)}, loc}));
}

Program Program::test(Formula cond, Location loc) {
  if (cond.dialect() != Dialect::kHp) {
    throw Error(ErrorKind::kDialectMismatch, "test condition must be a hybrid-program formula", loc);
  }
  return Program(
      std::make_shared<const detail::ProgramNode>(detail::ProgramNode{Test{std::move(cond)}, loc}));
}

Program Program::seq(Program first, Program second) {
  Location loc = first.location();
  return Program(std::make_shared<const detail::ProgramNode>(
      detail::ProgramNode{Seq{std::move(first), std::move(second)}, loc}));
}

Program Program::choice(Program left, Program right, Location loc) {
  return Program(std::make_shared<const detail::ProgramNode>(
      detail::ProgramNode{Choice{std::move(left), std::move(right)}, loc}));
}

Program Program::loop(Program body, Location loc) {
  return Program(
      std::make_shared<const detail::ProgramNode>(detail::ProgramNode{Loop{std::move(body)}, loc}));
}

Program Program::ode(std::vector<std::pair<Ident, Term>> eqs, std::optional<Formula> domain,
                     Location loc) {
  if (eqs.empty()) throw Error(ErrorKind::kInvalidArgument, "ODE system without equations", loc);
  if (domain && domain->dialect() != Dialect::kHp) {
    throw Error(ErrorKind::kDialectMismatch, "evolution domain must be a hybrid-program formula", loc);
  }
  return Program(std::make_shared<const detail::ProgramNode>(
      detail::ProgramNode{Ode{std::move(eqs), std::move(domain)}, loc}));
}

namespace {
void flatten_into(const Program& p, std::vector<Program>& out) {
  if (const auto* s = std::get_if<Seq>(&p.node().v)) {
    flatten_into(s->first, out);
    flatten_into(s->second, out);
  } else {
    out.push_back(p);
  }
}
}  // namespace

std::vector<Program> flatten_seq(const Program& p) {
  std::vector<Program> out;
  flatten_into(p, out);
  return out;
}

Program fold_seq(const std::vector<Program>& parts) {
  if (parts.empty()) throw Error(ErrorKind::kInvalidArgument, "empty sequential composition");
  Program acc = parts.back();
  for (size_t i = parts.size() - 1; i-- > 0;) acc = Program::seq(parts[i], acc);
  return acc;
}

}  // namespace dl

namespace {

const Formula& strip_double_negation(const Formula& f) {
  const Formula* cur = &f;
  for (;;) {
    const auto* outer = std::get_if<NotFormula>(&cur->node().v);
    if (!outer) return *cur;
    const auto* inner = std::get_if<NotFormula>(&outer->operand.node().v);
    if (!inner) return *cur;
    cur = &inner->operand;
  }
}

bool negation_of(const Formula& maybe_not, const Formula& other) {
  const auto* n = std::get_if<NotFormula>(&maybe_not.node().v);
  return n && strip_double_negation(n->operand) == other;
}

struct LeadingTest {
  Formula cond;
  Location loc;
  std::optional<dl::Program> rest;
};

// Descends the left spine of `;` looking for an opening test.
std::optional<LeadingTest> split_leading_test(const dl::Program& p) {
  const auto& v = p.node().v;
  if (const auto* t = std::get_if<dl::Test>(&v)) return LeadingTest{t->cond, p.location(), std::nullopt};
  if (const auto* s = std::get_if<dl::Seq>(&v)) {
    auto head = split_leading_test(s->first);
    if (!head) return std::nullopt;
    head->rest = head->rest ? dl::Program::seq(*head->rest, s->second) : s->second;
    return head;
  }
  return std::nullopt;
}

[[noreturn]] void not_normal(const std::string& why, const Location& loc) {
  throw Error(ErrorKind::kNotNormalForm, why, loc);
}

}  // namespace

bool detect_complement(const Formula& left_guard, const Formula& right_guard) {
  const Formula& l = strip_double_negation(left_guard);
  const Formula& r = strip_double_negation(right_guard);
  return negation_of(r, l) || negation_of(l, r);
}

HybridProgram to_translatable(const dl::Program& p) {
  const auto& v = p.node().v;
  if (const auto* a = std::get_if<dl::Assign>(&v)) return HybridProgram::assign(a->target, a->value);
  if (const auto* s = std::get_if<dl::Seq>(&v)) {
    if (std::holds_alternative<dl::Test>(s->first.node().v)) {
      not_normal("test outside guarded choice", s->first.location());
    }
    return HybridProgram::seq(to_translatable(s->first), to_translatable(s->second));
  }
  if (const auto* c = std::get_if<dl::Choice>(&v)) {
    auto left = split_leading_test(c->left);
    if (!left) not_normal("left branch of a choice must open with a test", c->left.location());
    if (!left->rest) not_normal("guarded branch has no statements after its test", left->loc);
    HybridProgram then_branch = to_translatable(*left->rest);
    if (auto right = split_leading_test(c->right)) {
      if (!detect_complement(left->cond, right->cond)) {
        not_normal("test outside guarded choice", right->loc);
      }
      std::optional<HybridProgram> else_branch;
      if (right->rest) else_branch = to_translatable(*right->rest);
      return HybridProgram::choice(left->cond, then_branch, else_branch, true);
    }
    return HybridProgram::choice(left->cond, then_branch, to_translatable(c->right), false);
  }
  if (std::holds_alternative<dl::Test>(v)) not_normal("test outside guarded choice", p.location());
  if (std::holds_alternative<dl::Random>(v)) {
    not_normal("nondeterministic assignment outside input section", p.location());
  }
  if (std::holds_alternative<dl::Ode>(v)) not_normal("ODE outside plant", p.location());
  not_normal("nested loop", p.location());
}

dl::Program from_translatable(const HybridProgram& p) {
  const auto& v = p.node().v;
  if (const auto* a = std::get_if<HpAssign>(&v)) return dl::Program::assign(a->target, a->value);
  if (const auto* s = std::get_if<HpSeq>(&v)) {
    return dl::Program::seq(from_translatable(s->first), from_translatable(s->second));
  }
  const auto& c = std::get<HpChoice>(v);
  dl::Program left = dl::Program::seq(dl::Program::test(c.guard), from_translatable(c.then_branch));
  if (!c.complemented) return dl::Program::choice(left, from_translatable(*c.else_branch));
  dl::Program neg = dl::Program::test(Formula::negate(c.guard));
  if (!c.else_branch) return dl::Program::choice(left, neg);
  return dl::Program::choice(left, dl::Program::seq(neg, from_translatable(*c.else_branch)));
}

dl::Program plant_program(const PlantSpec& plant, const Term& epsilon) {
  auto eqs = plant.odes;
  eqs.emplace_back(plant.clock, Term::number("1"));
  std::vector<Formula> dom{
      Formula::cmp(Dialect::kHp, Relation::kLe, Term::var(plant.clock), epsilon)};
  if (plant.domain) {
    for (const auto& q : conjuncts(*plant.domain)) dom.push_back(q);
  }
  return dl::Program::seq(dl::Program::assign(plant.clock, Term::number("0")),
                          dl::Program::ode(std::move(eqs), fold_conj(dom)));
}

DlSafetyFormula make_safety_formula(const Formula& assumptions, const std::vector<Ident>& inputs,
                                    const HybridProgram& ctrl, const PlantSpec& plant,
                                    const Term& epsilon, const Formula& safety) {
  std::vector<dl::Program> parts;
  for (const auto& i : inputs) parts.push_back(dl::Program::random(i));
  for (const auto& c : dl::flatten_seq(from_translatable(ctrl))) parts.push_back(c);
  for (const auto& c : dl::flatten_seq(plant_program(plant, epsilon))) parts.push_back(c);
  return DlSafetyFormula{assumptions, dl::Program::loop(dl::fold_seq(parts)), safety};
}

DlSafetyFormula to_safety_formula(const ScanCycleModel& m) {
  return make_safety_formula(m.assumptions, m.inputs, m.ctrl, m.plant, m.epsilon_term, m.safety);
}

}  // namespace hyplc
