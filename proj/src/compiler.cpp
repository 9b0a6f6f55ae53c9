#include "hyplc/compiler.hpp"

#include <algorithm>

#include "hyplc/analysis.hpp"
#include "hyplc/number_format.hpp"

namespace hyplc {

Term term_st_to_hp(const Term& t) { return t; }
Term term_hp_to_st(const Term& t) { return t; }

namespace {

Formula translate(const Formula& f, Dialect to) {
  const auto& v = f.node().v;
  if (const auto* c = std::get_if<TruthConst>(&v)) return Formula::constant(to, c->value);
  if (const auto* c = std::get_if<Comparison>(&v)) return Formula::cmp(to, c->rel, c->lhs, c->rhs);
  if (const auto* n = std::get_if<NotFormula>(&v)) return Formula::negate(translate(n->operand, to));
  const auto& b = std::get<BinaryFormula>(v);
  Formula l = translate(b.lhs, to);
  Formula r = translate(b.rhs, to);
  switch (b.op) {
    case Connective::kAnd: return Formula::conj(l, r);
    case Connective::kOr: return Formula::disj(l, r);
    case Connective::kXor:
      return Formula::disj(Formula::conj(Formula::negate(l), r), Formula::conj(Formula::negate(r), l));
    case Connective::kImply: return Formula::disj(Formula::negate(l), r);
    case Connective::kEquiv:
      return Formula::disj(Formula::conj(Formula::negate(l), Formula::negate(r)), Formula::conj(l, r));
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown connective");
}

}  // namespace

Formula formula_st_to_hp(const Formula& f) {
  if (f.dialect() != Dialect::kSt) throw Error(ErrorKind::kDialectMismatch, "expected a structured-text formula");
  return translate(f, Dialect::kHp);
}

Formula formula_hp_to_st(const Formula& f) {
  if (f.dialect() != Dialect::kHp) throw Error(ErrorKind::kDialectMismatch, "expected a hybrid-program formula");
  return translate(f, Dialect::kSt);
}

HybridProgram prog_st_to_hp(const StStatement& s) {
  const auto& v = s.node().v;
  if (const auto* a = std::get_if<StAssign>(&v)) return HybridProgram::assign(a->target, term_st_to_hp(a->value));
  if (const auto* q = std::get_if<StSeq>(&v)) return HybridProgram::seq(prog_st_to_hp(q->first), prog_st_to_hp(q->second));
  if (const auto* c = std::get_if<StIfThenElse>(&v)) {
    return HybridProgram::choice(formula_st_to_hp(c->cond), prog_st_to_hp(c->then_branch),
                                 prog_st_to_hp(c->else_branch), true);
  }
  const auto& c = std::get<StIfThen>(v);
  return HybridProgram::choice(formula_st_to_hp(c.cond), prog_st_to_hp(c.then_branch), std::nullopt, true);
}

StStatement prog_hp_to_st(const HybridProgram& p, CompileDiagnostics& diags) {
  const auto& v = p.node().v;
  if (const auto* a = std::get_if<HpAssign>(&v)) return StStatement::assign(a->target, term_hp_to_st(a->value));
  if (const auto* q = std::get_if<HpSeq>(&v)) {
    StStatement first = prog_hp_to_st(q->first, diags);
    return StStatement::seq(first, prog_hp_to_st(q->second, diags));
  }
  const auto& c = std::get<HpChoice>(v);
  Formula cond = formula_hp_to_st(c.guard);
  StStatement then_branch = prog_hp_to_st(c.then_branch, diags);
  if (!c.complemented) {
    diags.warnings.push_back({"Linearized",
                              "default branch of choice on '" + print_dl(c.guard) +
                                  "' runs only when the guard is false",
                              {}});
  }
  if (!c.else_branch) return StStatement::if_then(cond, then_branch);
  return StStatement::if_then_else(cond, then_branch, prog_hp_to_st(*c.else_branch, diags));
}

StStatement prog_hp_to_st(const HybridProgram& p) {
  CompileDiagnostics ignored;
  return prog_hp_to_st(p, ignored);
}

StUnit task_hp_to_st(const ScanCycleModel& m, CompileDiagnostics& diags,
                     std::optional<double> epsilon_override, const TaskNames& names) {
  double interval = 0;
  if (epsilon_override) {
    interval = *epsilon_override;
  } else if (m.epsilon.concrete()) {
    interval = m.epsilon.seconds();
  } else {
    throw Error(ErrorKind::kMissingEpsilon,
                "scan cycle '" + std::get<Ident>(m.epsilon.value).str() +
                    "' has no concrete value; add '" + std::get<Ident>(m.epsilon.value).str() +
                    "=<seconds>' to the assumptions or pass an override");
  }
  if (!(interval > 0)) {
    throw Error(ErrorKind::kInvalidArgument, "scan cycle interval must be positive, got " + format_number(interval));
  }

  IoClassification io = classify_io(m.ctrl, m.inputs, m.plant);
  for (const auto& x : io.conflicts) {
    diags.warnings.push_back(
        {"InputOutputConflict", "'" + x.str() + "' is read before it is written; declared as output", {}});
  }

  auto block = [](VarKind kind, const std::vector<Ident>& names_) {
    StVarBlock b{kind, {}};
    for (const auto& x : names_) b.decls.push_back({x, StType::kLReal});
    return b;
  };
  std::vector<StVarBlock> blocks;
  if (!io.inputs.empty()) blocks.push_back(block(VarKind::kInput, io.inputs));
  if (!io.outputs.empty()) blocks.push_back(block(VarKind::kOutput, io.outputs));
  if (!io.params.empty()) blocks.push_back(block(VarKind::kExternal, io.params));

  StConfig cfg;
  cfg.config_name = names.config_name;
  cfg.resource_name = names.resource_name;
  cfg.task_name = names.task_name;
  cfg.program_instance = names.program_instance;
  cfg.interval = interval;
  cfg.priority = 0;
  return StUnit{names.program_name, std::move(blocks), prog_hp_to_st(m.ctrl, diags), cfg};
}

namespace {

void statement_vars(const StStatement& s, std::set<Ident>& out) {
  const auto& v = s.node().v;
  if (const auto* a = std::get_if<StAssign>(&v)) {
    out.insert(a->target);
    collect_vars(a->value, out);
  } else if (const auto* q = std::get_if<StSeq>(&v)) {
    statement_vars(q->first, out);
    statement_vars(q->second, out);
  } else if (const auto* c = std::get_if<StIfThenElse>(&v)) {
    collect_vars(c->cond, out);
    statement_vars(c->then_branch, out);
    statement_vars(c->else_branch, out);
  } else {
    const auto& c1 = std::get<StIfThen>(v);
    collect_vars(c1.cond, out);
    statement_vars(c1.then_branch, out);
  }
}

}  // namespace

DlSafetyFormula task_st_to_hp(const StUnit& u, const PlantSpec& plant, const Formula& assumptions,
                              const Formula& safety) {
  std::set<Ident> program_vars;
  statement_vars(u.body, program_vars);
  for (const auto& b : u.var_blocks) {
    for (const auto& d : b.decls) program_vars.insert(d.name);
  }
  if (program_vars.count(plant.clock)) {
    throw Error(ErrorKind::kPlantVariableClash,
                "plant clock '" + plant.clock.str() + "' is also a program variable");
  }

  auto state = plant.state_vars();
  std::vector<Ident> inputs;
  for (const auto& i : u.declared(VarKind::kInput)) {
    if (std::find(state.begin(), state.end(), i) == state.end()) inputs.push_back(i);
  }

  const Ident eps("eps");
  Formula a = assumptions;
  if (u.config) {
    double interval = u.config->interval;
    EpsilonValue found = extract_epsilon(assumptions, eps);
    if (const auto* n = std::get_if<double>(&found)) {
      if (*n != interval) {
        throw Error(ErrorKind::kConflictingEpsilon,
                    "assumptions fix eps=" + format_number(*n) + " but the task interval is " +
                        format_number(interval) + " s");
      }
    } else {
      a = Formula::conj(a, Formula::cmp(Dialect::kHp, Relation::kEq, Term::var(eps),
                                        Term::number(format_number(interval))));
    }
  }
  return make_safety_formula(a, inputs, prog_st_to_hp(u.body), plant, Term::var(eps), safety);
}

}  // namespace hyplc
