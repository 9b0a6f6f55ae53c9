#include "hyplc/analysis.hpp"

#include <algorithm>

#include "hyplc/number_format.hpp"

namespace hyplc {

namespace {

std::set<Ident> set_union(const std::set<Ident>& a, const std::set<Ident>& b) {
  std::set<Ident> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

std::set<Ident> set_minus(const std::set<Ident>& a, const std::set<Ident>& b) {
  std::set<Ident> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

std::set<Ident> set_intersect(const std::set<Ident>& a, const std::set<Ident>& b) {
  std::set<Ident> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

void push_unique(std::vector<Ident>& v, const Ident& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

void term_order(const Term& t, std::vector<Ident>& out) {
  const auto& v = t.node().v;
  if (const auto* r = std::get_if<VarRef>(&v)) {
    push_unique(out, r->name);
  } else if (const auto* n = std::get_if<NegTerm>(&v)) {
    term_order(n->operand, out);
  } else if (const auto* b = std::get_if<BinaryTerm>(&v)) {
    term_order(b->lhs, out);
    term_order(b->rhs, out);
  }
}

void formula_order(const Formula& f, std::vector<Ident>& out) {
  const auto& v = f.node().v;
  if (const auto* c = std::get_if<Comparison>(&v)) {
    term_order(c->lhs, out);
    term_order(c->rhs, out);
  } else if (const auto* n = std::get_if<NotFormula>(&v)) {
    formula_order(n->operand, out);
  } else if (const auto* b = std::get_if<BinaryFormula>(&v)) {
    formula_order(b->lhs, out);
    formula_order(b->rhs, out);
  }
}

// Reads and writes in textual order.
void program_order(const HybridProgram& p, std::vector<Ident>& reads, std::vector<Ident>& writes) {
  const auto& v = p.node().v;
  if (const auto* a = std::get_if<HpAssign>(&v)) {
    term_order(a->value, reads);
    push_unique(writes, a->target);
  } else if (const auto* s = std::get_if<HpSeq>(&v)) {
    program_order(s->first, reads, writes);
    program_order(s->second, reads, writes);
  } else {
    const auto& c = std::get<HpChoice>(v);
    formula_order(c.guard, reads);
    program_order(c.then_branch, reads, writes);
    if (c.else_branch) program_order(*c.else_branch, reads, writes);
  }
}

[[noreturn]] void not_normal(const std::string& why, const Location& loc) {
  throw Error(ErrorKind::kNotNormalForm, why, loc);
}

bool is_number(const Term& t, double value) {
  const auto* n = std::get_if<NumberLit>(&t.node().v);
  return n && n->value == value;
}

bool is_var(const Term& t, const Ident& x) {
  const auto* r = std::get_if<VarRef>(&t.node().v);
  return r && r->name == x;
}

// `clock <= e` or `e >= clock`; returns e.
std::optional<Term> clock_bound(const Formula& f, const Ident& clock) {
  const auto* c = std::get_if<Comparison>(&f.node().v);
  if (!c) return std::nullopt;
  if (c->rel == Relation::kLe && is_var(c->lhs, clock)) return c->rhs;
  if (c->rel == Relation::kGe && is_var(c->rhs, clock)) return c->lhs;
  return std::nullopt;
}

struct SplitDomain {
  std::optional<Term> bound;
  std::optional<Formula> rest;
};

SplitDomain split_domain(const std::optional<Formula>& domain, const Ident& clock) {
  SplitDomain out;
  if (!domain) return out;
  std::vector<Formula> rest;
  for (const auto& q : conjuncts(*domain)) {
    if (!out.bound) {
      if (auto b = clock_bound(q, clock)) {
        out.bound = b;
        continue;
      }
    }
    rest.push_back(q);
  }
  if (!rest.empty()) out.rest = fold_conj(rest);
  return out;
}

}  // namespace

VarSets var_sets(const HybridProgram& p) {
  const auto& v = p.node().v;
  if (const auto* a = std::get_if<HpAssign>(&v)) {
    return VarSets{collect_vars(a->value), {a->target}, {a->target}};
  }
  if (const auto* s = std::get_if<HpSeq>(&v)) {
    VarSets a = var_sets(s->first);
    VarSets b = var_sets(s->second);
    return VarSets{set_union(a.free, set_minus(b.free, a.must_bound)), set_union(a.bound, b.bound),
                   set_union(a.must_bound, b.must_bound)};
  }
  const auto& c = std::get<HpChoice>(v);
  VarSets a = var_sets(c.then_branch);
  VarSets b = c.else_branch ? var_sets(*c.else_branch) : VarSets{};
  return VarSets{set_union(collect_vars(c.guard), set_union(a.free, b.free)), set_union(a.bound, b.bound),
                 set_intersect(a.must_bound, b.must_bound)};
}

IoClassification classify_io(const HybridProgram& ctrl, const std::vector<Ident>& declared_inputs,
                             const PlantSpec& plant) {
  VarSets vs = var_sets(ctrl);
  std::vector<Ident> reads;
  std::vector<Ident> writes;
  program_order(ctrl, reads, writes);

  IoClassification io;
  io.outputs = writes;
  auto is_output = [&](const Ident& x) { return vs.bound.count(x) > 0; };
  for (const auto& x : plant.state_vars()) {
    if (vs.free.count(x) && !is_output(x)) push_unique(io.inputs, x);
  }
  for (const auto& x : declared_inputs) {
    if (!is_output(x)) push_unique(io.inputs, x);
  }
  for (const auto& x : reads) {
    if (!vs.free.count(x) || is_output(x) || x == plant.clock) continue;
    if (std::find(io.inputs.begin(), io.inputs.end(), x) != io.inputs.end()) continue;
    io.params.push_back(x);
  }
  for (const auto& x : reads) {
    if (vs.free.count(x) && is_output(x)) io.conflicts.push_back(x);
  }
  return io;
}

EpsilonValue extract_epsilon(const Formula& a, const Ident& eps) {
  std::optional<double> found;
  for (const auto& q : conjuncts(a)) {
    const auto* c = std::get_if<Comparison>(&q.node().v);
    if (!c || c->rel != Relation::kEq) continue;
    const NumberLit* n = nullptr;
    if (is_var(c->lhs, eps)) n = std::get_if<NumberLit>(&c->rhs.node().v);
    if (!n && is_var(c->rhs, eps)) n = std::get_if<NumberLit>(&c->lhs.node().v);
    if (!n) continue;
    if (found && *found != n->value) {
      throw Error(ErrorKind::kConflictingEpsilon, "assumptions bind " + eps.str() + " to both " +
                                                      format_number(*found) + " and " + format_number(n->value));
    }
    found = n->value;
  }
  if (found) return *found;
  return SymbolicEpsilon{};
}

ScanCycleModel validate_scan_cycle_form(const DlSafetyFormula& f) {
  const auto* loop = std::get_if<dl::Loop>(&f.program.node().v);
  if (!loop) not_normal("box must contain a loop {in; ctrl; plant}*", f.program.location());
  std::vector<dl::Program> parts = dl::flatten_seq(loop->body);

  size_t i = 0;
  std::vector<Ident> inputs;
  for (; i < parts.size(); ++i) {
    const auto* r = std::get_if<dl::Random>(&parts[i].node().v);
    if (!r) break;
    if (std::find(inputs.begin(), inputs.end(), r->target) != inputs.end()) {
      not_normal("input '" + r->target.str() + "' is read twice", parts[i].location());
    }
    inputs.push_back(r->target);
  }

  const dl::Program& last = parts.back();
  const auto* ode = std::get_if<dl::Ode>(&last.node().v);
  if (!ode) not_normal("loop body must end with the plant ODE", last.location());
  if (parts.size() < i + 2) not_normal("missing clock reset", last.location());
  const dl::Program& reset = parts[parts.size() - 2];
  const auto* reset_assign = std::get_if<dl::Assign>(&reset.node().v);
  if (!reset_assign || !is_number(reset_assign->value, 0.0)) not_normal("missing clock reset", reset.location());
  const Ident clock = reset_assign->target;

  PlantSpec plant;
  plant.clock = clock;
  bool has_clock_ode = false;
  for (const auto& [x, rhs] : ode->equations) {
    if (x == clock) {
      if (!is_number(rhs, 1.0)) not_normal("clock " + clock.str() + " must evolve with " + clock.str() + "'=1", last.location());
      has_clock_ode = true;
    } else {
      plant.odes.emplace_back(x, rhs);
    }
  }
  if (!has_clock_ode) not_normal("missing clock ODE " + clock.str() + "'=1", last.location());
  SplitDomain dom = split_domain(ode->domain, clock);
  if (!dom.bound) not_normal("evolution domain lacks " + clock.str() + "<=eps", last.location());
  const Term& eps_term = *dom.bound;
  plant.domain = dom.rest;

  size_t ctrl_end = parts.size() - 2;
  if (i == ctrl_end) not_normal("loop body has no controller", reset.location());
  std::vector<HybridProgram> ctrl_parts;
  for (size_t k = i; k < ctrl_end; ++k) ctrl_parts.push_back(to_translatable(parts[k]));
  HybridProgram ctrl = ctrl_parts.back();
  for (size_t k = ctrl_parts.size() - 1; k-- > 0;) ctrl = HybridProgram::seq(ctrl_parts[k], ctrl);

  VarSets vs = var_sets(ctrl);
  if (vs.free.count(clock) || vs.bound.count(clock) ||
      std::find(inputs.begin(), inputs.end(), clock) != inputs.end()) {
    not_normal("clock " + clock.str() + " is used outside the plant", parts[i].location());
  }

  Epsilon eps{0.0};
  if (const auto* n = std::get_if<NumberLit>(&eps_term.node().v)) {
    eps.value = n->value;
  } else if (const auto* r = std::get_if<VarRef>(&eps_term.node().v)) {
    EpsilonValue v = extract_epsilon(f.assumptions, r->name);
    if (const auto* d = std::get_if<double>(&v)) {
      eps.value = *d;
    } else {
      eps.value = r->name;
    }
  } else {
    not_normal("scan cycle bound must be a number or a variable", last.location());
  }

  return ScanCycleModel{f.assumptions, inputs, ctrl, plant, eps, eps_term, f.safety};
}

PlantSpec extract_plant(const dl::Program& p, const Ident& clock) {
  std::vector<dl::Program> parts = dl::flatten_seq(p);
  if (parts.size() == 2) {
    const auto* a = std::get_if<dl::Assign>(&parts[0].node().v);
    if (!a || a->target != clock || !is_number(a->value, 0.0)) {
      not_normal("plant must be '" + clock.str() + ":=0; {...}' or a bare ODE", parts[0].location());
    }
  } else if (parts.size() != 1) {
    not_normal("plant must be a single ODE system", p.location());
  }
  const auto* ode = std::get_if<dl::Ode>(&parts.back().node().v);
  if (!ode) not_normal("plant must be an ODE system", parts.back().location());
  PlantSpec plant;
  plant.clock = clock;
  for (const auto& [x, rhs] : ode->equations) {
    if (x == clock) {
      if (!is_number(rhs, 1.0)) not_normal("clock must evolve with " + clock.str() + "'=1", parts.back().location());
      continue;
    }
    plant.odes.emplace_back(x, rhs);
  }
  plant.domain = split_domain(ode->domain, clock).rest;
  return plant;
}

std::string format_var_set(const std::set<Ident>& s) {
  return format_var_list(std::vector<Ident>(s.begin(), s.end()));
}

std::string format_var_list(const std::vector<Ident>& v) {
  std::string out = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].str();
  }
  return out + "}";
}

}  // namespace hyplc
