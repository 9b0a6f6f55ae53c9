#include "hyplc/sim.hpp"

#include <cmath>

#include "hyplc/dl.hpp"
#include "hyplc/number_format.hpp"
#include "hyplc/semantics.hpp"

namespace hyplc {

bool plant_is_affine(const PlantSpec& plant) {
  std::set<Ident> evolving;
  for (const auto& [x, rhs] : plant.odes) evolving.insert(x);
  evolving.insert(plant.clock);
  for (const auto& [x, rhs] : plant.odes) {
    for (const auto& y : collect_vars(rhs)) {
      if (evolving.count(y)) return false;
    }
  }
  return true;
}

namespace {

std::optional<std::string> violated_conjunct(const std::optional<Formula>& domain, const State& s) {
  if (!domain) return std::nullopt;
  for (const auto& q : conjuncts(*domain)) {
    if (!eval_formula(q, s)) return print_dl(q);
  }
  return std::nullopt;
}

double grid_time(double duration, int k, int n) {
  return k == n ? duration : duration * (static_cast<double>(k) / n);
}

}  // namespace

PlantStep integrate_plant(const PlantSpec& plant, const State& s, double duration,
                          const IntegratorConfig& cfg) {
  if (!(duration >= 0)) throw Error(ErrorKind::kInvalidArgument, "integration duration must be non-negative");
  if (cfg.substeps < 1) throw Error(ErrorKind::kInvalidArgument, "substeps must be at least 1");
  bool affine = plant_is_affine(plant);
  if (cfg.kind == IntegratorKind::kAffine && !affine) {
    throw Error(ErrorKind::kInvalidArgument, "affine integrator requested but a right-hand side reads plant state");
  }
  const int n = cfg.substeps;
  const double t0 = s.contains(plant.clock) ? s.get(plant.clock) : 0.0;
  State cur = s;
  cur.put(plant.clock, t0);

  if (auto bad = violated_conjunct(plant.domain, cur)) return {cur, DomainExit{0.0, *bad}};
  if (duration == 0) return {cur, std::nullopt};

  if (affine && cfg.kind != IntegratorKind::kRk4) {
    std::vector<double> x0;
    std::vector<double> rate;
    for (const auto& [x, rhs] : plant.odes) {
      x0.push_back(s.get(x));
      rate.push_back(eval_term(rhs, s));
    }
    for (int k = 1; k <= n; ++k) {
      double tk = grid_time(duration, k, n);
      for (size_t i = 0; i < plant.odes.size(); ++i) cur.put(plant.odes[i].first, x0[i] + rate[i] * tk);
      cur.put(plant.clock, t0 + tk);
      if (auto bad = violated_conjunct(plant.domain, cur)) return {cur, DomainExit{tk, *bad}};
    }
    return {cur, std::nullopt};
  }

  // Classic RK4 on the plant state; the clock is advanced exactly.
  const size_t dim = plant.odes.size();
  std::vector<double> y(dim);
  for (size_t i = 0; i < dim; ++i) y[i] = s.get(plant.odes[i].first);
  State scratch = cur;
  auto deriv = [&](const std::vector<double>& at, double t, std::vector<double>& out) {
    for (size_t i = 0; i < dim; ++i) scratch.put(plant.odes[i].first, at[i]);
    scratch.put(plant.clock, t);
    for (size_t i = 0; i < dim; ++i) out[i] = eval_term(plant.odes[i].second, scratch);
  };
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  double t_prev = 0;
  for (int k = 1; k <= n; ++k) {
    double tk = grid_time(duration, k, n);
    double step = tk - t_prev;
    double ta = t0 + t_prev;
    deriv(y, ta, k1);
    for (size_t i = 0; i < dim; ++i) tmp[i] = y[i] + step / 2 * k1[i];
    deriv(tmp, ta + step / 2, k2);
    for (size_t i = 0; i < dim; ++i) tmp[i] = y[i] + step / 2 * k2[i];
    deriv(tmp, ta + step / 2, k3);
    for (size_t i = 0; i < dim; ++i) tmp[i] = y[i] + step * k3[i];
    deriv(tmp, ta + step, k4);
    for (size_t i = 0; i < dim; ++i) y[i] += step / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    t_prev = tk;
    for (size_t i = 0; i < dim; ++i) cur.put(plant.odes[i].first, y[i]);
    cur.put(plant.clock, t0 + tk);
    if (auto bad = violated_conjunct(plant.domain, cur)) return {cur, DomainExit{tk, *bad}};
  }
  return {cur, std::nullopt};
}

InputProvider InputProvider::constant(std::map<Ident, double> values) {
  InputProvider p;
  p.kind_ = Kind::kConstant;
  p.constants_ = std::move(values);
  return p;
}

InputProvider InputProvider::csv(Trace trace) {
  InputProvider p;
  p.kind_ = Kind::kCsv;
  p.trace_ = std::move(trace);
  return p;
}

InputProvider InputProvider::uniform(std::map<Ident, std::pair<double, double>> ranges, std::uint64_t seed) {
  InputProvider p;
  p.kind_ = Kind::kUniform;
  p.ranges_ = std::move(ranges);
  p.rng_.seed(seed);
  return p;
}

std::vector<double> InputProvider::next(int cycle, const std::vector<Ident>& inputs) {
  std::vector<double> out;
  out.reserve(inputs.size());
  switch (kind_) {
    case Kind::kConstant:
      for (const auto& x : inputs) {
        auto it = constants_.find(x);
        if (it == constants_.end()) throw Error(ErrorKind::kMissingInput, "no value for input '" + x.str() + "'");
        out.push_back(it->second);
      }
      break;
    case Kind::kUniform:
      for (const auto& x : inputs) {
        auto it = ranges_.find(x);
        if (it == ranges_.end()) throw Error(ErrorKind::kMissingInput, "no range for input '" + x.str() + "'");
        out.push_back(std::uniform_real_distribution<double>(it->second.first, it->second.second)(rng_));
      }
      break;
    case Kind::kCsv: {
      int cyc = trace_.column("cycle");
      const std::vector<double>* row = nullptr;
      for (const auto& r : trace_.rows) {
        if (r[cyc] == cycle) {
          row = &r;
          break;
        }
      }
      if (!row) throw Error(ErrorKind::kMissingInput, "input trace has no row for cycle " + std::to_string(cycle));
      for (const auto& x : inputs) {
        int c = trace_.column(x.str());
        if (c < 0) throw Error(ErrorKind::kMissingInput, "input trace has no column '" + x.str() + "'");
        out.push_back((*row)[c]);
      }
      break;
    }
  }
  return out;
}

std::vector<CycleRecord> simulate(const ScanCycleModel& m, const StStatement& st_body, InputProvider& inputs,
                                  const State& initial, int cycles, const SimConfig& cfg) {
  double eps = 0;
  if (cfg.epsilon) {
    eps = *cfg.epsilon;
  } else if (m.epsilon.concrete()) {
    eps = m.epsilon.seconds();
  } else if (initial.contains(std::get<Ident>(m.epsilon.value))) {
    eps = initial.get(std::get<Ident>(m.epsilon.value));
  } else {
    throw Error(ErrorKind::kMissingEpsilon, "scan cycle duration is symbolic; bind '" +
                                                std::get<Ident>(m.epsilon.value).str() + "' or pass an override");
  }
  if (!(eps > 0)) throw Error(ErrorKind::kInvalidArgument, "scan cycle duration must be positive");
  State start = initial;
  if (!m.epsilon.concrete() && !start.contains(std::get<Ident>(m.epsilon.value))) {
    start.put(std::get<Ident>(m.epsilon.value), eps);
  }
  if (cfg.check_assumptions && !eval_formula(m.assumptions, start)) {
    throw Error(ErrorKind::kInvalidArgument, "initial state violates the assumptions");
  }

  std::vector<CycleRecord> run;
  State sigma = start;
  if (!sigma.contains(m.plant.clock)) sigma.put(m.plant.clock, 0.0);
  for (int c = 1; c <= cycles; ++c) {
    std::vector<double> values = inputs.next(c, m.inputs);
    for (size_t i = 0; i < m.inputs.size(); ++i) sigma.put(m.inputs[i], values[i]);
    CycleRecord rec{c, (c - 1) * eps, sigma, run_st(st_body, sigma), {}, std::nullopt};
    State before_plant = rec.post_ctrl.set(m.plant.clock, 0.0);
    PlantStep step = integrate_plant(m.plant, before_plant, eps, cfg.integrator);
    rec.post_plant = step.state;
    rec.domain_exit = step.exit;
    sigma = rec.post_plant;
    run.push_back(std::move(rec));
    if (step.exit) break;
  }
  return run;
}

std::vector<SafetyViolation> check_safety(const std::vector<CycleRecord>& run, const Formula& safety) {
  std::vector<SafetyViolation> out;
  for (const auto& r : run) {
    if (!eval_formula(safety, r.pre)) out.push_back({r.index, "pre", r.pre});
    if (!eval_formula(safety, r.post_plant)) out.push_back({r.index, "post_plant", r.post_plant});
  }
  return out;
}

Trace run_to_trace(const std::vector<CycleRecord>& run, const IoClassification& io) {
  Trace t;
  t.columns = {"cycle", "t"};
  for (const auto* group : {&io.inputs, &io.params, &io.outputs}) {
    for (const auto& x : *group) t.columns.push_back(x.str());
  }
  for (const auto& r : run) {
    std::vector<double> row{static_cast<double>(r.index), r.t_abs};
    for (const auto& x : io.inputs) row.push_back(r.pre.get(x));
    for (const auto& x : io.params) row.push_back(r.pre.get(x));
    for (const auto& x : io.outputs) row.push_back(r.post_ctrl.get(x));
    t.rows.push_back(std::move(row));
  }
  return t;
}

ComplianceReport check_compliance(const HybridProgram& ctrl, const Trace& trace, const IoClassification& io) {
  if (!fully_complemented(ctrl)) {
    throw Error(ErrorKind::kNondeterministicCtrl,
                "controller has a default choice; compliance needs a deterministic controller");
  }
  std::vector<std::string> missing;
  auto need = [&](const std::string& c) {
    if (trace.column(c) < 0) missing.push_back(c);
  };
  need("cycle");
  for (const auto* group : {&io.inputs, &io.outputs, &io.params}) {
    for (const auto& x : *group) need(x.str());
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorKind::kSchemaError, "trace lacks columns: " + list);
  }

  std::set<std::string> outputs;
  for (const auto& x : io.outputs) outputs.insert(x.str());
  std::vector<std::pair<Ident, int>> sensor_cols;
  for (size_t c = 0; c < trace.columns.size(); ++c) {
    const std::string& name = trace.columns[c];
    if (name == "cycle" || name == "t" || outputs.count(name) || !is_valid_ident(name)) continue;
    sensor_cols.emplace_back(Ident(name), static_cast<int>(c));
  }
  std::vector<int> out_cols;
  for (const auto& x : io.outputs) out_cols.push_back(trace.column(x.str()));
  const int cyc = trace.column("cycle");

  ComplianceReport report;
  std::vector<double> prior;
  std::optional<ComplianceInstance> open;
  for (const auto& row : trace.rows) {
    ++report.checked;
    if (prior.empty()) {
      for (int c : out_cols) prior.push_back(row[c]);
    }
    State s;
    for (const auto& [x, c] : sensor_cols) s.put(x, row[c]);
    for (size_t i = 0; i < io.outputs.size(); ++i) s.put(io.outputs[i], prior[i]);
    ReachSet r = hp_reachable(ctrl, s);
    const State& expected = r.states().front();

    std::string mismatch;
    for (size_t i = 0; i < io.outputs.size(); ++i) {
      double want = expected.get(io.outputs[i]);
      double got = row[out_cols[i]];
      prior[i] = want;
      if (want != got) {
        if (!mismatch.empty()) mismatch += ", ";
        mismatch += io.outputs[i].str() + " expected " + format_number(want) + " recorded " + format_number(got);
      }
    }
    int cycle = static_cast<int>(row[cyc]);
    if (!mismatch.empty()) {
      if (open) {
        open->end_cycle = cycle;
      } else {
        open = ComplianceInstance{cycle, cycle, mismatch};
      }
    } else if (open) {
      report.instances.push_back(*open);
      open.reset();
    }
  }
  if (open) report.instances.push_back(*open);
  return report;
}

std::string ComplianceReport::to_text() const {
  std::string out = "# actuator values before the first row are taken from that row\n";
  out += "checked=" + std::to_string(checked) + "\n";
  for (const auto& i : instances) {
    out += "instance cycles=" + std::to_string(i.start_cycle) + ".." + std::to_string(i.end_cycle) + ": " +
           i.description + "\n";
  }
  out += "instances=" + std::to_string(instances.size()) + "\n";
  return out;
}

}  // namespace hyplc
