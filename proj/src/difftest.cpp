#include <bit>
#include <cmath>
#include <random>

#include "hyplc/compiler.hpp"
#include "hyplc/dl.hpp"
#include "hyplc/number_format.hpp"
#include "hyplc/semantics.hpp"
#include "hyplc/st.hpp"

namespace hyplc {

namespace {

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg.max_depth < 1) throw Error(ErrorKind::kInvalidArgument, "max_depth must be at least 1");
    if (cfg.var_pool.empty() || cfg.literal_pool.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "generator pools must be non-empty");
    }
  }

  Term term() { return term(cfg_.max_term_depth); }
  Formula formula(Dialect d) { return formula(d, cfg_.max_formula_depth); }

  StStatement st() {
    choices_ = 0;
    return st(cfg_.max_depth);
  }
  HybridProgram hp() {
    choices_ = 0;
    return hp(cfg_.max_depth);
  }

  State state() {
    State s;
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    for (const auto& x : cfg_.var_pool) {
      double v = coin() ? pick(cfg_.literal_pool) : uni(rng_);
      if (coin(0.25)) v = -v;
      s.put(x, v);
    }
    return s;
  }

 private:
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng_)];
  }

  int weighted(std::initializer_list<int> weights) {
    std::discrete_distribution<int> d(weights.begin(), weights.end());
    return d(rng_);
  }

  Term literal() {
    double v = pick(cfg_.literal_pool);
    Term n = Term::number(format_number(std::fabs(v)));
    return std::signbit(v) ? Term::neg(n) : n;
  }

  Term atom() { return coin(0.6) ? Term::var(pick(cfg_.var_pool)) : literal(); }

  Term term(int depth) {
    if (depth <= 1 || coin(0.35)) return atom();
    switch (weighted({1, 3, 3, 3, 2, 1})) {
      case 0: return Term::neg(term(depth - 1));
      case 1: return Term::binary(BinaryOp::kAdd, term(depth - 1), term(depth - 1));
      case 2: return Term::binary(BinaryOp::kSub, term(depth - 1), term(depth - 1));
      case 3: return Term::binary(BinaryOp::kMul, term(depth - 1), term(depth - 1));
      case 4: return Term::binary(BinaryOp::kDiv, term(depth - 1), term(depth - 1));
      default: return Term::binary(BinaryOp::kPow, term(depth - 1), literal());
    }
  }

  Formula comparison(Dialect d) {
    static constexpr Relation kRels[] = {Relation::kEq, Relation::kNe, Relation::kGt,
                                         Relation::kGe, Relation::kLt, Relation::kLe};
    Relation rel = kRels[std::uniform_int_distribution<int>(0, 5)(rng_)];
    return Formula::cmp(d, rel, term(2), term(2));
  }

  Formula formula(Dialect d, int depth) {
    if (depth <= 1) return weighted({8, 1}) == 0 ? comparison(d) : Formula::constant(d, coin());
    switch (weighted({3, 2, 3, 3, 1, d == Dialect::kHp ? 1 : 0})) {
      case 0: return comparison(d);
      case 1: return Formula::negate(formula(d, depth - 1));
      case 2: return Formula::conj(formula(d, depth - 1), formula(d, depth - 1));
      case 3: return Formula::disj(formula(d, depth - 1), formula(d, depth - 1));
      case 4: {
        Connective op = d == Dialect::kSt ? Connective::kXor : Connective::kImply;
        return Formula::binary(op, formula(d, depth - 1), formula(d, depth - 1));
      }
      default: return Formula::binary(Connective::kEquiv, formula(d, depth - 1), formula(d, depth - 1));
    }
  }

  Ident target() { return pick(cfg_.var_pool); }

  // The head of a sequence is never itself a sequence, so trees come out
  // right-nested like the parsers build them.
  StStatement st(int depth, bool allow_seq = true) {
    const GenWeights& w = cfg_.weights;
    bool can_branch = choices_ < cfg_.max_choices;
    if (depth <= 1) return StStatement::assign(target(), term());
    switch (weighted({w.assign, allow_seq ? w.seq : 0, can_branch ? w.if_then_else : 0, can_branch ? w.if_then : 0})) {
      case 0: return StStatement::assign(target(), term());
      case 1: {
        StStatement a = st(depth - 1, false);
        return StStatement::seq(a, st(depth - 1));
      }
      case 2: {
        ++choices_;
        Formula c = formula(Dialect::kSt);
        StStatement a = st(depth - 1);
        return StStatement::if_then_else(c, a, st(depth - 1));
      }
      default: {
        ++choices_;
        Formula c = formula(Dialect::kSt);
        return StStatement::if_then(c, st(depth - 1));
      }
    }
  }

  HybridProgram hp(int depth, bool allow_seq = true) {
    const GenWeights& w = cfg_.weights;
    bool can_branch = choices_ < cfg_.max_choices;
    if (depth <= 1) return HybridProgram::assign(target(), term());
    int pick_construct = weighted({w.assign, allow_seq ? w.seq : 0, can_branch ? w.if_then_else : 0,
                                   can_branch ? w.if_then : 0, can_branch ? w.default_choice : 0});
    switch (pick_construct) {
      case 0: return HybridProgram::assign(target(), term());
      case 1: {
        HybridProgram a = hp(depth - 1, false);
        return HybridProgram::seq(a, hp(depth - 1));
      }
      default: {
        ++choices_;
        Formula g = formula(Dialect::kHp);
        HybridProgram a = hp(depth - 1);
        if (pick_construct == 3) return HybridProgram::choice(g, a, std::nullopt, true);
        return HybridProgram::choice(g, a, hp(depth - 1), pick_construct == 2);
      }
    }
  }

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  int choices_ = 0;
};

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool redrawable(const Error& e) {
  return e.kind() == ErrorKind::kDivisionByZero || e.kind() == ErrorKind::kDomainError;
}

}  // namespace

Term gen_term(const GenConfig& cfg) { return Generator(cfg).term(); }
Formula gen_formula(const GenConfig& cfg, Dialect d) { return Generator(cfg).formula(d); }
StStatement gen_st(const GenConfig& cfg) { return Generator(cfg).st(); }
HybridProgram gen_hp(const GenConfig& cfg) { return Generator(cfg).hp(); }
State gen_state(const GenConfig& cfg) { return Generator(cfg).state(); }

char diff_kind_letter(DiffKind k) {
  switch (k) {
    case DiffKind::kStToHp: return 'a';
    case DiffKind::kHpToSt: return 'b';
    case DiffKind::kExpr: return 'c';
    case DiffKind::kDeterministic: return 'd';
  }
  return '?';
}

CheckResult check_st_to_hp(const StStatement& s, const State& sigma) {
  State out = run_st(s, sigma);
  ReachSet r = hp_reachable(prog_st_to_hp(s), sigma);
  if (r.contains(out)) return std::nullopt;
  return "ST result " + out.to_string() + " not reachable by the compiled program (" +
         std::to_string(r.size()) + " reachable states)";
}

CheckResult check_hp_to_st(const HybridProgram& p, const State& sigma) {
  State out = run_st(prog_hp_to_st(p), sigma);
  ReachSet r = hp_reachable(p, sigma);
  if (r.contains(out)) return std::nullopt;
  return "compiled ST result " + out.to_string() + " not reachable by the source program";
}

CheckResult check_deterministic(const HybridProgram& p, const State& sigma) {
  ReachSet r = hp_reachable(p, sigma);
  State out = run_st(prog_hp_to_st(p), sigma);
  if (r.size() != 1) return "expected one reachable state, got " + std::to_string(r.size());
  if (!(r.states().front() == out)) return "reachable state differs from the ST run " + out.to_string();
  return std::nullopt;
}

CheckResult check_term_equivalence(const Term& t, Dialect from, const State& sigma) {
  Term target = from == Dialect::kSt ? parse_dl_term(print_dl(term_st_to_hp(t)))
                                     : parse_st_term(print_st_term(term_hp_to_st(t)));
  double a = eval_term(t, sigma);
  double b = eval_term(target, sigma);
  if (same_bits(a, b)) return std::nullopt;
  return "term values differ: " + format_number(a) + " vs " + format_number(b);
}

CheckResult check_formula_equivalence(const Formula& f, const State& sigma) {
  Formula target = f.dialect() == Dialect::kSt ? parse_dl_formula(print_dl(formula_st_to_hp(f)))
                                               : parse_st_formula(print_st_formula(formula_hp_to_st(f)));
  bool a = eval_formula(f, sigma);
  bool b = eval_formula(target, sigma);
  if (a == b) return std::nullopt;
  return std::string("formula values differ: ") + (a ? "true" : "false") + " vs " + (b ? "true" : "false");
}

namespace {

constexpr int kMaxRedraws = 200;

// Draws (subject, state) pairs until evaluation stays within the reals, then
// runs `check`. Returns the failure text, if any.
template <class Draw, class Check, class Describe>
std::optional<std::pair<std::string, std::string>> run_check(Generator& g, Draw draw, Check check,
                                                             Describe describe, std::string& program) {
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    auto subject = draw();
    State sigma = g.state();
    try {
      CheckResult r = check(subject, sigma);
      if (!r) return std::nullopt;
      program = describe(subject);
      return std::make_pair(*r, sigma.to_string());
    } catch (const Error& e) {
      if (!redrawable(e)) {
        program = describe(subject);
        return std::make_pair(std::string(to_string(e.kind())) + ": " + e.message(), sigma.to_string());
      }
    }
  }
  return std::nullopt;
}

std::optional<DiffFailure> run_trial(const GenConfig& base, std::uint64_t seed) {
  GenConfig cfg = base;
  cfg.seed = seed;
  Generator g(cfg);
  std::string program;
  auto fail = [&](DiffKind k, const std::pair<std::string, std::string>& r) {
    return DiffFailure{seed, k, program, r.second, r.first};
  };

  auto st_text = [](const StStatement& s) { return print_st_statement(s); };
  auto hp_text = [](const HybridProgram& p) { return print_dl(p); };

  if (auto r = run_check(g, [&] { return g.st(); }, check_st_to_hp, st_text, program)) {
    return fail(DiffKind::kStToHp, *r);
  }
  HybridProgram last_hp = g.hp();
  auto draw_hp = [&] {
    last_hp = g.hp();
    return last_hp;
  };
  if (auto r = run_check(g, draw_hp, check_hp_to_st, hp_text, program)) return fail(DiffKind::kHpToSt, *r);
  if (fully_complemented(last_hp)) {
    if (auto r = run_check(g, [&] { return last_hp; }, check_deterministic, hp_text, program)) {
      return fail(DiffKind::kDeterministic, *r);
    }
  }
  for (Dialect d : {Dialect::kSt, Dialect::kHp}) {
    auto check_term = [d](const Term& t, const State& s) { return check_term_equivalence(t, d, s); };
    auto term_text = [d](const Term& t) { return d == Dialect::kSt ? print_st_term(t) : print_dl(t); };
    if (auto r = run_check(g, [&] { return g.term(); }, check_term, term_text, program)) {
      return fail(DiffKind::kExpr, *r);
    }
    auto formula_text = [](const Formula& f) {
      return f.dialect() == Dialect::kSt ? print_st_formula(f) : print_dl(f);
    };
    if (auto r = run_check(g, [&] { return g.formula(d); }, check_formula_equivalence, formula_text, program)) {
      return fail(DiffKind::kExpr, *r);
    }
  }
  return std::nullopt;
}

}  // namespace

DiffReport difftest(const GenConfig& cfg, std::size_t n) {
  DiffReport report;
  report.total = n;
  report.passed.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto failure = run_trial(cfg, cfg.seed + i);
    report.passed.push_back(!failure);
    if (failure) report.failures.push_back(std::move(*failure));
  }
  return report;
}

std::string DiffReport::to_text() const {
  std::string out;
  std::size_t next = 0;
  for (std::size_t i = 0; i < passed.size(); ++i) {
    if (passed[i]) {
      out += "PASS\n";
      continue;
    }
    const DiffFailure& f = failures[next++];
    out += "FAIL seed=" + std::to_string(f.seed) + " kind=" + diff_kind_letter(f.kind) + "\n";
    out += "  program: " + f.program + "\n";
    out += "  state: " + f.state + "\n";
    out += "  detail: " + f.detail + "\n";
  }
  out += "total=" + std::to_string(total) + " failed=" + std::to_string(failed()) + "\n";
  return out;
}

}  // namespace hyplc
