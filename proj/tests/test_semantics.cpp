#include <cmath>
#include <cstring>
#include <functional>
#include <fstream>
#include <sstream>

#include "builders.hpp"
#include "doctest.h"
#include "hyplc/analysis.hpp"
#include "hyplc/compiler.hpp"
#include "hyplc/semantics.hpp"
#include "hyplc/st.hpp"

using namespace hyplc;
using namespace build;

namespace {

std::string corpus(const std::string& name) {
  std::ifstream in(std::string(HYPLC_CORPUS_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorKind::kIoError, "");
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("eval_term") {
  CHECK(eval_term(add(v("x"), n("3")), State{{"x", 2}}) == 5);
  double st = eval_term(parse_st_term("2**3"), State{});
  double hp = eval_term(parse_dl_term("2^3"), State{});
  CHECK(st == 8);
  CHECK(same_bits(st, hp));
  CHECK(eval_term(parse_dl_term("(HH-x1)/eps"), State{{"x1", 790}, {"HH", 1000}, {"eps", 10}}) == 21);
  // unary minus binds tighter than the power
  CHECK(eval_term(parse_dl_term("-x^2"), State{{"x", 3}}) == 9);
  CHECK(eval_term(parse_dl_term("-(x^2)"), State{{"x", 3}}) == -9);
  CHECK(eval_term(parse_dl_term("(-2)^3"), State{}) == -8);
  CHECK(eval_term(parse_dl_term("0^0"), State{}) == 1);
  CHECK(error_of([] { eval_term(parse_dl_term("y"), State{}); }).kind() == ErrorKind::kUnboundVariable);
  CHECK(error_of([] { eval_term(parse_dl_term("1/(x-x)"), State{{"x", 4}}); }).kind() == ErrorKind::kDivisionByZero);
  CHECK(error_of([] { eval_term(parse_dl_term("0^(0-1)"), State{}); }).kind() == ErrorKind::kDivisionByZero);
  CHECK(error_of([] { eval_term(parse_dl_term("(0-2)^0.5"), State{}); }).kind() == ErrorKind::kDomainError);
}

TEST_CASE("eval_formula") {
  CHECK_FALSE(eval_formula(parse_st_formula("TRUE AND FALSE"), State{}));
  CHECK(eval_formula(parse_dl_formula("x1 >= H1"), State{{"x1", 900}, {"H1", 800}}));
  CHECK(eval_formula(parse_dl_formula("x>1 -> x>0"), State{{"x", 0}}));
  CHECK_FALSE(eval_formula(parse_dl_formula("x>0 <-> x>1"), State{{"x", 0.5}}));
  CHECK(eval_formula(parse_st_formula("x>0 XOR x>1"), State{{"x", 0.5}}));
  CHECK(eval_formula(parse_dl_formula("x != 1"), State{{"x", 2}}));
  // strict: the error in the right operand surfaces even when the left decides
  CHECK(error_of([] { eval_formula(parse_dl_formula("true | 1/x > 0"), State{{"x", 0}}); }).kind() ==
        ErrorKind::kDivisionByZero);
  CHECK(error_of([] { eval_formula(parse_st_formula("FALSE AND 1/x > 0"), State{{"x", 0}}); }).kind() ==
        ErrorKind::kDivisionByZero);
}

TEST_CASE("run_st") {
  StStatement s = parse_st_statements("V1:=0; IF x1>=H1 THEN V1:=1; END_IF;");
  State out = run_st(s, State{{"x1", 5}, {"H1", 4}, {"V1", 7}});
  CHECK(out == State{{"x1", 5}, {"H1", 4}, {"V1", 1}});

  State sigma{{"x", 3.25}};
  CHECK(run_st(parse_st_statements("x:=x;"), sigma) == sigma);

  State tanks_st{{"x1", 900}, {"H1", 800}, {"L1", 500}, {"x2", 600}, {"L2", 500}, {"LL", 250}, {"FL", 0.1},
             {"H2", 800}, {"f2", 30},  {"V1", 1},   {"V2", 1},   {"P", 1},    {"f1", 0}};
  State r = run_st(parse_st(corpus("tanks_st.st")).body, tanks_st);
  CHECK(r.get("V1") == 0);
  CHECK(r.get("V2") == 1);
  CHECK(r.get("P") == 1);

  // sequential update order
  CHECK(run_st(parse_st_statements("x:=1; y:=x+1; x:=y*10;"), State{{"x", 0}, {"y", 0}}) ==
        State{{"x", 20}, {"y", 2}});

  Error e = error_of([] { run_st(parse_st_statements("x:=1;\n  y:=1/z;"), State{{"x", 0}, {"y", 0}, {"z", 0}}); });
  CHECK(e.kind() == ErrorKind::kDivisionByZero);
  CHECK(e.location().line == 2);
  CHECK(e.location().column == 3);
}

TEST_CASE("run_st on deep nesting") {
  StStatement s = StStatement::assign("x", add(v("x"), n("1")));
  for (int i = 0; i < 20000; ++i) s = StStatement::seq(StStatement::assign("x", add(v("x"), n("1"))), s);
  CHECK(run_st(s, State{{"x", 0}}).get("x") == 20001);
}

TEST_CASE("hp_reachable") {
  State sigma{{"x", 2}, {"y", 9}};
  ReachSet a = hp_reachable(parse_dl_hybrid_program("{?x>=1; y:=1; ++ ?!(x>=1); y:=0;}"), sigma);
  REQUIRE(a.size() == 1);
  CHECK(a.states()[0] == State{{"x", 2}, {"y", 1}});

  ReachSet b = hp_reachable(parse_dl_hybrid_program("{?x>=1; y:=1; ++ y:=0;}"), sigma);
  CHECK(b.size() == 2);
  CHECK(b.contains(State{{"x", 2}, {"y", 1}}));
  CHECK(b.contains(State{{"x", 2}, {"y", 0}}));

  ReachSet c = hp_reachable(hp::asg("x", n("1")), sigma);
  CHECK(c.size() == 1);
  CHECK(c.contains(sigma.set("x", 1)));

  // if-then with false guard leaves the state
  CHECK(hp_reachable(parse_dl_hybrid_program("{?x>5; y:=1; ++ ?!(x>5);}"), sigma).contains(sigma));

  // duplicates collapse
  ReachSet d = hp_reachable(parse_dl_hybrid_program("{?x>=1; y:=1; ++ y:=1;}"), sigma);
  CHECK(d.size() == 1);

  // guards read the state left by the previous statement
  ReachSet e = hp_reachable(parse_dl_hybrid_program("x:=0; {?x>=1; y:=1; ++ ?!(x>=1); y:=0;}"), sigma);
  REQUIRE(e.size() == 1);
  CHECK(e.states()[0].get("y") == 0);
}

TEST_CASE("reachability properties on generated programs") {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    HybridProgram p = gen_hp(cfg);
    State sigma = gen_state(cfg);
    try {
      ReachSet r = hp_reachable(p, sigma);
      CHECK_FALSE(r.empty());
      CHECK(static_cast<double>(r.size()) <= std::ldexp(1.0, choice_count(p)));
      VarSets vs = var_sets(p);
      for (const State& w : r) {
        for (const auto& [x, val] : sigma.bindings()) {
          if (!vs.bound.count(x)) CHECK(same_bits(w.get(x), val));
        }
      }
      StStatement s = prog_hp_to_st(p);
      State o1 = run_st(s, sigma), o2 = run_st(s, sigma);
      CHECK(o1 == o2);
      for (const auto& [x, val] : sigma.bindings()) {
        if (!vs.bound.count(x)) CHECK(same_bits(o1.get(x), val));
      }
      if (fully_complemented(p)) CHECK(r.size() == 1);
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::kDivisionByZero || e.kind() == ErrorKind::kDomainError));
    }
  }
}

TEST_CASE("default choice widens the complemented one") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    Formula g = gen_formula(cfg, Dialect::kHp);
    cfg.seed += 7777;
    HybridProgram a = gen_hp(cfg);
    cfg.seed += 7777;
    HybridProgram b = gen_hp(cfg);
    State sigma = gen_state(cfg);
    try {
      ReachSet wide = hp_reachable(hp::dflt(g, a, b), sigma);
      for (const State& w : hp_reachable(hp::ite(g, a, b), sigma)) CHECK(wide.contains(w));
    } catch (const Error&) {
    }
  }
}

TEST_CASE("generator") {
  GenConfig one;
  one.seed = 0;
  one.max_depth = 1;
  CHECK(std::holds_alternative<StAssign>(gen_st(one).node().v));
  CHECK(std::holds_alternative<HpAssign>(gen_hp(one).node().v));

  GenConfig cfg;
  cfg.seed = 42;
  CHECK(gen_st(cfg) == gen_st(cfg));
  CHECK(gen_hp(cfg) == gen_hp(cfg));
  CHECK(gen_term(cfg) == gen_term(cfg));
  CHECK(gen_state(cfg) == gen_state(cfg));

  bool st_seen[4] = {}, hp_seen[5] = {};
  std::function<void(const StStatement&)> walk_st = [&](const StStatement& s) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, StAssign>) st_seen[0] = true;
          if constexpr (std::is_same_v<T, StSeq>) {
            st_seen[1] = true;
            walk_st(n.first);
            walk_st(n.second);
          }
          if constexpr (std::is_same_v<T, StIfThenElse>) {
            st_seen[2] = true;
            walk_st(n.then_branch);
            walk_st(n.else_branch);
          }
          if constexpr (std::is_same_v<T, StIfThen>) {
            st_seen[3] = true;
            walk_st(n.then_branch);
          }
        },
        s.node().v);
  };
  std::function<void(const HybridProgram&)> walk_hp = [&](const HybridProgram& p) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, HpAssign>) hp_seen[0] = true;
          if constexpr (std::is_same_v<T, HpSeq>) {
            hp_seen[1] = true;
            walk_hp(n.first);
            walk_hp(n.second);
          }
          if constexpr (std::is_same_v<T, HpChoice>) {
            hp_seen[!n.complemented ? 4 : n.else_branch ? 2 : 3] = true;
            walk_hp(n.then_branch);
            if (n.else_branch) walk_hp(*n.else_branch);
          }
        },
        p.node().v);
  };
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GenConfig c;
    c.seed = seed;
    StStatement s = gen_st(c);
    HybridProgram p = gen_hp(c);
    CHECK(statement_depth(s) <= c.max_depth);
    CHECK(program_depth(p) <= c.max_depth);
    CHECK(choice_count(p) <= c.max_choices);
    walk_st(s);
    walk_hp(p);
    State st = gen_state(c);
    CHECK(st.size() == c.var_pool.size());
  }
  for (bool b : st_seen) CHECK(b);
  for (bool b : hp_seen) CHECK(b);
}

TEST_CASE("difftest") {
  GenConfig cfg;
  DiffReport empty = difftest(cfg, 0);
  CHECK(empty.failed() == 0);
  CHECK(empty.to_text() == "total=0 failed=0\n");

  CHECK_FALSE(check_st_to_hp(StStatement::assign("x", n("1")), State{{"x", 0}}));
  CHECK_FALSE(check_hp_to_st(hp::asg("x", n("1")), State{{"x", 0}}));

  cfg.seed = 1;
  DiffReport r = difftest(cfg, 500);
  CHECK(r.total == 500);
  CHECK(r.failed() == 0);
  std::string text = r.to_text();
  CHECK(text.rfind("total=500 failed=0\n") == text.size() - std::string("total=500 failed=0\n").size());
  CHECK(text.substr(0, 5) == "PASS\n");
  CHECK(difftest(cfg, 50).to_text() == difftest(cfg, 50).to_text());

  // the determinism check rejects a program with two outcomes
  CHECK(check_deterministic(parse_dl_hybrid_program("{?x>=1; y:=1; ++ y:=0;}"), State{{"x", 2}, {"y", 9}}));
  CHECK_FALSE(check_deterministic(parse_dl_hybrid_program("{?x>=1; y:=1; ++ ?!(x>=1); y:=0;}"),
                                  State{{"x", 2}, {"y", 9}}));
  CHECK(diff_kind_letter(DiffKind::kStToHp) == 'a');
  CHECK(diff_kind_letter(DiffKind::kDeterministic) == 'd');
}

TEST_CASE("expression equivalence checks") {
  int checked = 0;
  auto holds = [&](const std::function<CheckResult()>& f) {
    try {
      CheckResult r = f();
      ++checked;
      return !r;
    } catch (const Error& e) {
      return e.kind() == ErrorKind::kDivisionByZero || e.kind() == ErrorKind::kDomainError;
    }
  };
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    State sigma = gen_state(cfg);
    Term t = gen_term(cfg);
    Formula fs = gen_formula(cfg, Dialect::kSt), fh = gen_formula(cfg, Dialect::kHp);
    CHECK(holds([&] { return check_term_equivalence(t, Dialect::kSt, sigma); }));
    CHECK(holds([&] { return check_term_equivalence(t, Dialect::kHp, sigma); }));
    CHECK(holds([&] { return check_formula_equivalence(fs, sigma); }));
    CHECK(holds([&] { return check_formula_equivalence(fh, sigma); }));
  }
  CHECK(checked > 1500);
}
