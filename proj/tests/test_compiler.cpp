#include <fstream>
#include <sstream>

#include "builders.hpp"
#include "doctest.h"
#include "hyplc/analysis.hpp"
#include "hyplc/compiler.hpp"
#include "hyplc/semantics.hpp"

using namespace hyplc;
using namespace build;

namespace {

std::string corpus(const std::string& name) {
  std::ifstream in(std::string(HYPLC_CORPUS_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Formula sc(Relation r, Term a, Term b) { return Formula::cmp(Dialect::kSt, r, a, b); }

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kIoError;
}

PlantSpec tanks_hp_plant() { return extract_plant(parse_dl_program(corpus("tanks_hp_plant.dlhp"))); }

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

}  // namespace

TEST_CASE("terms are untouched") {
  Term t = dvd(sub(v("HH"), v("x1")), v("eps"));
  CHECK(term_st_to_hp(t) == t);
  CHECK(term_hp_to_st(t) == t);
  CHECK(print_st_term(term_hp_to_st(pw(v("x"), n("2")))) == "x**2");
  CHECK(print_st_term(Term::neg(v("f2"))) == "-f2");
}

TEST_CASE("formula rules") {
  CHECK(formula_st_to_hp(sc(Relation::kGe, v("x1"), v("H1"))) == ge(v("x1"), v("H1")));
  CHECK(formula_st_to_hp(Formula::constant(Dialect::kSt, true)) == Formula::constant(Dialect::kHp, true));
  Formula a = sc(Relation::kGt, v("a"), n("0")), b = sc(Relation::kNe, v("b"), n("1"));
  Formula ha = gt(v("a"), n("0")), hb = cmp(Relation::kNe, v("b"), n("1"));
  CHECK(formula_st_to_hp(Formula::binary(Connective::kXor, a, b)) ==
        disj(Formula::conj(neg(ha), hb), Formula::conj(neg(hb), ha)));
  CHECK(formula_hp_to_st(Formula::binary(Connective::kImply, ha, hb)) == Formula::disj(Formula::negate(a), b));
  CHECK(formula_hp_to_st(Formula::binary(Connective::kEquiv, ha, hb)) ==
        Formula::disj(Formula::conj(Formula::negate(a), Formula::negate(b)), Formula::conj(a, b)));
  CHECK(formula_hp_to_st(ge(v("x1"), n("0"))) == sc(Relation::kGe, v("x1"), n("0")));
  CHECK(print_st_formula(formula_hp_to_st(hb)) == "b <> 1");
  // nested rewriting reaches inner connectives
  Formula nested = Formula::negate(Formula::binary(Connective::kXor, a, Formula::binary(Connective::kXor, a, b)));
  CHECK(formula_st_to_hp(nested).dialect() == Dialect::kHp);
}

TEST_CASE("XOR over Boolean corners") {
  Formula f = Formula::binary(Connective::kXor, sc(Relation::kEq, v("a"), n("1")), sc(Relation::kEq, v("b"), n("1")));
  Formula g = formula_st_to_hp(f);
  for (double a : {0.0, 1.0}) {
    for (double b : {0.0, 1.0}) {
      State s{{"a", a}, {"b", b}};
      CHECK(eval_formula(g, s) == (a != b));
      CHECK(eval_formula(f, s) == (a != b));
    }
  }
}

TEST_CASE("program rules") {
  Formula c = sc(Relation::kGt, v("c"), n("0"));
  StStatement s = StStatement::if_then(c, StStatement::assign("a", n("1")));
  CHECK(prog_st_to_hp(s) == hp::it(gt(v("c"), n("0")), hp::asg("a", n("1"))));
  CHECK(prog_st_to_hp(StStatement::assign("x", v("x"))) == hp::asg("x", v("x")));
  StStatement ite = StStatement::if_then_else(c, StStatement::assign("a", n("1")), StStatement::assign("a", n("2")));
  CHECK(prog_st_to_hp(ite) == hp::ite(gt(v("c"), n("0")), hp::asg("a", n("1")), hp::asg("a", n("2"))));

  CompileDiagnostics d;
  HybridProgram dflt = hp::dflt(gt(v("c"), n("0")), hp::asg("a", n("1")), hp::asg("a", n("2")));
  CHECK(prog_hp_to_st(dflt, d) == ite);
  REQUIRE(d.warnings.size() == 1);
  CHECK(d.warnings[0].code == "Linearized");

  CompileDiagnostics clean;
  CHECK(print_st_statement(prog_hp_to_st(hp::seq({hp::asg("x", n("1")), hp::asg("y", n("2"))}), clean)) ==
        "x := 1;\ny := 2;\n");
  CHECK(clean.empty());
}

TEST_CASE("reference ST body compiles to the reference model ctrl") {
  StUnit u = parse_st(corpus("tanks_st.st"));
  ScanCycleModel m = validate_scan_cycle_form(parse_dl_safety(corpus("tanks_hp.dlhp")));
  CHECK(prog_st_to_hp(u.body) == m.ctrl);
}

TEST_CASE("safe model ctrl compiles to the safe listing listing") {
  ScanCycleModel m = validate_scan_cycle_form(parse_dl_safety(corpus("safe_hp.dlhp")));
  CompileDiagnostics d;
  StStatement s = prog_hp_to_st(m.ctrl, d);
  CHECK(d.empty());
  CHECK(strip_ws(print_st_statement(s)) == strip_ws(corpus("safe_body.st")));
  CHECK(s == parse_st_statements(corpus("safe_body.st")));
}

TEST_CASE("homomorphism and round trips on generated programs") {
  int strengthened = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    HybridProgram p = gen_hp(cfg);
    HybridProgram back = prog_st_to_hp(prog_hp_to_st(p));
    bool rewritten_connective = print_dl(p).find("->") != std::string::npos;
    if (fully_complemented(p)) {
      // -> and <-> are rewritten on the way to ST and do not come back
      if (!rewritten_connective) CHECK(back == p);
      if (rewritten_connective) CHECK(print_st_statement(prog_hp_to_st(back)) == print_st_statement(prog_hp_to_st(p)));
    } else {
      // default choices come back complemented, and the reachable set shrinks
      ++strengthened;
      CHECK(fully_complemented(back));
      CHECK(choice_count(back) == choice_count(p));
      State sigma = gen_state(cfg);
      try {
        ReachSet wide = hp_reachable(p, sigma);
        for (const State& w : hp_reachable(back, sigma)) CHECK(wide.contains(w));
      } catch (const Error&) {
      }
    }
    StStatement a = gen_st(cfg);
    cfg.seed += 50000;
    StStatement b = gen_st(cfg);
    CHECK(prog_st_to_hp(StStatement::seq(a, b)) == HybridProgram::seq(prog_st_to_hp(a), prog_st_to_hp(b)));
    HybridProgram pa = prog_st_to_hp(a), pb = prog_st_to_hp(b);
    CHECK(prog_hp_to_st(HybridProgram::seq(pa, pb)) == StStatement::seq(prog_hp_to_st(pa), prog_hp_to_st(pb)));
  }
  CHECK(strengthened > 0);
}

TEST_CASE("task_st_to_hp") {
  StUnit u = parse_st(corpus("tanks_st.st"));
  Formula a = parse_dl_formula(corpus("tanks_hp_assumptions.dlhp"));
  Formula s = parse_dl_formula(corpus("tanks_hp_safety.dlhp"));
  DlSafetyFormula f = task_st_to_hp(u, tanks_hp_plant(), a, s);
  CHECK(conjuncts(f.assumptions).back() == eq(v("eps"), n("1")));
  ScanCycleModel m = validate_scan_cycle_form(f);
  CHECK(m.inputs == std::vector<Ident>{"f1", "f2"});
  CHECK(m.epsilon.concrete());
  CHECK(m.epsilon.seconds() == 1.0);

  // existing matching binding is kept, nothing appended
  Formula with_eps = Formula::conj(a, eq(v("eps"), n("1")));
  CHECK(task_st_to_hp(u, tanks_hp_plant(), with_eps, s).assumptions == with_eps);
  Formula wrong = Formula::conj(a, eq(v("eps"), n("2")));
  CHECK(kind_of([&] { task_st_to_hp(u, tanks_hp_plant(), wrong, s); }) == ErrorKind::kConflictingEpsilon);

  StUnit single = parse_st(
      "PROGRAM p VAR_INPUT f1 : REAL; END_VAR V1 := 0; END_PROGRAM "
      "CONFIGURATION C RESOURCE R ON PLC TASK T(INTERVAL:=T#500 ms, PRIORITY:=0); "
      "PROGRAM I WITH T : p; END_RESOURCE END_CONFIGURATION");
  DlSafetyFormula g = task_st_to_hp(single, tanks_hp_plant(), a, s);
  CHECK(conjuncts(g.assumptions).back() == eq(v("eps"), n("0.5")));
  ScanCycleModel gm = validate_scan_cycle_form(g);
  CHECK(gm.ctrl == hp::asg("V1", n("0")));
  CHECK(gm.inputs == std::vector<Ident>{"f1"});

  StUnit clash = parse_st("PROGRAM p t := 1; END_PROGRAM");
  CHECK(kind_of([&] { task_st_to_hp(clash, tanks_hp_plant(), a, s); }) == ErrorKind::kPlantVariableClash);

  // no config: assumptions left alone, eps stays symbolic
  StUnit bare = parse_st("PROGRAM p V1 := 0; END_PROGRAM");
  DlSafetyFormula h = task_st_to_hp(bare, tanks_hp_plant(), a, s);
  CHECK(h.assumptions == a);
  CHECK_FALSE(validate_scan_cycle_form(h).epsilon.concrete());
}

TEST_CASE("task_hp_to_st") {
  ScanCycleModel m7 = validate_scan_cycle_form(parse_dl_safety(corpus("safe_hp.dlhp")));
  CompileDiagnostics d;
  StUnit u = task_hp_to_st(m7, d, 1.0);
  CHECK(strip_ws(print_st_statement(u.body)) == strip_ws(corpus("safe_body.st")));
  REQUIRE(u.config);
  CHECK(u.config->interval == 1.0);
  CHECK(u.program_name == Ident("prog0"));
  CHECK(u.config->config_name == Ident("Config0"));
  CHECK(u.config->resource_name == Ident("Res0"));
  CHECK(u.config->task_name == Ident("Main"));
  CHECK(u.config->program_instance == Ident("Inst0"));
  CHECK(u.declared(VarKind::kInput) == std::vector<Ident>{"x1", "x2", "f1", "f2"});
  CHECK(u.declared(VarKind::kOutput) == std::vector<Ident>{"V1", "P", "V2"});
  CHECK(u.declared(VarKind::kExternal) == std::vector<Ident>{"HH", "eps", "L1", "L2", "LL", "FL"});
  // V1, V2, P are read by the third guard before being written
  CHECK(d.warnings.size() == 3);
  CHECK(parse_st(print_st(u)) == u);

  ScanCycleModel m5 = validate_scan_cycle_form(parse_dl_safety(corpus("tanks_hp.dlhp")));
  CompileDiagnostics d5;
  CHECK(kind_of([&] { task_hp_to_st(m5, d5); }) == ErrorKind::kMissingEpsilon);
  StUnit u5 = task_hp_to_st(m5, d5, 0.05);
  std::vector<Ident> outs = u5.declared(VarKind::kOutput);
  CHECK(std::set<Ident>(outs.begin(), outs.end()) == std::set<Ident>{"V1", "V2", "P"});
  CHECK(print_st(u5).find("T#50 ms") != std::string::npos);
  CHECK(kind_of([&] { task_hp_to_st(m5, d5, 0.0); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([&] { task_hp_to_st(m5, d5, -1.0); }) == ErrorKind::kInvalidArgument);

  TaskNames names{"ctl", "Cfg", "Cpu", "Fast", "I1"};
  StUnit named = task_hp_to_st(m5, d5, 1.0, names);
  CHECK(named.program_name == Ident("ctl"));
  CHECK(named.config->task_name == Ident("Fast"));

  // concrete eps in the assumptions is used without an override
  ScanCycleModel concrete = m5;
  concrete.assumptions = Formula::conj(m5.assumptions, eq(v("eps"), n("2")));
  concrete.epsilon = Epsilon{2.0};
  CompileDiagnostics dc;
  CHECK(task_hp_to_st(concrete, dc).config->interval == 2.0);
}

TEST_CASE("self-assignment is both read and written") {
  DlSafetyFormula f = parse_dl_safety("eps=1 -> [{x:=x; t:=0; {y'=1, t'=1 & t<=eps}}*] true");
  ScanCycleModel m = validate_scan_cycle_form(f);
  CompileDiagnostics d;
  StUnit u = task_hp_to_st(m, d);
  CHECK(u.declared(VarKind::kInput).empty());
  CHECK(u.declared(VarKind::kOutput) == std::vector<Ident>{"x"});
  REQUIRE(d.warnings.size() == 1);
  CHECK(d.warnings[0].code == "InputOutputConflict");
  CHECK(print_st_statement(u.body) == "x := x;\n");
}

TEST_CASE("task round trip through both directions") {
  ScanCycleModel m = validate_scan_cycle_form(parse_dl_safety(corpus("tanks_hp.dlhp")));
  CompileDiagnostics d;
  StUnit u = task_hp_to_st(m, d, 1.0);
  DlSafetyFormula back = task_st_to_hp(u, m.plant, m.assumptions, m.safety);
  ScanCycleModel m2 = validate_scan_cycle_form(back);
  CHECK(m2.ctrl == m.ctrl);
  CHECK(m2.inputs == m.inputs);
  CHECK(m2.plant == m.plant);
  CHECK(m2.safety == m.safety);
  CHECK(m2.epsilon.seconds() == 1.0);
}
