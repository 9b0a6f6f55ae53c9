#include <fstream>
#include <sstream>

#include "builders.hpp"
#include "doctest.h"
#include "hyplc/analysis.hpp"
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

Error translate_error(std::string_view text) {
  try {
    parse_dl_hybrid_program(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorKind::kIoError, "");
}

Error syntax_error(std::string_view text) {
  try {
    parse_dl_safety(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorKind::kIoError, "");
}

}  // namespace

TEST_CASE("reference model parses into the scan-cycle shape") {
  DlSafetyFormula f = parse_dl_safety(corpus("tanks_hp.dlhp"));
  ScanCycleModel m = validate_scan_cycle_form(f);
  CHECK(m.inputs == std::vector<Ident>{"f1", "f2"});
  CHECK(choice_count(m.ctrl) == 4);
  CHECK(fully_complemented(m.ctrl));
  std::vector<Ident> evolving;
  for (const auto& [x, rhs] : m.plant.odes) evolving.push_back(x);
  CHECK(evolving == std::vector<Ident>{"x1", "x2"});
  CHECK(m.plant.clock == Ident("t"));
  CHECK(m.epsilon_term == v("eps"));
  CHECK_FALSE(m.epsilon.concrete());
  // the raw body still has the t'=1 equation
  const auto& loop = std::get<dl::Loop>(f.program.node().v);
  auto parts = dl::flatten_seq(loop.body);
  const auto& ode = std::get<dl::Ode>(parts.back().node().v);
  REQUIRE(ode.equations.size() == 3);
  CHECK(ode.equations[2] == std::pair<Ident, Term>{"t", n("1")});
}

TEST_CASE("programs") {
  CHECK(parse_dl_hybrid_program("x := 0;") == hp::asg("x", n("0")));
  HybridProgram c = parse_dl_hybrid_program("{?x>=1; y:=1; ++ ?!(x>=1); y:=0;}");
  CHECK(c == hp::ite(ge(v("x"), n("1")), hp::asg("y", n("1")), hp::asg("y", n("0"))));
  CHECK(parse_dl_hybrid_program("{?x>=1; y:=1; ++ ?!(x>=1);}") == hp::it(ge(v("x"), n("1")), hp::asg("y", n("1"))));
  CHECK(parse_dl_hybrid_program("{?x>=1; y:=1; ++ y:=0;}") ==
        hp::dflt(ge(v("x"), n("1")), hp::asg("y", n("1")), hp::asg("y", n("0"))));
  // complement written first
  CHECK(parse_dl_hybrid_program("{?!(x>=1); y:=0; ++ ?x>=1; y:=1;}") ==
        hp::ite(neg(ge(v("x"), n("1"))), hp::asg("y", n("0")), hp::asg("y", n("1"))));
  // trailing semicolon optional before a closing brace
  CHECK(parse_dl_hybrid_program("{?x>=1; y:=1 ++ ?!(x>=1); y:=0}") == c);
  CHECK(parse_dl_hybrid_program("x:=1; y:=2; z:=3;") ==
        hp::seq({hp::asg("x", n("1")), hp::asg("y", n("2")), hp::asg("z", n("3"))}));
  // braces add no node
  CHECK(parse_dl_program("{x:=1; y:=2;}") == parse_dl_program("x:=1; y:=2;"));
  CHECK(parse_dl_program("{x:=1;}*") == raw::loop(raw::asg("x", n("1"))));
  CHECK(parse_dl_program("x:=*;") == raw::rnd("x"));
}

TEST_CASE("terms and formulas") {
  CHECK(parse_dl_term("x^2") == pw(v("x"), n("2")));
  CHECK(parse_dl_term("a-b-c") == sub(sub(v("a"), v("b")), v("c")));
  CHECK(parse_dl_term("V2*P*f2") == mul(mul(v("V2"), v("P")), v("f2")));
  CHECK(parse_dl_formula("a>0 -> b>0 -> c>0") ==
        Formula::binary(Connective::kImply, gt(v("a"), n("0")),
                        Formula::binary(Connective::kImply, gt(v("b"), n("0")), gt(v("c"), n("0")))));
  CHECK(parse_dl_formula("a>0 <-> b>0 | c>0 & d>0") ==
        Formula::binary(Connective::kEquiv, gt(v("a"), n("0")),
                        disj(gt(v("b"), n("0")), Formula::conj(gt(v("c"), n("0")), gt(v("d"), n("0"))))));
  CHECK(parse_dl_formula("!!(x>0)") == neg(neg(gt(v("x"), n("0")))));
  CHECK(parse_dl_formula("x != 1") == cmp(Relation::kNe, v("x"), n("1")));
  CHECK(parse_dl_formula("true & false") ==
        Formula::conj(Formula::constant(Dialect::kHp, true), Formula::constant(Dialect::kHp, false)));
}

TEST_CASE("printing") {
  HybridProgram c = hp::ite(ge(v("x"), n("1")), hp::asg("y", n("1")), hp::asg("y", n("0")));
  CHECK(print_dl(c) == "{?x>=1; y:=1; ++ ?!(x>=1); y:=0;}");
  CHECK(print_dl(pw(v("x"), n("2"))) == "x^2");
  PlantSpec plant = extract_plant(parse_dl_program(corpus("tanks_hp_plant.dlhp")));
  CHECK(print_dl(plant_program(plant, v("eps"))) ==
        "t:=0; {x1'=V1*f1-V2*P*f2, x2'=V2*P*f2, t'=1 & t<=eps & x1>=0 & x2>=0 & f1>=0 & f2>=0}");
  std::string full = print_dl(parse_dl_safety(corpus("tanks_hp.dlhp")));
  CHECK(full.find(" ->\n  [{\n    f1:=*;\n") != std::string::npos);
  CHECK(full.find("}*]") != std::string::npos);
}

TEST_CASE("detect_complement") {
  Formula a = ge(v("x"), n("1"));
  CHECK(detect_complement(a, neg(a)));
  CHECK(detect_complement(neg(a), a));
  CHECK_FALSE(detect_complement(a, lt(v("x"), n("1"))));
  CHECK(detect_complement(neg(neg(a)), neg(a)));
  CHECK(detect_complement(a, neg(neg(neg(a)))));
  CHECK_FALSE(detect_complement(a, a));
  CHECK_FALSE(detect_complement(neg(a), neg(a)));

  // symmetry and double-negation invariance on generated guards
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    Formula f = gen_formula(cfg, Dialect::kHp);
    cfg.seed = seed + 10000;
    Formula g = gen_formula(cfg, Dialect::kHp);
    for (const auto& [l, r] : {std::pair{f, neg(f)}, {f, g}, {neg(g), g}, {f, f}}) {
      CHECK(detect_complement(l, r) == detect_complement(r, l));
      CHECK(detect_complement(l, r) == detect_complement(neg(neg(l)), r));
      CHECK(detect_complement(l, r) == detect_complement(l, neg(neg(r))));
    }
  }
}

TEST_CASE("translatable fragment diagnostics") {
  Error bare = translate_error("?x>0;");
  CHECK(bare.kind() == ErrorKind::kNotNormalForm);
  CHECK(bare.message() == "test outside guarded choice");
  CHECK(translate_error("x:=*;").message() == "nondeterministic assignment outside input section");
  CHECK(translate_error("{x'=1}").message() == "ODE outside plant");
  CHECK(translate_error("{x:=1;}*").message() == "nested loop");
  Error later = translate_error("x:=1; ?x>0;");
  CHECK(later.location().line == 1);
  CHECK(later.location().column == 7);
  // right branch opens with a test that is not the complement
  CHECK(translate_error("{?x>0; y:=1; ++ ?y>0; y:=2;}").message() == "test outside guarded choice");
}

TEST_CASE("syntax errors carry positions") {
  Error e = syntax_error("x>0 ->\n  [{x:=1 +;}*] x>0");
  CHECK(e.kind() == ErrorKind::kSyntaxError);
  CHECK(e.location().line == 2);
  CHECK(e.location().column == 11);
  CHECK(syntax_error("x>0 -> [{x:=1;}*]").kind() == ErrorKind::kSyntaxError);
  CHECK(syntax_error("x>0 [{x:=1;}*] x>0").kind() == ErrorKind::kSyntaxError);
  CHECK(syntax_error("x>0 -> [{x := y ++;}*] x>0").kind() == ErrorKind::kSyntaxError);
}

TEST_CASE("round trips over generated trees") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    Term t = gen_term(cfg);
    CHECK(parse_dl_term(print_dl(t)) == t);
    Formula f = gen_formula(cfg, Dialect::kHp);
    CHECK(parse_dl_formula(print_dl(f)) == f);
    HybridProgram p = gen_hp(cfg);
    INFO(print_dl(p));
    CHECK(parse_dl_hybrid_program(print_dl(p)) == p);
    dl::Program raw = from_translatable(p);
    CHECK(parse_dl_program(print_dl(raw)) == raw);
    CHECK(to_translatable(raw) == p);
  }
}

TEST_CASE("negative literals and unary minus round-trip") {
  for (const Term& t : {Term::neg(n("3")), Term::neg(pw(v("x"), n("2"))), pw(Term::neg(v("x")), n("2")),
                        sub(v("a"), Term::neg(v("b"))), Term::neg(Term::neg(v("a"))), pw(pw(v("a"), n("2")), n("3")),
                        pw(v("a"), pw(n("2"), n("3")))}) {
    INFO(print_dl(t));
    CHECK(parse_dl_term(print_dl(t)) == t);
  }
}

TEST_CASE("safety formula round trip and fixpoint") {
  for (const char* f : {"tanks_hp.dlhp", "safe_hp.dlhp"}) {
    DlSafetyFormula a = parse_dl_safety(corpus(f));
    std::string once = print_dl(a);
    CHECK(parse_dl_safety(once) == a);
    CHECK(print_dl(parse_dl_safety(once)) == once);
    ScanCycleModel m = validate_scan_cycle_form(a);
    CHECK(to_safety_formula(m) == a);
  }
}
