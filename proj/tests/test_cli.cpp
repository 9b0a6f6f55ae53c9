#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "hyplc/dl.hpp"
#include "hyplc/st.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

const std::string kCorpus = HYPLC_CORPUS_DIR;

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("hyplc_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

Result run(const std::string& args) {
  fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
  std::string cmd = std::string(HYPLC_BIN) + " " + args + " >" + out.string() + " 2>" + err.string();
  int raw = std::system(cmd.c_str());
  int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return {status, slurp(out), slurp(err)};
}

std::string c(const std::string& name) { return kCorpus + "/" + name; }

std::string tanks_hp_fragments() {
  return " --plant " + c("tanks_hp_plant.dlhp") + " --assumptions " + c("tanks_hp_assumptions.dlhp") + " --safety " +
         c("tanks_hp_safety.dlhp");
}

std::string scenario_init() {
  return "HH=1000,H1=800,L1=500,LL=250,L2=500,H2=800,FL=0.1,eps=10,x1=790,x2=600,V1=1,V2=0,P=0";
}

}  // namespace

TEST_CASE("version and usage") {
  Result v = run("--version");
  CHECK(v.status == 0);
  CHECK(v.out == "hyplc 0.1.0\n");
  CHECK(run("--help").status == 0);
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("st2hp " + c("tanks_st.st") + " --assumptions a --safety s").status == 2);
  CHECK(run("difftest --depth 0").status == 2);
  CHECK(run("simulate --model m --inputs const:a=1 --init a=1 --integrator euler").status == 2);
}

TEST_CASE("st2hp") {
  fs::path out = scratch() / "tanks_hp_out.dlhp";
  Result r = run("st2hp " + c("tanks_st.st") + tanks_hp_fragments() + " --out " + out.string());
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("inputs:  {x1, x2, f1, f2}") != std::string::npos);
  hyplc::DlSafetyFormula got = hyplc::parse_dl_safety(slurp(out));
  hyplc::DlSafetyFormula ref = hyplc::parse_dl_safety(slurp(c("tanks_hp.dlhp")));
  CHECK(got.program == ref.program);
  CHECK(got.safety == ref.safety);
  CHECK(got.assumptions == hyplc::Formula::conj(ref.assumptions, hyplc::parse_dl_formula("eps=1")));

  Result to_stdout = run("st2hp " + c("tanks_st.st") + tanks_hp_fragments());
  CHECK(to_stdout.status == 0);
  CHECK(to_stdout.out == slurp(out));

  write(scratch() / "clash.st", "PROGRAM p\n  t := 1;\nEND_PROGRAM\n");
  Result clash = run("st2hp " + (scratch() / "clash.st").string() + tanks_hp_fragments());
  CHECK(clash.status == 1);
  CHECK(clash.err.find("error[PlantVariableClash]") != std::string::npos);

  write(scratch() / "bad.st", "PROGRAM p\n  WHILE x < 1 DO x := 1; END_WHILE;\nEND_PROGRAM\n");
  Result bad = run("st2hp " + (scratch() / "bad.st").string() + tanks_hp_fragments());
  CHECK(bad.status == 1);
  CHECK(bad.err.find("bad.st:2:3: error[SyntaxError]") != std::string::npos);

  Result missing = run("st2hp /nonexistent.st" + tanks_hp_fragments());
  CHECK(missing.status == 1);
  CHECK(missing.err.find("IoError") != std::string::npos);
}

TEST_CASE("hp2st") {
  Result r = run("hp2st " + c("safe_hp.dlhp") + " --epsilon 1");
  CHECK(r.status == 0);
  hyplc::StUnit u = hyplc::parse_st(r.out);
  CHECK(u.body == hyplc::parse_st_statements(slurp(c("safe_body.st"))));
  CHECK(r.out.find("TASK Main(INTERVAL:=T#1 s, PRIORITY:=0);") != std::string::npos);
  CHECK(r.err.find("warning[InputOutputConflict]") != std::string::npos);

  Result sym = run("hp2st " + c("tanks_hp.dlhp"));
  CHECK(sym.status == 1);
  CHECK(sym.err.find("error[MissingEpsilon]") != std::string::npos);
  CHECK(sym.out.empty());

  Result named = run("hp2st " + c("tanks_hp.dlhp") + " --epsilon 0.05 --program-name ctl --task-name Fast");
  CHECK(named.status == 0);
  CHECK(named.out.find("PROGRAM ctl") != std::string::npos);
  CHECK(named.out.find("TASK Fast(INTERVAL:=T#50 ms") != std::string::npos);

  write(scratch() / "one.dlhp", "eps=1 -> [{y:=1; t:=0; {x'=y, t'=1 & t<=eps}}*] x>=0");
  Result one = run("hp2st " + (scratch() / "one.dlhp").string());
  CHECK(one.status == 0);
  hyplc::StUnit minimal = hyplc::parse_st(one.out);
  CHECK(minimal.declared(hyplc::VarKind::kOutput) == std::vector<hyplc::Ident>{"y"});

  write(scratch() / "notnf.dlhp", "eps=1 -> [{?y>0; y:=1; t:=0; {x'=y, t'=1 & t<=eps}}*] x>=0");
  Result nf = run("hp2st " + (scratch() / "notnf.dlhp").string());
  CHECK(nf.status == 1);
  CHECK(nf.err.find("notnf.dlhp:1:") != std::string::npos);
  CHECK(nf.err.find("error[NotNormalForm]: test outside guarded choice") != std::string::npos);

  CHECK(run("hp2st " + c("tanks_hp.dlhp") + " --epsilon 0").status == 2);
  CHECK(run("hp2st " + c("tanks_hp.dlhp") + " --epsilon 1 --task-name IF").status == 2);
}

TEST_CASE("analyze") {
  Result r = run("analyze " + c("tanks_hp.dlhp"));
  CHECK(r.status == 0);
  CHECK(r.out.find("FV:  {FL, H1, H2, L1, L2, LL, f2, x1, x2}\n") != std::string::npos);
  CHECK(r.out.find("BV:  {P, V1, V2}\n") != std::string::npos);
  CHECK(r.out.find("MBV: {}\n") != std::string::npos);
  CHECK(r.out.find("outputs: {V1, P, V2}") != std::string::npos);
  CHECK(r.out.find("deterministic: yes") != std::string::npos);
  Result st = run("analyze " + c("tanks_st.st"));
  CHECK(st.status == 0);
  CHECK(st.out.find("BV:  {P, V1, V2}") != std::string::npos);
  CHECK(st.out.find("interval: 1 s") != std::string::npos);
}

TEST_CASE("difftest") {
  Result r = run("difftest --n 300 --seed 1 --depth 5");
  CHECK(r.status == 0);
  CHECK(r.out.find("total=300 failed=0\n") != std::string::npos);
  Result q = run("difftest --n 300 --seed 1 --depth 5 --quiet");
  CHECK(q.out == "total=300 failed=0\n");
  CHECK(run("difftest --n 300 --seed 1 --depth 5").out == r.out);
  CHECK(run("difftest --n 0").out == "total=0 failed=0\n");
}

TEST_CASE("simulate and comply") {
  Result bad = run("simulate --model " + c("safe_hp.dlhp") + " --st " + c("tanks_st.st") +
                   " --inputs const:f1=40,f2=30 --cycles 3 --integrator affine --init " + scenario_init());
  CHECK(bad.status == 1);
  CHECK(bad.err.find("error[SafetyViolation]: cycle 1 post_plant") != std::string::npos);

  fs::path trace = scratch() / "safe.csv";
  Result good = run("simulate --model " + c("safe_hp.dlhp") + " --st " + c("safe_body.st") +
                    " --inputs uniform:f1=0:50,f2=0:50 --seed 4 --cycles 50 --init " + scenario_init() +
                    " --out " + trace.string());
  CHECK(good.status == 0);
  std::string csv = slurp(trace);
  CHECK(csv.rfind("cycle,t,x1,x2,f1,f2,", 0) == 0);

  Result same = run("simulate --model " + c("safe_hp.dlhp") + " --st " + c("safe_body.st") +
                    " --inputs uniform:f1=0:50,f2=0:50 --seed 4 --cycles 50 --init " + scenario_init());
  CHECK(same.out == csv);

  Result ok = run("comply --model " + c("safe_hp.dlhp") + " --trace " + trace.string());
  CHECK(ok.status == 0);
  CHECK(ok.out.find("instances=0\n") != std::string::npos);

  // replay the recorded sensors as csv inputs
  Result replay = run("simulate --model " + c("safe_hp.dlhp") + " --inputs csv:" + trace.string() +
                      " --cycles 50 --init " + scenario_init());
  CHECK(replay.status == 0);
  CHECK(replay.out == csv);

  // flip one actuator cell
  std::string dirty = csv;
  std::istringstream lines(csv);
  std::string header, row, rebuilt;
  std::getline(lines, header);
  rebuilt = header + "\n";
  int n = 0;
  while (std::getline(lines, row)) {
    if (++n == 5) {
      auto pos = row.rfind(',');
      row = row.substr(0, pos + 1) + (row.substr(pos + 1) == "0" ? "1" : "0");
    }
    rebuilt += row + "\n";
  }
  write(scratch() / "dirty.csv", rebuilt);
  Result flagged = run("comply --model " + c("safe_hp.dlhp") + " --trace " + (scratch() / "dirty.csv").string());
  CHECK(flagged.status == 1);
  CHECK(flagged.out.find("instance cycles=5..5") != std::string::npos);
  CHECK(flagged.out.find("instances=1\n") != std::string::npos);

  write(scratch() / "short.csv", "cycle,x1\n1,2\n");
  Result schema = run("comply --model " + c("safe_hp.dlhp") + " --trace " + (scratch() / "short.csv").string());
  CHECK(schema.status == 1);
  CHECK(schema.err.find("error[SchemaError]") != std::string::npos);

  Result missing = run("simulate --model " + c("safe_hp.dlhp") + " --inputs const:f1=1 --init " + scenario_init());
  CHECK(missing.status == 1);
  CHECK(missing.err.find("MissingInput") != std::string::npos);

  Result badinit = run("simulate --model " + c("safe_hp.dlhp") + " --inputs const:f1=1,f2=1 --init x1=abc");
  CHECK(badinit.status == 2);
}
