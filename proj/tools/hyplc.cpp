// Command-line driver: compile between ST and dL, analyze, difftest,
// simulate scan cycles, and check recorded traces for compliance.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hyplc/analysis.hpp"
#include "hyplc/compiler.hpp"
#include "hyplc/dl.hpp"
#include "hyplc/number_format.hpp"
#include "hyplc/semantics.hpp"
#include "hyplc/sim.hpp"
#include "hyplc/st.hpp"

namespace {

using namespace hyplc;

// An Error tagged with the file it was raised for.
struct FileError {
  std::string file;
  Error error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError{path, Error(ErrorKind::kIoError, "cannot open file")};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto in_file(const std::string& path, F&& f) -> decltype(f(std::string())) {
  std::string text = read_file(path);
  try {
    return f(text);
  } catch (const Error& e) {
    throw FileError{path, e};
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw FileError{path, Error(ErrorKind::kIoError, "cannot write file")};
}

void report(const std::string& file, const Error& e) {
  std::cerr << file;
  if (e.location().known()) std::cerr << ':' << e.location().line << ':' << e.location().column;
  std::cerr << ": error[" << to_string(e.kind()) << "]: " << e.message() << '\n';
}

void print_io(std::ostream& os, const IoClassification& io) {
  os << "inputs:  " << format_var_list(io.inputs) << '\n';
  os << "outputs: " << format_var_list(io.outputs) << '\n';
  os << "params:  " << format_var_list(io.params) << '\n';
  if (!io.conflicts.empty()) os << "read-and-written: " << format_var_list(io.conflicts) << '\n';
}

void print_warnings(const std::string& file, const CompileDiagnostics& d) {
  for (const auto& w : d.warnings) std::cerr << file << ": warning[" << w.code << "]: " << w.message << '\n';
}

ScanCycleModel load_model(const std::string& path) {
  return in_file(path, [](const std::string& t) { return validate_scan_cycle_form(parse_dl_safety(t)); });
}

// A full PROGRAM unit or a bare statement list.
StStatement load_st_body(const std::string& path) {
  return in_file(path, [](const std::string& t) {
    std::string upper = t;
    for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (upper.find("PROGRAM") != std::string::npos) return parse_st(t).body;
    return parse_st_statements(t);
  });
}

// "a=1,b=2"
std::map<Ident, double> parse_bindings(const std::string& spec, const char* what) {
  std::map<Ident, double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    double v = 0;
    if (eq == std::string::npos || !parse_number(item.substr(eq + 1), v)) {
      throw Error(ErrorKind::kInvalidArgument, std::string("bad ") + what + " binding '" + item + "'");
    }
    out[Ident(item.substr(0, eq))] = v;
  }
  return out;
}

// "f1=0:50,f2=0:50"
std::map<Ident, std::pair<double, double>> parse_ranges(const std::string& spec) {
  std::map<Ident, std::pair<double, double>> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    auto colon = item.find(':', eq == std::string::npos ? 0 : eq);
    double lo = 0;
    double hi = 0;
    if (eq == std::string::npos || colon == std::string::npos ||
        !parse_number(item.substr(eq + 1, colon - eq - 1), lo) || !parse_number(item.substr(colon + 1), hi) ||
        lo > hi) {
      throw Error(ErrorKind::kInvalidArgument, "bad range '" + item + "', expected name=lo:hi");
    }
    out[Ident(item.substr(0, eq))] = {lo, hi};
  }
  return out;
}

InputProvider make_provider(const std::string& spec, std::uint64_t seed) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "const") return InputProvider::constant(parse_bindings(rest, "input"));
  if (kind == "uniform") return InputProvider::uniform(parse_ranges(rest), seed);
  if (kind == "csv") {
    try {
      return InputProvider::csv(read_trace_file(rest));
    } catch (const Error& e) {
      throw FileError{rest, e};
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown input provider '" + kind + "' (use const:, csv: or uniform:)");
}

int cmd_st2hp(const std::string& st, const std::string& plant_file, const std::string& a_file,
              const std::string& s_file, const std::string& out) {
  StUnit unit = in_file(st, [](const std::string& t) { return parse_st(t); });
  PlantSpec plant = in_file(plant_file, [](const std::string& t) { return extract_plant(parse_dl_program(t)); });
  Formula a = in_file(a_file, [](const std::string& t) { return parse_dl_formula(t); });
  Formula s = in_file(s_file, [](const std::string& t) { return parse_dl_formula(t); });
  DlSafetyFormula f = [&] {
    try {
      return task_st_to_hp(unit, plant, a, s);
    } catch (const Error& e) {
      throw FileError{st, e};
    }
  }();
  print_io(std::cerr, classify_io(prog_st_to_hp(unit.body), unit.declared(VarKind::kInput), plant));
  write_output(out, print_dl(f));
  return 0;
}

int cmd_hp2st(const std::string& dl_file, std::optional<double> eps, const TaskNames& names,
              const std::string& out) {
  ScanCycleModel m = load_model(dl_file);
  CompileDiagnostics diags;
  StUnit unit = [&] {
    try {
      return task_hp_to_st(m, diags, eps, names);
    } catch (const Error& e) {
      throw FileError{dl_file, e};
    }
  }();
  print_warnings(dl_file, diags);
  write_output(out, print_st(unit));
  return 0;
}

void print_sets(const VarSets& vs) {
  std::cout << "FV:  " << format_var_set(vs.free) << '\n';
  std::cout << "BV:  " << format_var_set(vs.bound) << '\n';
  std::cout << "MBV: " << format_var_set(vs.must_bound) << '\n';
}

int cmd_analyze(const std::string& file) {
  bool is_st = file.size() >= 3 && file.substr(file.size() - 3) == ".st";
  if (is_st) {
    StUnit unit = in_file(file, [](const std::string& t) { return parse_st(t); });
    HybridProgram ctrl = prog_st_to_hp(unit.body);
    print_sets(var_sets(ctrl));
    print_io(std::cout, classify_io(ctrl, unit.declared(VarKind::kInput), PlantSpec{}));
    if (unit.config) std::cout << "interval: " << format_number(unit.config->interval) << " s\n";
    return 0;
  }
  ScanCycleModel m = load_model(file);
  print_sets(var_sets(m.ctrl));
  print_io(std::cout, classify_io(m.ctrl, m.inputs, m.plant));
  std::cout << "plant: " << format_var_list(m.plant.state_vars()) << " clock " << m.plant.clock.str() << '\n';
  std::cout << "domain: " << (m.plant.domain ? print_dl(*m.plant.domain) : "true") << '\n';
  std::cout << "epsilon: "
            << (m.epsilon.concrete() ? format_number(m.epsilon.seconds())
                                     : "symbolic " + std::get<Ident>(m.epsilon.value).str())
            << '\n';
  std::cout << "deterministic: " << (fully_complemented(m.ctrl) ? "yes" : "no") << '\n';
  return 0;
}

int cmd_difftest(std::size_t n, std::uint64_t seed, int depth, bool quiet) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.max_depth = depth;
  DiffReport r = difftest(cfg, n);
  if (quiet) {
    std::string text = r.to_text();
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line != "PASS") std::cout << line << '\n';
    }
  } else {
    std::cout << r.to_text();
  }
  return r.failed() == 0 ? 0 : 1;
}

struct SimArgs {
  std::string model;
  std::string st;
  std::string inputs;
  std::string init;
  int cycles = 10;
  std::string integrator = "auto";
  int substeps = 1000;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_simulate(const SimArgs& a) {
  ScanCycleModel m = load_model(a.model);
  StStatement body = a.st.empty() ? prog_hp_to_st(m.ctrl) : load_st_body(a.st);
  InputProvider provider = make_provider(a.inputs, a.seed);
  State init;
  for (const auto& [x, v] : parse_bindings(a.init, "initial")) init.put(x, v);
  SimConfig cfg;
  cfg.integrator.kind = a.integrator == "rk4"      ? IntegratorKind::kRk4
                        : a.integrator == "affine" ? IntegratorKind::kAffine
                                                   : IntegratorKind::kAuto;
  cfg.integrator.substeps = a.substeps;
  cfg.epsilon = a.epsilon;
  std::vector<CycleRecord> run = simulate(m, body, provider, init, a.cycles, cfg);
  IoClassification io = classify_io(m.ctrl, m.inputs, m.plant);
  std::ostringstream csv;
  write_trace(csv, run_to_trace(run, io));
  write_output(a.out, csv.str());

  int status = 0;
  if (!run.empty() && run.back().domain_exit) {
    const auto& ex = *run.back().domain_exit;
    std::cerr << a.model << ": error[DomainExit]: cycle " << run.back().index << " left the evolution domain at t="
              << format_number(ex.time) << " (" << ex.conjunct << ")\n";
    status = 1;
  }
  for (const auto& v : check_safety(run, m.safety)) {
    std::cerr << a.model << ": error[SafetyViolation]: cycle " << v.cycle << " " << v.phase << " "
              << v.state.to_string() << '\n';
    status = 1;
  }
  return status;
}

int cmd_comply(const std::string& model, const std::string& trace_file) {
  ScanCycleModel m = load_model(model);
  Trace trace = [&] {
    try {
      return read_trace_file(trace_file);
    } catch (const Error& e) {
      throw FileError{trace_file, e};
    }
  }();
  IoClassification io = classify_io(m.ctrl, m.inputs, m.plant);
  ComplianceReport r = [&] {
    try {
      return check_compliance(m.ctrl, trace, io);
    } catch (const Error& e) {
      throw FileError{trace_file, e};
    }
  }();
  std::cout << r.to_text();
  return r.instances.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compiler between IEC 61131-3 Structured Text and dL hybrid programs"};
  app.set_version_flag("--version", "hyplc 0.1.0");
  app.require_subcommand(1);

  std::string st_file, plant, assumptions, safety, out;
  auto* st2hp = app.add_subcommand("st2hp", "Compile an ST program and plant fragments to a dL safety formula");
  st2hp->add_option("st", st_file, "ST program (.st)")->required();
  st2hp->add_option("--plant", plant, "plant ODE fragment (.dlhp)")->required();
  st2hp->add_option("--assumptions", assumptions, "assumption formula A (.dlhp)")->required();
  st2hp->add_option("--safety", safety, "safety formula S (.dlhp)")->required();
  st2hp->add_option("--out", out, "output file, default stdout");

  std::string dl_file;
  std::optional<double> eps;
  TaskNames names;
  std::string program_name = "prog0", config_name = "Config0", resource_name = "Res0", task_name = "Main",
              instance_name = "Inst0";
  auto* hp2st = app.add_subcommand("hp2st", "Compile a scan-cycle dL model to an ST unit");
  hp2st->add_option("model", dl_file, "model in scan cycle normal form (.dlhp)")->required();
  hp2st->add_option("--epsilon", eps, "scan cycle interval in seconds")->check(CLI::PositiveNumber);
  hp2st->add_option("--program-name", program_name);
  hp2st->add_option("--config-name", config_name);
  hp2st->add_option("--resource-name", resource_name);
  hp2st->add_option("--task-name", task_name);
  hp2st->add_option("--instance-name", instance_name);
  hp2st->add_option("--out", out, "output file, default stdout");

  std::string analyze_file;
  auto* analyze = app.add_subcommand("analyze", "Print static semantics and I/O classification");
  analyze->add_option("file", analyze_file, ".st program or .dlhp model")->required();

  std::size_t n = 1000;
  std::uint64_t seed = 0;
  int depth = 5;
  bool quiet = false;
  auto* diff = app.add_subcommand("difftest", "Differential test of both compilation directions");
  diff->add_option("--n", n, "number of trials");
  diff->add_option("--seed", seed, "seed of the first trial");
  diff->add_option("--depth", depth, "maximum program depth")->check(CLI::PositiveNumber);
  diff->add_flag("--quiet", quiet, "omit PASS lines");

  SimArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a controller against the plant, emit a trace CSV");
  simulate_cmd->add_option("--model", sim.model, "model (.dlhp)")->required();
  simulate_cmd->add_option("--st", sim.st, "ST controller; default is the compiled model ctrl");
  simulate_cmd->add_option("--inputs", sim.inputs, "const:a=1,b=2 | csv:FILE | uniform:a=lo:hi,...")->required();
  simulate_cmd->add_option("--init", sim.init, "initial state, name=value,...")->required();
  simulate_cmd->add_option("--cycles", sim.cycles)->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--integrator", sim.integrator)->check(CLI::IsMember({"rk4", "affine", "auto"}));
  simulate_cmd->add_option("--substeps", sim.substeps)->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--epsilon", sim.epsilon, "scan cycle duration in seconds")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim.seed, "seed for uniform inputs");
  simulate_cmd->add_option("--out", sim.out, "trace file, default stdout");

  std::string comply_model, trace;
  auto* comply = app.add_subcommand("comply", "Check a recorded trace against the model controller");
  comply->add_option("--model", comply_model, "model (.dlhp)")->required();
  comply->add_option("--trace", trace, "trace CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*st2hp) return cmd_st2hp(st_file, plant, assumptions, safety, out);
    if (*hp2st) {
      names = TaskNames{Ident(program_name), Ident(config_name), Ident(resource_name), Ident(task_name),
                        Ident(instance_name)};
      return cmd_hp2st(dl_file, eps, names, out);
    }
    if (*analyze) return cmd_analyze(analyze_file);
    if (*diff) return cmd_difftest(n, seed, depth, quiet);
    if (*simulate_cmd) return cmd_simulate(sim);
    if (*comply) return cmd_comply(comply_model, trace);
  } catch (const FileError& e) {
    report(e.file, e.error);
    return 1;
  } catch (const Error& e) {
    std::cerr << "hyplc: error[" << to_string(e.kind()) << "]: " << e.message() << '\n';
    return e.kind() == ErrorKind::kInvalidArgument || e.kind() == ErrorKind::kInvalidIdent ? 2 : 1;
  }
  return 2;
}
