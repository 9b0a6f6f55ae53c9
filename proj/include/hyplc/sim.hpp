#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hyplc/analysis.hpp"
#include "hyplc/model.hpp"
#include "hyplc/state.hpp"

namespace hyplc {

enum class IntegratorKind { kRk4, kAffine, kAuto };

struct IntegratorConfig {
  IntegratorKind kind = IntegratorKind::kAuto;
  int substeps = 1000;
};

/// True when no right-hand side reads an evolving variable, so the flow is
/// linear in time for the duration of a cycle.
bool plant_is_affine(const PlantSpec& plant);

struct DomainExit {
  double time;            // since the start of the integration
  std::string conjunct;   // first violated conjunct of Q, in dL syntax
};

struct PlantStep {
  State state;
  std::optional<DomainExit> exit;
};

/// Advances the ODEs and the clock by `duration`, checking Q at every grid
/// point. On a violation the state at that grid point is returned.
PlantStep integrate_plant(const PlantSpec& plant, const State& s, double duration,
                          const IntegratorConfig& cfg = {});

/// Numeric table with a mandatory `cycle` column.
struct Trace {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of `name`, or -1.
  int column(std::string_view name) const;
};

Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);
void write_trace(std::ostream& out, const Trace& t);

class InputProvider {
 public:
  static InputProvider constant(std::map<Ident, double> values);
  static InputProvider csv(Trace trace);
  static InputProvider uniform(std::map<Ident, std::pair<double, double>> ranges, std::uint64_t seed);

  /// Values for `inputs` at 1-based `cycle`; MissingInput if one is unavailable.
  std::vector<double> next(int cycle, const std::vector<Ident>& inputs);

 private:
  enum class Kind { kConstant, kCsv, kUniform };
  Kind kind_ = Kind::kConstant;
  std::map<Ident, double> constants_;
  Trace trace_;
  std::map<Ident, std::pair<double, double>> ranges_;
  std::mt19937_64 rng_;
};

struct CycleRecord {
  int index;     // 1-based
  double t_abs;  // start of the cycle, seconds
  State pre;
  State post_ctrl;
  State post_plant;
  std::optional<DomainExit> domain_exit;
};

struct SimConfig {
  IntegratorConfig integrator;
  std::optional<double> epsilon;  // overrides the model's value
  bool check_assumptions = false;
};

std::vector<CycleRecord> simulate(const ScanCycleModel& m, const StStatement& st_body,
                                  InputProvider& inputs, const State& initial, int cycles,
                                  const SimConfig& cfg = {});

struct SafetyViolation {
  int cycle;
  std::string phase;  // "pre" or "post_plant"
  State state;
};

std::vector<SafetyViolation> check_safety(const std::vector<CycleRecord>& run, const Formula& safety);

/// One row per cycle: `cycle`, `t`, then inputs and params as read before
/// control and outputs as written by control.
Trace run_to_trace(const std::vector<CycleRecord>& run, const IoClassification& io);

struct ComplianceInstance {
  int start_cycle;
  int end_cycle;
  std::string description;
};

struct ComplianceReport {
  std::vector<ComplianceInstance> instances;
  int checked = 0;
  std::string to_text() const;
};

/// Compares recorded actuator columns with the choice the (deterministic)
/// controller makes on each row. Actuators not written in a cycle keep the
/// expected value of the previous cycle; the first row uses its own record.
ComplianceReport check_compliance(const HybridProgram& ctrl, const Trace& trace, const IoClassification& io);

}  // namespace hyplc
