#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyplc/dl.hpp"
#include "hyplc/model.hpp"
#include "hyplc/program.hpp"
#include "hyplc/st.hpp"

namespace hyplc {

struct CompileWarning {
  std::string code;  // e.g. "Linearized", "InputOutputConflict"
  std::string message;
  Location location;
};

struct CompileDiagnostics {
  std::vector<CompileWarning> warnings;
  bool empty() const { return warnings.empty(); }
};

// Terms share one tree for both languages, so these are identities; they
// exist to make the rule set explicit at call sites.
Term term_st_to_hp(const Term& t);
Term term_hp_to_st(const Term& t);

Formula formula_st_to_hp(const Formula& f);
Formula formula_hp_to_st(const Formula& f);

HybridProgram prog_st_to_hp(const StStatement& s);
StStatement prog_hp_to_st(const HybridProgram& p, CompileDiagnostics& diags);
StStatement prog_hp_to_st(const HybridProgram& p);

struct TaskNames {
  Ident program_name{"prog0"};
  Ident config_name{"Config0"};
  Ident resource_name{"Res0"};
  Ident task_name{"Main"};
  Ident program_instance{"Inst0"};
};

/// Builds a complete unit with VAR blocks and a single-task configuration.
/// `epsilon_override` wins over the value found in the assumptions.
StUnit task_hp_to_st(const ScanCycleModel& m, CompileDiagnostics& diags,
                     std::optional<double> epsilon_override = std::nullopt,
                     const TaskNames& names = {});

/// `A -> [{i:=*; ctrl; t:=0; {plant & t<=eps & Q}}*] S` for the unit's task.
DlSafetyFormula task_st_to_hp(const StUnit& u, const PlantSpec& plant, const Formula& assumptions,
                              const Formula& safety);

}  // namespace hyplc
