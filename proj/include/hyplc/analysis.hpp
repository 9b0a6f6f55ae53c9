#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "hyplc/compiler.hpp"
#include "hyplc/dl.hpp"
#include "hyplc/model.hpp"

namespace hyplc {

struct VarSets {
  std::set<Ident> free;
  std::set<Ident> bound;
  std::set<Ident> must_bound;
};

VarSets var_sets(const HybridProgram& p);

struct IoClassification {
  std::vector<Ident> inputs;
  std::vector<Ident> outputs;
  std::vector<Ident> params;
  /// Variables read before written and also written; kept as outputs.
  std::vector<Ident> conflicts;
};

/// Inputs list plant state read by ctrl (ODE order) and then the declared
/// inputs; outputs and params follow their first occurrence in ctrl.
IoClassification classify_io(const HybridProgram& ctrl, const std::vector<Ident>& declared_inputs,
                             const PlantSpec& plant);

ScanCycleModel validate_scan_cycle_form(const DlSafetyFormula& f);

struct SymbolicEpsilon {
  friend bool operator==(SymbolicEpsilon, SymbolicEpsilon) { return true; }
};
using EpsilonValue = std::variant<double, SymbolicEpsilon>;

/// Looks for `eps = n` or `n = eps` among the top-level conjuncts of `a`.
EpsilonValue extract_epsilon(const Formula& a, const Ident& eps = Ident("eps"));

/// Reads a plant fragment: either a bare ODE system or the full
/// `t:=0; {..., t'=1 & t<=eps & Q}` form. The clock equation and the
/// `t<=eps` conjunct are removed if present.
PlantSpec extract_plant(const dl::Program& p, const Ident& clock = Ident("t"));

std::string format_var_set(const std::set<Ident>& s);
std::string format_var_list(const std::vector<Ident>& v);

}  // namespace hyplc
