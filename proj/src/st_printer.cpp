#include <sstream>

#include "expr_print.hpp"
#include "hyplc/number_format.hpp"
#include "hyplc/st.hpp"

namespace hyplc {

std::string_view to_string(VarKind kind) {
  switch (kind) {
    case VarKind::kInput: return "VAR_INPUT";
    case VarKind::kOutput: return "VAR_OUTPUT";
    case VarKind::kLocal: return "VAR";
    case VarKind::kExternal: return "VAR_EXTERNAL";
  }
  return "VAR";
}

std::string_view to_string(StType type) {
  switch (type) {
    case StType::kLReal: return "LREAL";
    case StType::kReal: return "REAL";
    case StType::kBool: return "BOOL";
  }
  return "LREAL";
}

std::string print_st_term(const Term& t) { return detail::print_term(t, detail::kStSyntax.term); }

std::string print_st_formula(const Formula& f) {
  if (f.dialect() != Dialect::kSt) {
    throw Error(ErrorKind::kDialectMismatch, "cannot print a hybrid-program formula as ST");
  }
  return detail::print_formula(f, detail::kStSyntax);
}

namespace {

void emit(std::ostream& os, const StStatement& s, int indent) {
  std::string pad(indent, ' ');
  const auto& v = s.node().v;
  if (const auto* a = std::get_if<StAssign>(&v)) {
    os << pad << a->target.str() << " := " << print_st_term(a->value) << ";\n";
  } else if (const auto* q = std::get_if<StSeq>(&v)) {
    emit(os, q->first, indent);
    emit(os, q->second, indent);
  } else if (const auto* i = std::get_if<StIfThenElse>(&v)) {
    os << pad << "IF (" << print_st_formula(i->cond) << ") THEN\n";
    emit(os, i->then_branch, indent + 2);
    os << pad << "ELSE\n";
    emit(os, i->else_branch, indent + 2);
    os << pad << "END_IF;\n";
  } else {
    const auto& it = std::get<StIfThen>(v);
    os << pad << "IF (" << print_st_formula(it.cond) << ") THEN\n";
    emit(os, it.then_branch, indent + 2);
    os << pad << "END_IF;\n";
  }
}

}  // namespace

std::string print_st_statement(const StStatement& s, int indent) {
  std::ostringstream os;
  emit(os, s, indent);
  return os.str();
}

std::string print_st(const StUnit& unit) {
  std::ostringstream os;
  os << "PROGRAM " << unit.program_name.str() << "\n";
  for (const auto& block : unit.var_blocks) {
    os << "  " << to_string(block.kind) << "\n";
    // Consecutive declarations of one type share a line.
    for (size_t i = 0; i < block.decls.size();) {
      size_t j = i;
      os << "    ";
      while (j < block.decls.size() && block.decls[j].type == block.decls[i].type) {
        if (j > i) os << ", ";
        os << block.decls[j].name.str();
        ++j;
      }
      os << " : " << to_string(block.decls[i].type) << ";\n";
      i = j;
    }
    os << "  END_VAR\n";
  }
  os << "\n";
  emit(os, unit.body, 2);
  os << "END_PROGRAM\n";
  if (unit.config) {
    const StConfig& c = *unit.config;
    double ms = c.interval * 1000.0;
    // Prefer whole milliseconds for sub-second intervals.
    std::string interval = c.interval < 1.0 && ms == static_cast<double>(static_cast<long long>(ms)) &&
                                   ms / 1000.0 == c.interval
                               ? "T#" + format_number(ms) + " ms"
                               : "T#" + format_number(c.interval) + " s";
    os << "\nCONFIGURATION " << c.config_name.str() << "\n";
    os << "  RESOURCE " << c.resource_name.str() << " ON " << c.resource_target.str() << "\n";
    os << "    TASK " << c.task_name.str() << "(INTERVAL:=" << interval
       << ", PRIORITY:=" << c.priority << ");\n";
    os << "    PROGRAM " << c.program_instance.str() << " WITH " << c.task_name.str() << " : "
       << unit.program_name.str() << ";\n";
    os << "  END_RESOURCE\n";
    os << "END_CONFIGURATION\n";
  }
  return os.str();
}

}  // namespace hyplc
