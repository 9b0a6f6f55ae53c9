#include "hyplc/model.hpp"

#include "hyplc/number_format.hpp"

namespace hyplc {

std::vector<Ident> PlantSpec::state_vars() const {
  std::vector<Ident> out;
  out.reserve(odes.size());
  for (const auto& [x, rhs] : odes) out.push_back(x);
  return out;
}

Term Epsilon::as_term() const {
  if (const auto* name = std::get_if<Ident>(&value)) return Term::var(*name);
  return Term::number(format_number(std::get<double>(value)));
}

}  // namespace hyplc
