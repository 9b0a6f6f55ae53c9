#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "hyplc/ident.hpp"

namespace hyplc {

/// Variable valuation with value semantics: `set` returns a new state and
/// leaves the receiver untouched. Equality compares values bit-for-bit, so
/// `-0.0 != 0.0` and identical NaNs compare equal.
class State {
 public:
  using Binding = std::pair<Ident, double>;

  State() = default;
  State(std::initializer_list<std::pair<const char*, double>> init);

  /// Throws UnboundVariable when `x` has no binding.
  double get(const Ident& x) const;
  bool contains(const Ident& x) const;
  [[nodiscard]] State set(const Ident& x, double v) const;
  /// In-place variant used by interpreters that own their state.
  void put(const Ident& x, double v);

  const std::vector<Binding>& bindings() const { return bindings_; }
  size_t size() const { return bindings_.size(); }

  friend bool operator==(const State& a, const State& b);
  /// Total order on bit patterns, for deduplicating reachable sets.
  friend bool bit_less(const State& a, const State& b);

  std::string to_string() const;

 private:
  std::vector<Binding> bindings_;  // sorted by name
};

bool bit_less(const State& a, const State& b);

}  // namespace hyplc
