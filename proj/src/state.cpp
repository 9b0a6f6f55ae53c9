#include "hyplc/state.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "hyplc/error.hpp"
#include "hyplc/number_format.hpp"

namespace hyplc {

namespace {

auto find(const std::vector<State::Binding>& b, const Ident& x) {
  return std::lower_bound(b.begin(), b.end(), x,
                          [](const State::Binding& e, const Ident& k) { return e.first < k; });
}

}  // namespace

State::State(std::initializer_list<std::pair<const char*, double>> init) {
  for (const auto& [name, value] : init) put(Ident(name), value);
}

double State::get(const Ident& x) const {
  auto it = find(bindings_, x);
  if (it == bindings_.end() || it->first != x) {
    throw Error(ErrorKind::kUnboundVariable, "variable '" + x.str() + "' is not bound");
  }
  return it->second;
}

bool State::contains(const Ident& x) const {
  auto it = find(bindings_, x);
  return it != bindings_.end() && it->first == x;
}

State State::set(const Ident& x, double v) const {
  State copy = *this;
  copy.put(x, v);
  return copy;
}

void State::put(const Ident& x, double v) {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), x,
                             [](const Binding& e, const Ident& k) { return e.first < k; });
  if (it != bindings_.end() && it->first == x) {
    it->second = v;
  } else {
    bindings_.insert(it, Binding{x, v});
  }
}

bool operator==(const State& a, const State& b) {
  if (a.bindings_.size() != b.bindings_.size()) return false;
  for (size_t i = 0; i < a.bindings_.size(); ++i) {
    if (a.bindings_[i].first != b.bindings_[i].first) return false;
    if (std::bit_cast<uint64_t>(a.bindings_[i].second) != std::bit_cast<uint64_t>(b.bindings_[i].second)) {
      return false;
    }
  }
  return true;
}

bool bit_less(const State& a, const State& b) {
  size_t n = std::min(a.bindings_.size(), b.bindings_.size());
  for (size_t i = 0; i < n; ++i) {
    const auto& [xa, va] = a.bindings_[i];
    const auto& [xb, vb] = b.bindings_[i];
    if (xa != xb) return xa < xb;
    auto ba = std::bit_cast<uint64_t>(va);
    auto bb = std::bit_cast<uint64_t>(vb);
    if (ba != bb) return ba < bb;
  }
  return a.bindings_.size() < b.bindings_.size();
}

std::string State::to_string() const {
  std::string out = "{";
  for (size_t i = 0; i < bindings_.size(); ++i) {
    if (i) out += ", ";
    out += bindings_[i].first.str() + ":" + format_number(bindings_[i].second);
  }
  return out + "}";
}

}  // namespace hyplc
