#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace hyplc {

/// True for keywords of either surface syntax. ST keywords are matched
/// case-insensitively, so `If` and `task` are reserved as well.
bool is_reserved_word(std::string_view word);
/// Whether `word` would be accepted by the Ident constructor.
bool is_valid_ident(std::string_view word);

/// A variable name: `[A-Za-z_][A-Za-z0-9_]*`, never a reserved word.
class Ident {
 public:
  explicit Ident(std::string name);
  Ident(const char* name) : Ident(std::string(name)) {}  // NOLINT

  const std::string& str() const { return name_; }

  friend bool operator==(const Ident&, const Ident&) = default;
  friend auto operator<=>(const Ident&, const Ident&) = default;

 private:
  std::string name_;
};

}  // namespace hyplc

template <>
struct std::hash<hyplc::Ident> {
  size_t operator()(const hyplc::Ident& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
