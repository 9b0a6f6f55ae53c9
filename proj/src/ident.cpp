#include "hyplc/ident.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "hyplc/error.hpp"

namespace hyplc {

namespace {

// ST keywords are case-insensitive; the dL reserved words `true`/`false`
// are covered by TRUE/FALSE.
constexpr std::array<std::string_view, 30> kKeywords = {
    "PROGRAM",  "END_PROGRAM", "VAR_INPUT",     "VAR_OUTPUT",        "VAR",
    "VAR_EXTERNAL", "END_VAR", "IF",            "THEN",              "ELSE",
    "ELSIF",    "END_IF",      "AND",           "OR",                "XOR",
    "NOT",      "TRUE",        "FALSE",         "CONFIGURATION",     "END_CONFIGURATION",
    "RESOURCE", "END_RESOURCE", "ON",           "TASK",              "WITH",
    "INTERVAL", "PRIORITY",    "LREAL",         "REAL",              "BOOL"};

}  // namespace

bool is_reserved_word(std::string_view word) {
  std::string upper(word);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return std::find(kKeywords.begin(), kKeywords.end(), upper) != kKeywords.end();
}

namespace {
bool well_formed(std::string_view w) {
  bool ok = !w.empty() && (std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_');
  for (char c : w) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') ok = false;
  }
  return ok;
}
}  // namespace

bool is_valid_ident(std::string_view word) { return well_formed(word) && !is_reserved_word(word); }

Ident::Ident(std::string name) : name_(std::move(name)) {
  if (!well_formed(name_)) throw Error(ErrorKind::kInvalidIdent, "not an identifier: '" + name_ + "'");
  if (is_reserved_word(name_)) {
    throw Error(ErrorKind::kInvalidIdent, "reserved word used as identifier: '" + name_ + "'");
  }
}

}  // namespace hyplc
