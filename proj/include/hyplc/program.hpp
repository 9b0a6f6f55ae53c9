#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "hyplc/error.hpp"
#include "hyplc/formula.hpp"

namespace hyplc {

// ---------------------------------------------------------------------------
// Translatable hybrid programs: loop-free, ODE-free, tests only as guards.

namespace detail {
struct HpNode;
struct StNode;
}  // namespace detail

class HybridProgram {
 public:
  static HybridProgram assign(Ident target, Term value);
  static HybridProgram seq(HybridProgram first, HybridProgram second);
  /// `complemented` selects between `(?g;a) ++ (?!g;b)` / `(?g;a) ++ ?!g`
  /// and the default form `(?g;a) ++ b`; the latter requires `else_branch`.
  static HybridProgram choice(Formula guard, HybridProgram then_branch,
                              std::optional<HybridProgram> else_branch, bool complemented);

  const detail::HpNode& node() const { return *node_; }

  friend bool operator==(const HybridProgram& a, const HybridProgram& b);

 private:
  explicit HybridProgram(std::shared_ptr<const detail::HpNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::HpNode> node_;
};

struct HpAssign {
  Ident target;
  Term value;
  friend bool operator==(const HpAssign&, const HpAssign&) = default;
};

struct HpSeq {
  HybridProgram first;
  HybridProgram second;
  friend bool operator==(const HpSeq&, const HpSeq&) = default;
};

struct HpChoice {
  Formula guard;
  HybridProgram then_branch;
  std::optional<HybridProgram> else_branch;
  bool complemented;
  friend bool operator==(const HpChoice&, const HpChoice&) = default;
};

namespace detail {
struct HpNode {
  std::variant<HpAssign, HpSeq, HpChoice> v;
};
}  // namespace detail

inline bool operator==(const HybridProgram& a, const HybridProgram& b) {
  return a.node_ == b.node_ || a.node_->v == b.node_->v;
}

/// Count of choice nodes, bounding the reachable-set size.
int choice_count(const HybridProgram& p);
/// True when every choice is complemented, so the program is deterministic.
bool fully_complemented(const HybridProgram& p);
int program_depth(const HybridProgram& p);

// ---------------------------------------------------------------------------
// ST statements (loop-free subset).

class StStatement {
 public:
  static StStatement assign(Ident target, Term value, Location loc = {});
  static StStatement seq(StStatement first, StStatement second);
  static StStatement if_then_else(Formula cond, StStatement then_branch, StStatement else_branch,
                                  Location loc = {});
  static StStatement if_then(Formula cond, StStatement then_branch, Location loc = {});

  const detail::StNode& node() const { return *node_; }
  /// Source position of the statement; unknown for synthesized trees.
  const Location& location() const;

  friend bool operator==(const StStatement& a, const StStatement& b);

 private:
  explicit StStatement(std::shared_ptr<const detail::StNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::StNode> node_;
};

struct StAssign {
  Ident target;
  Term value;
  friend bool operator==(const StAssign&, const StAssign&) = default;
};

struct StSeq {
  StStatement first;
  StStatement second;
  friend bool operator==(const StSeq&, const StSeq&) = default;
};

struct StIfThenElse {
  Formula cond;
  StStatement then_branch;
  StStatement else_branch;
  friend bool operator==(const StIfThenElse&, const StIfThenElse&) = default;
};

struct StIfThen {
  Formula cond;
  StStatement then_branch;
  friend bool operator==(const StIfThen&, const StIfThen&) = default;
};

namespace detail {
struct StNode {
  std::variant<StAssign, StSeq, StIfThenElse, StIfThen> v;
  Location loc;
};
}  // namespace detail

inline bool operator==(const StStatement& a, const StStatement& b) {
  return a.node_ == b.node_ || a.node_->v == b.node_->v;
}

inline const Location& StStatement::location() const { return node_->loc; }

int statement_depth(const StStatement& s);

}  // namespace hyplc
