#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cegen {

/// Identifier of a cause, intermediate node or effect.
///
/// Construction does not validate the name; `is_valid_identifier` and
/// `validate_spec` report malformed ids.
class NodeId {
 public:
  NodeId() = default;
  explicit NodeId(std::string name) : name_(std::move(name)) {}

  const std::string& str() const noexcept { return name_; }

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;

 private:
  std::string name_;
};

/// True iff `name` is a letter followed by letters, digits or underscores.
bool is_valid_identifier(std::string_view name) noexcept;

/// True iff `word` is a keyword of the .ceg language (case-insensitive).
bool is_reserved_word(std::string_view word) noexcept;

/// Immutable Boolean expression tree over node ids.
///
/// And/Or are n-ary and always hold at least two operands. Copies share
/// the underlying tree.
class BoolExpr {
 public:
  enum class Kind { kVar, kNot, kAnd, kOr };

  static BoolExpr var(NodeId id);
  static BoolExpr var(std::string name) { return var(NodeId(std::move(name))); }
  static BoolExpr negate(BoolExpr operand);
  /// Throws ContractError when fewer than two operands are given.
  static BoolExpr all_of(std::vector<BoolExpr> operands);
  static BoolExpr any_of(std::vector<BoolExpr> operands);

  Kind kind() const noexcept { return rep_->kind; }
  /// Only meaningful for kVar.
  const NodeId& id() const noexcept { return rep_->id; }
  /// One operand for kNot, two or more for kAnd/kOr, none for kVar.
  std::span<const BoolExpr> operands() const noexcept { return rep_->operands; }

  friend bool operator==(const BoolExpr& a, const BoolExpr& b);

 private:
  struct Rep {
    Kind kind;
    NodeId id;
    std::vector<BoolExpr> operands;
  };
  explicit BoolExpr(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

  std::shared_ptr<const Rep> rep_;
};

/// Calls `fn(const NodeId&)` for every variable occurrence, left to right.
template <typename Fn>
void for_each_var(const BoolExpr& expr, Fn&& fn) {
  if (expr.kind() == BoolExpr::Kind::kVar) {
    fn(expr.id());
    return;
  }
  for (const BoolExpr& op : expr.operands()) for_each_var(op, fn);
}

struct Cause {
  NodeId id;
  std::string description;

  friend bool operator==(const Cause&, const Cause&) = default;
};

struct IntermediateNode {
  NodeId id;
  BoolExpr expr;

  friend bool operator==(const IntermediateNode&, const IntermediateNode&) = default;
};

struct Effect {
  NodeId id;
  std::string description;
  BoolExpr expr;

  friend bool operator==(const Effect&, const Effect&) = default;
};

// Input constraints over causes.
struct Exclusive {  // at most one member true
  std::vector<NodeId> members;
  friend bool operator==(const Exclusive&, const Exclusive&) = default;
};
struct Inclusive {  // at least one member true
  std::vector<NodeId> members;
  friend bool operator==(const Inclusive&, const Inclusive&) = default;
};
struct OneAndOnlyOne {  // exactly one member true
  std::vector<NodeId> members;
  friend bool operator==(const OneAndOnlyOne&, const OneAndOnlyOne&) = default;
};
struct Requires {  // antecedent true => some consequent true
  NodeId antecedent;
  std::vector<NodeId> consequents;
  friend bool operator==(const Requires&, const Requires&) = default;
};
// Output constraint: masker true forces masked false.
struct Mask {
  NodeId masker;
  NodeId masked;
  friend bool operator==(const Mask&, const Mask&) = default;
};

using Constraint = std::variant<Exclusive, Inclusive, OneAndOnlyOne, Requires, Mask>;

/// One-letter symbol of a constraint kind: E, I, O, R or M.
char constraint_symbol(const Constraint& c) noexcept;

struct CegSpec {
  std::string title;
  std::vector<Cause> causes;
  std::vector<IntermediateNode> intermediates;
  std::vector<Effect> effects;
  std::vector<Constraint> constraints;

  const Cause* find_cause(const NodeId& id) const noexcept;
  const IntermediateNode* find_intermediate(const NodeId& id) const noexcept;
  const Effect* find_effect(const NodeId& id) const noexcept;

  friend bool operator==(const CegSpec&, const CegSpec&) = default;
};

/// Truth values keyed by node id. Used for cause assignments and effect
/// vectors; iteration is in id order, not declaration order.
class TruthMap {
 public:
  TruthMap() = default;
  TruthMap(std::initializer_list<std::pair<const NodeId, bool>> init) : values_(init) {}

  void set(const NodeId& id, bool value) { values_[id] = value; }
  void set(const std::string& name, bool value) { values_[NodeId(name)] = value; }
  std::optional<bool> get(const NodeId& id) const;
  /// Throws ContractError if `id` is absent.
  bool at(const NodeId& id) const;
  bool at(const std::string& name) const { return at(NodeId(name)); }
  std::size_t size() const noexcept { return values_.size(); }
  const std::map<NodeId, bool>& values() const noexcept { return values_; }

  friend bool operator==(const TruthMap&, const TruthMap&) = default;
  friend auto operator<=>(const TruthMap&, const TruthMap&) = default;

 private:
  std::map<NodeId, bool> values_;
};

/// Total mapping cause -> bool.
class Assignment : public TruthMap {
 public:
  using TruthMap::TruthMap;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Total mapping effect -> bool.
class EffectVector : public TruthMap {
 public:
  using TruthMap::TruthMap;
  friend bool operator==(const EffectVector&, const EffectVector&) = default;
};

enum class FindingKind {
  kInvalidIdentifier,
  kDuplicateId,
  kDanglingReference,
  kEffectInExpression,
  kCycle,
  kWrongNodeKind,
  kConstraintArity,
  kSelfReference,
  kDuplicateMember,
  kInvalidText,
};

struct Finding {
  FindingKind kind;
  std::string message;
  NodeId subject;
};

/// Every invariant violation in `spec`; empty iff `spec` is valid.
std::vector<Finding> validate_spec(const CegSpec& spec);

/// Effect values before masks are applied.
EffectVector evaluate_unmasked(const CegSpec& spec, const Assignment& assignment);

/// Applies the Mask constraints of `spec` in declaration order, reading the
/// masker's value from `raw`.
EffectVector apply_masks(const CegSpec& spec, const EffectVector& raw);

/// Effect vector of `assignment`, masks applied. Throws AssignmentError on a
/// missing or unknown cause.
EffectVector evaluate(const CegSpec& spec, const Assignment& assignment);

/// True iff every Exclusive/Inclusive/OneAndOnlyOne/Requires constraint holds.
bool check_constraints(const CegSpec& spec, const Assignment& assignment);

}  // namespace cegen
