#include "cegen/model.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <unordered_map>

#include "cegen/error.hpp"
#include "engine.hpp"

namespace cegen {

bool is_valid_identifier(std::string_view name) noexcept {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u < 0x80 && (std::isalnum(u) || c == '_');
  });
}

bool is_reserved_word(std::string_view word) noexcept {
  static constexpr std::string_view kWords[] = {
      "title", "cause", "node",     "effect", "constraint", "excl", "incl",
      "one",   "requires", "mask", "not",    "and",        "or"};
  std::string lower(word);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return std::find(std::begin(kWords), std::end(kWords), lower) != std::end(kWords);
}

BoolExpr BoolExpr::var(NodeId id) {
  return BoolExpr(std::make_shared<const Rep>(Rep{Kind::kVar, std::move(id), {}}));
}

BoolExpr BoolExpr::negate(BoolExpr operand) {
  return BoolExpr(std::make_shared<const Rep>(Rep{Kind::kNot, NodeId(), {std::move(operand)}}));
}

BoolExpr BoolExpr::all_of(std::vector<BoolExpr> operands) {
  if (operands.size() < 2) throw ContractError("AND needs at least two operands");
  return BoolExpr(std::make_shared<const Rep>(Rep{Kind::kAnd, NodeId(), std::move(operands)}));
}

BoolExpr BoolExpr::any_of(std::vector<BoolExpr> operands) {
  if (operands.size() < 2) throw ContractError("OR needs at least two operands");
  return BoolExpr(std::make_shared<const Rep>(Rep{Kind::kOr, NodeId(), std::move(operands)}));
}

bool operator==(const BoolExpr& a, const BoolExpr& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == BoolExpr::Kind::kVar) return a.id() == b.id();
  return std::equal(a.operands().begin(), a.operands().end(), b.operands().begin(),
                    b.operands().end());
}

char constraint_symbol(const Constraint& c) noexcept {
  static constexpr char kSymbols[] = {'E', 'I', 'O', 'R', 'M'};
  return kSymbols[c.index()];
}

const Cause* CegSpec::find_cause(const NodeId& id) const noexcept {
  auto it = std::find_if(causes.begin(), causes.end(), [&](const Cause& c) { return c.id == id; });
  return it == causes.end() ? nullptr : &*it;
}

const IntermediateNode* CegSpec::find_intermediate(const NodeId& id) const noexcept {
  auto it = std::find_if(intermediates.begin(), intermediates.end(),
                         [&](const IntermediateNode& n) { return n.id == id; });
  return it == intermediates.end() ? nullptr : &*it;
}

const Effect* CegSpec::find_effect(const NodeId& id) const noexcept {
  auto it = std::find_if(effects.begin(), effects.end(), [&](const Effect& e) { return e.id == id; });
  return it == effects.end() ? nullptr : &*it;
}

std::optional<bool> TruthMap::get(const NodeId& id) const {
  auto it = values_.find(id);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

bool TruthMap::at(const NodeId& id) const {
  auto it = values_.find(id);
  if (it == values_.end()) throw ContractError("no value for '" + id.str() + "'");
  return it->second;
}

namespace {

enum class NodeKind { kCause, kIntermediate, kEffect };

bool is_plain_text(const std::string& text) {
  return std::none_of(text.begin(), text.end(), [](char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return (u < 0x20 && c != '\t') || u == 0x7f;
  });
}

class Validator {
 public:
  explicit Validator(const CegSpec& spec) : spec_(spec) {}

  std::vector<Finding> run() {
    if (!is_plain_text(spec_.title))
      add(FindingKind::kInvalidText, "title contains control characters", NodeId());
    for (const Cause& c : spec_.causes) {
      declare(c.id, NodeKind::kCause);
      check_text(c.id, c.description);
    }
    for (const IntermediateNode& n : spec_.intermediates) declare(n.id, NodeKind::kIntermediate);
    for (const Effect& e : spec_.effects) {
      declare(e.id, NodeKind::kEffect);
      check_text(e.id, e.description);
    }
    for (const IntermediateNode& n : spec_.intermediates) check_expr(n.id, n.expr);
    for (const Effect& e : spec_.effects) check_expr(e.id, e.expr);
    check_cycles();
    for (const Constraint& c : spec_.constraints) std::visit([&](const auto& k) { check(k); }, c);
    return std::move(findings_);
  }

 private:
  void add(FindingKind kind, std::string message, NodeId subject) {
    findings_.push_back(Finding{kind, std::move(message), std::move(subject)});
  }

  void declare(const NodeId& id, NodeKind kind) {
    if (!is_valid_identifier(id.str()) || is_reserved_word(id.str())) {
      add(FindingKind::kInvalidIdentifier, "invalid identifier '" + id.str() + "'", id);
    }
    if (!kinds_.emplace(id.str(), kind).second) {
      add(FindingKind::kDuplicateId, "duplicate id '" + id.str() + "'", id);
    }
  }

  void check_text(const NodeId& id, const std::string& text) {
    if (!is_plain_text(text))
      add(FindingKind::kInvalidText, "description of '" + id.str() + "' contains control characters",
          id);
  }

  void check_expr(const NodeId& owner, const BoolExpr& expr) {
    for_each_var(expr, [&](const NodeId& ref) {
      auto it = kinds_.find(ref.str());
      if (it == kinds_.end()) {
        add(FindingKind::kDanglingReference,
            "dangling reference '" + ref.str() + "' in '" + owner.str() + "'", ref);
      } else if (it->second == NodeKind::kEffect) {
        add(FindingKind::kEffectInExpression,
            "effect referenced in expression: '" + ref.str() + "' in '" + owner.str() + "'", ref);
      }
    });
  }

  void check_cycles() {
    const auto& nodes = spec_.intermediates;
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i].id.str(), i);
    std::vector<std::vector<std::size_t>> edges(nodes.size());
    std::vector<bool> self_loop(nodes.size(), false);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for_each_var(nodes[i].expr, [&](const NodeId& ref) {
        auto it = index.find(ref.str());
        if (it == index.end()) return;
        edges[i].push_back(it->second);
        if (it->second == i) self_loop[i] = true;
      });
    }

    // Tarjan's strongly connected components.
    std::vector<int> order(nodes.size(), -1), low(nodes.size(), 0);
    std::vector<bool> on_stack(nodes.size(), false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> cycles;
    int counter = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
      order[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      for (std::size_t w : edges[v]) {
        if (order[w] < 0) {
          visit(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
      }
      if (low[v] != order[v]) return;
      std::vector<std::size_t> component;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);
      if (component.size() > 1 || self_loop[v]) {
        std::sort(component.begin(), component.end());
        cycles.push_back(std::move(component));
      }
    };
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (order[i] < 0) visit(i);

    std::sort(cycles.begin(), cycles.end());
    for (const auto& component : cycles) {
      std::string names;
      for (std::size_t i : component) {
        if (!names.empty()) names += ", ";
        names += nodes[i].id.str();
      }
      add(FindingKind::kCycle, "cycle through intermediate nodes: " + names, nodes[component[0]].id);
    }
  }

  void member(const NodeId& id, NodeKind expected, std::set<NodeId>& seen) {
    auto it = kinds_.find(id.str());
    if (it == kinds_.end()) {
      add(FindingKind::kDanglingReference, "constraint references undeclared '" + id.str() + "'", id);
    } else if (it->second != expected) {
      add(FindingKind::kWrongNodeKind,
          "constraint member '" + id.str() + "' must be " +
              (expected == NodeKind::kCause ? "a cause" : "an effect"),
          id);
    }
    if (!seen.insert(id).second)
      add(FindingKind::kDuplicateMember, "constraint lists '" + id.str() + "' twice", id);
  }

  void check_set(const std::vector<NodeId>& members, const char* name) {
    std::set<NodeId> seen;
    for (const NodeId& id : members) member(id, NodeKind::kCause, seen);
    if (members.size() < 2)
      add(FindingKind::kConstraintArity, std::string(name) + " constraint needs at least two members",
          members.empty() ? NodeId() : members.front());
  }

  void check(const Exclusive& c) { check_set(c.members, "excl"); }
  void check(const Inclusive& c) { check_set(c.members, "incl"); }
  void check(const OneAndOnlyOne& c) { check_set(c.members, "one"); }

  void check(const Requires& c) {
    std::set<NodeId> seen;
    member(c.antecedent, NodeKind::kCause, seen);
    std::set<NodeId> consequents;
    for (const NodeId& id : c.consequents) {
      if (id == c.antecedent) {
        add(FindingKind::kSelfReference, "requires antecedent '" + id.str() + "' is also a consequent",
            id);
        continue;
      }
      member(id, NodeKind::kCause, seen);
    }
    if (c.consequents.empty())
      add(FindingKind::kConstraintArity, "requires constraint needs at least one consequent",
          c.antecedent);
  }

  void check(const Mask& c) {
    std::set<NodeId> seen;
    member(c.masker, NodeKind::kEffect, seen);
    if (c.masker == c.masked) {
      add(FindingKind::kSelfReference, "effect '" + c.masker.str() + "' masks itself", c.masker);
      return;
    }
    member(c.masked, NodeKind::kEffect, seen);
  }

  const CegSpec& spec_;
  std::unordered_map<std::string, NodeKind> kinds_;
  std::vector<Finding> findings_;
};

EffectVector to_effect_vector(const CegSpec& spec, const std::vector<bool>& values) {
  EffectVector out;
  for (std::size_t i = 0; i < spec.effects.size(); ++i) out.set(spec.effects[i].id, values[i]);
  return out;
}

}  // namespace

std::vector<Finding> validate_spec(const CegSpec& spec) { return Validator(spec).run(); }

EffectVector evaluate_unmasked(const CegSpec& spec, const Assignment& assignment) {
  detail::CompiledSpec compiled(spec);
  detail::CompiledSpec::Scratch scratch;
  std::vector<bool> values;
  compiled.evaluate_raw(compiled.encode(spec, assignment), values, scratch);
  return to_effect_vector(spec, values);
}

EffectVector apply_masks(const CegSpec& spec, const EffectVector& raw) {
  std::vector<bool> values(spec.effects.size());
  for (std::size_t i = 0; i < spec.effects.size(); ++i) values[i] = raw.at(spec.effects[i].id);
  detail::CompiledSpec(spec).apply_masks(values);
  return to_effect_vector(spec, values);
}

EffectVector evaluate(const CegSpec& spec, const Assignment& assignment) {
  detail::CompiledSpec compiled(spec);
  detail::CompiledSpec::Scratch scratch;
  std::vector<bool> values;
  compiled.evaluate(compiled.encode(spec, assignment), values, scratch);
  return to_effect_vector(spec, values);
}

bool check_constraints(const CegSpec& spec, const Assignment& assignment) {
  detail::CompiledSpec compiled(spec);
  return compiled.feasible(compiled.encode(spec, assignment));
}

}  // namespace cegen
