#include "engine.hpp"

#include <bit>
#include <unordered_map>

#include "cegen/error.hpp"

namespace cegen::detail {

namespace {

struct Resolver {
  std::unordered_map<std::string, std::uint32_t> causes;
  std::unordered_map<std::string, std::uint32_t> nodes;  // topological index
};

}  // namespace

CompiledSpec::CompiledSpec(const CegSpec& spec) : cause_count_(spec.causes.size()) {
  if (cause_count_ > kMaxEncodableCauses) throw CapacityError(cause_count_, kMaxEncodableCauses);

  Resolver names;
  for (std::uint32_t i = 0; i < spec.causes.size(); ++i) names.causes.emplace(spec.causes[i].id.str(), i);

  std::unordered_map<std::string, const IntermediateNode*> pending;
  for (const IntermediateNode& n : spec.intermediates) pending.emplace(n.id.str(), &n);

  auto compile = [&](const BoolExpr& root, Program& program) {
    auto emit = [&](auto&& self, const BoolExpr& e) -> void {
      switch (e.kind()) {
        case BoolExpr::Kind::kVar: {
          if (auto it = names.causes.find(e.id().str()); it != names.causes.end()) {
            program.push_back({Op::kCause, static_cast<std::uint32_t>(cause_count_ - 1 - it->second)});
          } else if (auto jt = names.nodes.find(e.id().str()); jt != names.nodes.end()) {
            program.push_back({Op::kNode, jt->second});
          } else {
            throw ContractError("unresolved reference '" + e.id().str() + "'");
          }
          return;
        }
        case BoolExpr::Kind::kNot:
          self(self, e.operands()[0]);
          program.push_back({Op::kNot, 1});
          return;
        case BoolExpr::Kind::kAnd:
        case BoolExpr::Kind::kOr:
          for (const BoolExpr& op : e.operands()) self(self, op);
          program.push_back({e.kind() == BoolExpr::Kind::kAnd ? Op::kAnd : Op::kOr,
                             static_cast<std::uint32_t>(e.operands().size())});
          return;
      }
    };
    emit(emit, root);
  };

  // Intermediates are compiled once all of their node references are
  // compiled; a pass that makes no progress means a cycle or dangling name.
  std::vector<const IntermediateNode*> remaining;
  for (const IntermediateNode& n : spec.intermediates) remaining.push_back(&n);
  while (!remaining.empty()) {
    std::vector<const IntermediateNode*> deferred;
    for (const IntermediateNode* n : remaining) {
      bool ready = true;
      for_each_var(n->expr, [&](const NodeId& ref) {
        if (pending.count(ref.str()) != 0 && names.nodes.count(ref.str()) == 0) ready = false;
      });
      if (!ready) {
        deferred.push_back(n);
        continue;
      }
      Program program;
      compile(n->expr, program);
      names.nodes.emplace(n->id.str(), static_cast<std::uint32_t>(nodes_.size()));
      nodes_.push_back(std::move(program));
    }
    if (deferred.size() == remaining.size())
      throw ContractError("cycle through intermediate node '" + deferred.front()->id.str() + "'");
    remaining = std::move(deferred);
  }

  for (const Effect& e : spec.effects) {
    Program program;
    compile(e.expr, program);
    effects_.push_back(std::move(program));
  }

  auto cause_mask = [&](const std::vector<NodeId>& ids) {
    CauseBits mask = 0;
    for (const NodeId& id : ids) {
      auto it = names.causes.find(id.str());
      if (it == names.causes.end()) throw ContractError("constraint member '" + id.str() + "' is not a cause");
      mask |= bit_of(it->second);
    }
    return mask;
  };
  auto effect_index = [&](const NodeId& id) -> std::uint32_t {
    for (std::uint32_t i = 0; i < spec.effects.size(); ++i)
      if (spec.effects[i].id == id) return i;
    throw ContractError("mask member '" + id.str() + "' is not an effect");
  };

  for (const Constraint& c : spec.constraints) {
    if (const auto* x = std::get_if<Exclusive>(&c)) {
      sets_.push_back({cause_mask(x->members), Set::Kind::kExclusive, 0});
    } else if (const auto* x = std::get_if<Inclusive>(&c)) {
      sets_.push_back({cause_mask(x->members), Set::Kind::kInclusive, 0});
    } else if (const auto* x = std::get_if<OneAndOnlyOne>(&c)) {
      sets_.push_back({cause_mask(x->members), Set::Kind::kOne, 0});
    } else if (const auto* x = std::get_if<Requires>(&c)) {
      sets_.push_back({cause_mask(x->consequents), Set::Kind::kRequires, cause_mask({x->antecedent})});
    } else {
      const auto& m = std::get<Mask>(c);
      masks_.emplace_back(effect_index(m.masker), effect_index(m.masked));
    }
  }
}

bool CompiledSpec::feasible(CauseBits causes) const noexcept {
  for (const Set& s : sets_) {
    const int on = std::popcount(causes & s.members);
    switch (s.kind) {
      case Set::Kind::kExclusive:
        if (on > 1) return false;
        break;
      case Set::Kind::kInclusive:
        if (on < 1) return false;
        break;
      case Set::Kind::kOne:
        if (on != 1) return false;
        break;
      case Set::Kind::kRequires:
        if ((causes & s.antecedent) != 0 && on == 0) return false;
        break;
    }
  }
  return true;
}

bool CompiledSpec::run(const Program& program, CauseBits causes, const std::vector<bool>& nodes,
                       std::vector<std::uint8_t>& stack) {
  stack.clear();
  for (const Instr& in : program) {
    switch (in.op) {
      case Op::kCause:
        stack.push_back(static_cast<std::uint8_t>((causes >> in.arg) & 1u));
        break;
      case Op::kNode:
        stack.push_back(nodes[in.arg] ? 1 : 0);
        break;
      case Op::kNot:
        stack.back() = stack.back() ? 0 : 1;
        break;
      case Op::kAnd:
      case Op::kOr: {
        const bool is_and = in.op == Op::kAnd;
        bool acc = is_and;
        for (std::uint32_t k = 0; k < in.arg; ++k) {
          const bool v = stack.back() != 0;
          stack.pop_back();
          acc = is_and ? (acc && v) : (acc || v);
        }
        stack.push_back(acc ? 1 : 0);
        break;
      }
    }
  }
  return stack.back() != 0;
}

void CompiledSpec::evaluate_raw(CauseBits causes, std::vector<bool>& out, Scratch& scratch) const {
  scratch.nodes.assign(nodes_.size(), false);
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    scratch.nodes[i] = run(nodes_[i], causes, scratch.nodes, scratch.stack);
  out.assign(effects_.size(), false);
  for (std::size_t i = 0; i < effects_.size(); ++i)
    out[i] = run(effects_[i], causes, scratch.nodes, scratch.stack);
}

void CompiledSpec::apply_masks(std::vector<bool>& effects) const {
  // Maskers are read from the raw values, so snapshot them first.
  if (effects.size() <= 64) {
    std::uint64_t raw = 0;
    for (std::size_t i = 0; i < effects.size(); ++i)
      if (effects[i]) raw |= std::uint64_t{1} << i;
    for (const auto& [masker, masked] : masks_)
      if ((raw >> masker) & 1u) effects[masked] = false;
    return;
  }
  const std::vector<bool> raw = effects;
  for (const auto& [masker, masked] : masks_)
    if (raw[masker]) effects[masked] = false;
}

void CompiledSpec::evaluate(CauseBits causes, std::vector<bool>& out, Scratch& scratch) const {
  evaluate_raw(causes, out, scratch);
  if (!masks_.empty()) apply_masks(out);
}

CauseBits CompiledSpec::encode(const CegSpec& spec, const Assignment& assignment) const {
  CauseBits bits = 0;
  for (std::size_t i = 0; i < spec.causes.size(); ++i) {
    const auto value = assignment.get(spec.causes[i].id);
    if (!value) throw AssignmentError("assignment is missing cause '" + spec.causes[i].id.str() + "'");
    if (*value) bits |= bit_of(i);
  }
  for (const auto& [id, value] : assignment.values()) {
    if (spec.find_cause(id) == nullptr)
      throw AssignmentError("assignment names unknown cause '" + id.str() + "'");
  }
  return bits;
}

}  // namespace cegen::detail
