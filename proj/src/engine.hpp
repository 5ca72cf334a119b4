#pragma once

// Index-based form of a validated CegSpec used by evaluation and table
// derivation. A cause assignment is a bit pattern in which cause i (in
// declaration order) is bit (n - 1 - i), so numeric order on patterns equals
// lexicographic order on declaration-ordered values with false < true.

#include <cstdint>
#include <vector>

#include "cegen/model.hpp"

namespace cegen::detail {

using CauseBits = std::uint64_t;

/// Largest cause count the bit encoding can represent.
inline constexpr std::size_t kMaxEncodableCauses = 32;

class CompiledSpec {
 public:
  /// `spec` must pass validate_spec.
  explicit CompiledSpec(const CegSpec& spec);

  std::size_t cause_count() const noexcept { return cause_count_; }
  std::size_t effect_count() const noexcept { return effects_.size(); }

  CauseBits bit_of(std::size_t cause_index) const noexcept {
    return CauseBits{1} << (cause_count_ - 1 - cause_index);
  }

  bool feasible(CauseBits causes) const noexcept;

  /// Per-caller working memory; keeps evaluation const and reentrant.
  struct Scratch {
    std::vector<bool> nodes;
    std::vector<std::uint8_t> stack;
  };

  /// Writes raw (unmasked) effect values into `out`, resized to effect_count.
  void evaluate_raw(CauseBits causes, std::vector<bool>& out, Scratch& scratch) const;
  /// Masks applied to a raw vector in place.
  void apply_masks(std::vector<bool>& effects) const;
  void evaluate(CauseBits causes, std::vector<bool>& out, Scratch& scratch) const;

  /// Converts a name-keyed assignment, throwing AssignmentError on missing or
  /// unknown causes.
  CauseBits encode(const CegSpec& spec, const Assignment& assignment) const;

 private:
  enum class Op : std::uint8_t { kCause, kNode, kNot, kAnd, kOr };
  struct Instr {
    Op op;
    std::uint32_t arg;  // cause bit position, node index or operand count
  };
  using Program = std::vector<Instr>;

  struct Set {
    CauseBits members;
    enum class Kind : std::uint8_t { kExclusive, kInclusive, kOne, kRequires } kind;
    CauseBits antecedent;  // kRequires only
  };

  static bool run(const Program& program, CauseBits causes, const std::vector<bool>& nodes,
                  std::vector<std::uint8_t>& stack);

  std::size_t cause_count_ = 0;
  std::vector<Program> nodes_;  // topological order
  std::vector<Program> effects_;
  std::vector<Set> sets_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks_;
};

}  // namespace cegen::detail
