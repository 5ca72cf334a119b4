#pragma once

// Straightforward tree-walking semantics used as the test oracle. Nothing
// here goes through the compiled evaluator in the library.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cegen/model.hpp"
#include "cegen/table.hpp"

namespace ceg_test {

using Bits = std::vector<bool>;  // indexed by cause declaration order

struct RefRow {
  Bits causes;
  Bits effects;
  friend bool operator==(const RefRow&, const RefRow&) = default;
};

/// Value of `id` (a cause or an intermediate node) under `causes`.
bool ref_node(const cegen::CegSpec& spec, const std::string& id, const Bits& causes);
bool ref_expr(const cegen::CegSpec& spec, const cegen::BoolExpr& expr, const Bits& causes);

Bits ref_unmasked(const cegen::CegSpec& spec, const Bits& causes);
Bits ref_effects(const cegen::CegSpec& spec, const Bits& causes);
bool ref_feasible(const cegen::CegSpec& spec, const Bits& causes);

/// Every feasible assignment, counting up from all-false with the first
/// cause as the most significant bit.
std::vector<RefRow> brute_force(const cegen::CegSpec& spec);

/// Bits for the n-cause assignment whose binary value is `code`.
Bits bits_of(std::uint64_t code, std::size_t n);

cegen::Assignment to_assignment(const cegen::CegSpec& spec, const Bits& causes);
Bits to_bits(const cegen::CegSpec& spec, const cegen::Assignment& a);
Bits to_bits(const cegen::CegSpec& spec, const cegen::EffectVector& e);

/// Cause vectors a column stands for ("-" becomes both values).
std::vector<Bits> ref_expand(const cegen::Column& column);

/// Describes the first way `columns` fails to reproduce brute_force(spec)
/// once expanded and filtered: an unknown or contradicting row, a column
/// with no feasible expansion, or a missing row. Columns of one effect
/// vector may overlap.
std::optional<std::string> oracle_mismatch(const cegen::CegSpec& spec, const std::vector<cegen::Column>& columns);

}  // namespace ceg_test
