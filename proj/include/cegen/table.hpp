#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "cegen/model.hpp"

namespace cegen {

/// Default largest cause count derive_table will enumerate (2^24 rows).
inline constexpr std::size_t kDefaultCauseLimit = 24;

/// Column entry for a cause. Declared in column sort order: YES < NO < "-".
enum class TriValue { kYes, kNo, kDontCare };

/// "YES", "NO" or "-".
const char* to_string(TriValue value) noexcept;

/// One feasible cause assignment and the effects it produces.
struct FeasibleRow {
  Assignment causes;
  EffectVector effects;

  friend bool operator==(const FeasibleRow&, const FeasibleRow&) = default;
};

/// A decision-table column. `causes` and `effects` follow cause and effect
/// declaration order.
struct Column {
  std::vector<TriValue> causes;
  std::vector<bool> effects;

  friend bool operator==(const Column&, const Column&) = default;
  friend auto operator<=>(const Column&, const Column&) = default;
};

class DecisionTable {
 public:
  DecisionTable(std::shared_ptr<const CegSpec> spec, std::vector<Column> columns)
      : spec_(std::move(spec)), columns_(std::move(columns)) {}

  const CegSpec& spec() const noexcept { return *spec_; }
  const std::shared_ptr<const CegSpec>& shared_spec() const noexcept { return spec_; }
  const std::vector<Column>& columns() const noexcept { return columns_; }
  std::size_t size() const noexcept { return columns_.size(); }
  bool empty() const noexcept { return columns_.empty(); }

 private:
  std::shared_ptr<const CegSpec> spec_;
  std::vector<Column> columns_;
};

struct TableOptions {
  std::size_t max_causes = kDefaultCauseLimit;
};

/// Every constraint-feasible assignment with its effect vector, in
/// lexicographic cause order (false < true, first-declared cause most
/// significant). A spec with no causes has no rows. Throws CapacityError
/// past `options.max_causes`.
std::vector<FeasibleRow> enumerate_feasible(const CegSpec& spec, const TableOptions& options = {});

/// Decision table whose columns, expanded and filtered by the input
/// constraints, reproduce enumerate_feasible exactly. Columns are sorted
/// and unique.
DecisionTable derive_table(const CegSpec& spec, const TableOptions& options = {});

/// Merges rows sharing one effect vector into don't-care columns.
///
/// Scans columns in sorted order; each column is widened at the first cause
/// position whose flipped half contains only input rows or infeasible
/// assignments, repeatedly, and then absorbs every column it contains.
/// Throws ContractError if rows disagree on effects, repeat, are
/// infeasible or are not total.
std::vector<Column> reduce_columns(const CegSpec& spec, std::span<const FeasibleRow> rows);

/// Every assignment obtained by replacing each "-" with both YES and NO,
/// feasible or not, in lexicographic order.
std::vector<Assignment> expand(const CegSpec& spec, const Column& column);

}  // namespace cegen
