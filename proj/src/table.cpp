#include "cegen/table.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_set>

#include "cegen/error.hpp"
#include "engine.hpp"

namespace cegen {

const char* to_string(TriValue value) noexcept {
  switch (value) {
    case TriValue::kYes: return "YES";
    case TriValue::kNo: return "NO";
    case TriValue::kDontCare: return "-";
  }
  return "?";
}

namespace {

using detail::CauseBits;
using detail::CompiledSpec;

// A set of assignments: positions in `care` are fixed to the bits of
// `value`, the rest are don't-care. `value` is always zero outside `care`.
struct Cube {
  CauseBits care;
  CauseBits value;

  bool contains(const Cube& other) const noexcept {
    return (care & other.care) == care && (other.value & care) == value;
  }
};

std::size_t dash_count(const Cube& c, CauseBits full) { return std::popcount(full & ~c.care); }

// Calls fn(assignment) for every member of `c`; stops early when fn returns false.
template <typename Fn>
bool for_each_member(const Cube& c, CauseBits full, Fn&& fn) {
  const CauseBits free = full & ~c.care;
  CauseBits s = free;
  while (true) {
    if (!fn(c.value | s)) return false;
    if (s == 0) return true;
    s = (s - 1) & free;
  }
}

class CubeOrder {
 public:
  explicit CubeOrder(const CompiledSpec& cs) : cs_(cs) {}

  TriValue at(const Cube& c, std::size_t i) const {
    const CauseBits bit = cs_.bit_of(i);
    if ((c.care & bit) == 0) return TriValue::kDontCare;
    return (c.value & bit) ? TriValue::kYes : TriValue::kNo;
  }

  bool operator()(const Cube& a, const Cube& b) const {
    for (std::size_t i = 0; i < cs_.cause_count(); ++i) {
      const TriValue x = at(a, i), y = at(b, i);
      if (x != y) return x < y;
    }
    return false;
  }

 private:
  const CompiledSpec& cs_;
};

CauseBits full_mask(std::size_t n) { return n == 0 ? 0 : (~CauseBits{0} >> (64 - n)); }

// Greedy widening of `rows` (all sharing one effect vector). `admissible(a)`
// must be true exactly for input rows and constraint-infeasible assignments.
template <typename Admissible>
std::vector<Cube> reduce(const CompiledSpec& cs, std::vector<CauseBits> rows, Admissible&& admissible) {
  const CauseBits full = full_mask(cs.cause_count());
  const CubeOrder order(cs);

  std::vector<Cube> cubes;
  cubes.reserve(rows.size());
  for (CauseBits r : rows) cubes.push_back(Cube{full, r});
  std::sort(cubes.begin(), cubes.end(), order);

  std::vector<std::pair<CauseBits, std::size_t>> index;  // row bits -> cube position
  index.reserve(cubes.size());
  for (std::size_t i = 0; i < cubes.size(); ++i) index.emplace_back(cubes[i].value, i);
  std::sort(index.begin(), index.end());
  auto position_of = [&](CauseBits bits) -> std::ptrdiff_t {
    auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(bits, std::size_t{0}));
    if (it == index.end() || it->first != bits) return -1;
    return static_cast<std::ptrdiff_t>(it->second);
  };

  std::vector<bool> alive(cubes.size(), true);
  std::vector<std::size_t> widened;  // processed cubes that gained a dash
  for (std::size_t idx = 0; idx < cubes.size(); ++idx) {
    if (!alive[idx]) continue;
    Cube c = cubes[idx];
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t p = 0; p < cs.cause_count(); ++p) {
        const CauseBits bit = cs.bit_of(p);
        if ((c.care & bit) == 0) continue;
        const Cube flipped{c.care, c.value ^ bit};
        if (for_each_member(flipped, full, admissible)) {
          c.care &= ~bit;
          c.value &= ~bit;
          changed = true;
          break;
        }
      }
    }
    cubes[idx] = c;
    if (dash_count(c, full) == 0) continue;

    for_each_member(c, full, [&](CauseBits a) {
      const std::ptrdiff_t j = position_of(a);
      if (j < 0 || static_cast<std::size_t>(j) == idx) return true;
      // Earlier cubes that were widened are checked by containment below.
      if (static_cast<std::size_t>(j) > idx || cubes[j].care == full) alive[j] = false;
      return true;
    });
    for (std::size_t j : widened)
      if (alive[j] && c.contains(cubes[j])) alive[j] = false;
    widened.push_back(idx);
  }

  std::vector<Cube> out;
  for (std::size_t i = 0; i < cubes.size(); ++i)
    if (alive[i]) out.push_back(cubes[i]);
  std::sort(out.begin(), out.end(), order);
  return out;
}

Column to_column(const CompiledSpec& cs, const Cube& cube, const std::vector<bool>& effects) {
  const CubeOrder order(cs);
  Column col;
  col.causes.reserve(cs.cause_count());
  for (std::size_t i = 0; i < cs.cause_count(); ++i) col.causes.push_back(order.at(cube, i));
  col.effects = effects;
  return col;
}

Assignment decode(const CegSpec& spec, const CompiledSpec& cs, CauseBits bits) {
  Assignment a;
  for (std::size_t i = 0; i < spec.causes.size(); ++i) a.set(spec.causes[i].id, (bits & cs.bit_of(i)) != 0);
  return a;
}

void check_capacity(const CegSpec& spec, const TableOptions& options) {
  const std::size_t limit = std::min(options.max_causes, detail::kMaxEncodableCauses);
  if (spec.causes.size() > limit) throw CapacityError(spec.causes.size(), limit);
}

}  // namespace

std::vector<FeasibleRow> enumerate_feasible(const CegSpec& spec, const TableOptions& options) {
  check_capacity(spec, options);
  std::vector<FeasibleRow> rows;
  if (spec.causes.empty()) return rows;

  const CompiledSpec cs(spec);
  CompiledSpec::Scratch scratch;
  std::vector<bool> values;
  const CauseBits end = CauseBits{1} << cs.cause_count();
  for (CauseBits a = 0; a < end; ++a) {
    if (!cs.feasible(a)) continue;
    cs.evaluate(a, values, scratch);
    EffectVector effects;
    for (std::size_t i = 0; i < spec.effects.size(); ++i) effects.set(spec.effects[i].id, values[i]);
    rows.push_back(FeasibleRow{decode(spec, cs, a), std::move(effects)});
  }
  return rows;
}

DecisionTable derive_table(const CegSpec& spec, const TableOptions& options) {
  check_capacity(spec, options);
  auto shared = std::make_shared<const CegSpec>(spec);
  if (spec.causes.empty()) return DecisionTable(shared, {});

  const CompiledSpec cs(spec);
  CompiledSpec::Scratch scratch;
  const CauseBits end = CauseBits{1} << cs.cause_count();

  // Partition feasible assignments by full effect vector; -1 marks infeasible.
  std::vector<std::int32_t> label(static_cast<std::size_t>(end), -1);
  std::map<std::vector<bool>, std::int32_t> partition_of;
  std::vector<std::vector<bool>> partition_effects;
  std::vector<std::vector<CauseBits>> partition_rows;
  std::vector<bool> values;
  for (CauseBits a = 0; a < end; ++a) {
    if (!cs.feasible(a)) continue;
    cs.evaluate(a, values, scratch);
    auto it = partition_of.find(values);
    if (it == partition_of.end()) {
      it = partition_of.emplace(values, static_cast<std::int32_t>(partition_effects.size())).first;
      partition_effects.push_back(values);
      partition_rows.emplace_back();
    }
    label[a] = it->second;
    partition_rows[it->second].push_back(a);
  }

  std::vector<Column> columns;
  for (std::size_t id = 0; id < partition_rows.size(); ++id) {
    const auto pid = static_cast<std::int32_t>(id);
    auto admissible = [&](CauseBits a) { return label[a] == pid || label[a] < 0; };
    for (const Cube& cube : reduce(cs, std::move(partition_rows[id]), admissible))
      columns.push_back(to_column(cs, cube, partition_effects[id]));
  }
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  return DecisionTable(std::move(shared), std::move(columns));
}

std::vector<Column> reduce_columns(const CegSpec& spec, std::span<const FeasibleRow> rows) {
  if (rows.empty()) return {};
  const CompiledSpec cs(spec);

  std::vector<bool> effects;
  for (const Effect& e : spec.effects) {
    const auto v = rows.front().effects.get(e.id);
    if (!v) throw ContractError("row effect vector is missing effect '" + e.id.str() + "'");
    effects.push_back(*v);
  }

  std::vector<CauseBits> bits;
  std::unordered_set<CauseBits> members;
  for (const FeasibleRow& row : rows) {
    if (row.effects != rows.front().effects) throw ContractError("rows passed to reduce_columns have different effect vectors");
    const CauseBits a = cs.encode(spec, row.causes);
    if (!cs.feasible(a)) throw ContractError("row passed to reduce_columns violates the input constraints");
    if (!members.insert(a).second) throw ContractError("row passed to reduce_columns appears twice");
    bits.push_back(a);
  }

  auto admissible = [&](CauseBits a) { return members.count(a) != 0 || !cs.feasible(a); };
  std::vector<Column> out;
  for (const Cube& cube : reduce(cs, std::move(bits), admissible)) out.push_back(to_column(cs, cube, effects));
  return out;
}

std::vector<Assignment> expand(const CegSpec& spec, const Column& column) {
  if (column.causes.size() != spec.causes.size())
    throw ContractError("column has " + std::to_string(column.causes.size()) + " cause entries, spec has " +
                        std::to_string(spec.causes.size()));
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < column.causes.size(); ++i)
    if (column.causes[i] == TriValue::kDontCare) free.push_back(i);
  if (free.size() >= 63) throw ContractError("column has too many don't-care entries to expand");

  std::vector<Assignment> out;
  const std::uint64_t count = std::uint64_t{1} << free.size();
  for (std::uint64_t k = 0; k < count; ++k) {
    Assignment a;
    for (std::size_t i = 0; i < column.causes.size(); ++i)
      if (column.causes[i] != TriValue::kDontCare) a.set(spec.causes[i].id, column.causes[i] == TriValue::kYes);
    // First free position is the most significant bit of k.
    for (std::size_t j = 0; j < free.size(); ++j)
      a.set(spec.causes[free[j]].id, ((k >> (free.size() - 1 - j)) & 1u) != 0);
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace cegen
