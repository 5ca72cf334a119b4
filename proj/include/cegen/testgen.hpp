#pragma once

#include <string>
#include <vector>

#include "cegen/model.hpp"
#include "cegen/table.hpp"

namespace cegen {

/// One decision-table column as an executable test. `inputs` and
/// `expected_effects` follow cause and effect declaration order.
struct TestCase {
  int id = 0;  // 1-based column position
  std::vector<TriValue> inputs;
  std::string input_description;
  std::vector<bool> expected_effects;
  std::string expected_description;

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

/// Presentation row merging tests that expect the same effects.
struct GroupedTest {
  int id = 0;
  std::vector<int> provenance;  // ids of the merged tests, ascending
  std::vector<std::vector<TriValue>> alternatives;  // inputs of each merged test
  std::string input_description;  // alternatives joined with " OR "
  std::vector<bool> expected_effects;
  std::string expected_description;

  friend bool operator==(const GroupedTest&, const GroupedTest&) = default;
};

struct DescribeOptions {
  /// Also list NO causes ("NOT ...") and don't-care causes ("ANY ...").
  bool verbose_inputs = false;
};

struct CauseCoverage {
  NodeId id;
  bool yes = false;  // "-" counts as both polarities
  bool no = false;
};

struct EffectCoverage {
  NodeId id;
  bool is_true = false;
  bool is_false = false;
};

struct CoverageReport {
  std::vector<CauseCoverage> causes;
  std::vector<EffectCoverage> effects;
  bool satisfied = false;
  std::size_t effect_yes_count = 0;
};

/// Exactly one test per column, in column order.
std::vector<TestCase> generate_tests(const DecisionTable& table, const DescribeOptions& options = {});

/// Merges tests with identical expected effects; rows are ordered by their
/// first merged test.
std::vector<GroupedTest> group_by_effects(const std::vector<TestCase>& tests);

/// Which polarities each cause and effect reaches across the table.
/// Satisfied only when every one reaches both and the table is non-empty.
CoverageReport coverage(const DecisionTable& table);

}  // namespace cegen
