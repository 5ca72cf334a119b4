#include "cegen/testgen.hpp"

#include <algorithm>
#include <map>

namespace cegen {

namespace {

const std::string& label(const NodeId& id, const std::string& description) {
  return description.empty() ? id.str() : description;
}

std::string join(const std::vector<std::string>& parts, const char* sep, const char* when_empty) {
  if (parts.empty()) return when_empty;
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

constexpr const char* kNothing = "(none)";

}  // namespace

std::vector<TestCase> generate_tests(const DecisionTable& table, const DescribeOptions& options) {
  const CegSpec& spec = table.spec();
  std::vector<TestCase> tests;
  tests.reserve(table.size());
  int id = 0;
  for (const Column& col : table.columns()) {
    TestCase t;
    t.id = ++id;
    t.inputs = col.causes;
    t.expected_effects = col.effects;

    std::vector<std::string> inputs;
    for (std::size_t i = 0; i < spec.causes.size(); ++i) {
      const std::string& name = label(spec.causes[i].id, spec.causes[i].description);
      switch (col.causes[i]) {
        case TriValue::kYes: inputs.push_back(name); break;
        case TriValue::kNo:
          if (options.verbose_inputs) inputs.push_back("NOT " + name);
          break;
        case TriValue::kDontCare:
          if (options.verbose_inputs) inputs.push_back("ANY " + name);
          break;
      }
    }
    t.input_description = join(inputs, " AND ", kNothing);

    std::vector<std::string> outputs;
    for (std::size_t i = 0; i < spec.effects.size(); ++i)
      if (col.effects[i]) outputs.push_back(label(spec.effects[i].id, spec.effects[i].description));
    t.expected_description = join(outputs, "; ", kNothing);
    tests.push_back(std::move(t));
  }
  return tests;
}

std::vector<GroupedTest> group_by_effects(const std::vector<TestCase>& tests) {
  std::vector<GroupedTest> rows;
  std::map<std::vector<bool>, std::size_t> row_of;
  for (const TestCase& t : tests) {
    auto [it, inserted] = row_of.emplace(t.expected_effects, rows.size());
    if (inserted) {
      GroupedTest row;
      row.id = static_cast<int>(rows.size()) + 1;
      row.expected_effects = t.expected_effects;
      row.expected_description = t.expected_description;
      rows.push_back(std::move(row));
    }
    GroupedTest& row = rows[it->second];
    row.provenance.push_back(t.id);
    row.alternatives.push_back(t.inputs);
  }

  // Descriptions are built afterwards so identical alternatives appear once.
  std::map<int, const TestCase*> by_id;
  for (const TestCase& t : tests) by_id.emplace(t.id, &t);
  for (GroupedTest& row : rows) {
    std::sort(row.provenance.begin(), row.provenance.end());
    std::vector<std::string> texts;
    for (int id : row.provenance) {
      const std::string& text = by_id.at(id)->input_description;
      if (std::find(texts.begin(), texts.end(), text) == texts.end()) texts.push_back(text);
    }
    row.input_description = join(texts, " OR ", kNothing);
  }
  return rows;
}

CoverageReport coverage(const DecisionTable& table) {
  const CegSpec& spec = table.spec();
  CoverageReport report;
  for (const Cause& c : spec.causes) report.causes.push_back(CauseCoverage{c.id});
  for (const Effect& e : spec.effects) report.effects.push_back(EffectCoverage{e.id});

  for (const Column& col : table.columns()) {
    for (std::size_t i = 0; i < col.causes.size(); ++i) {
      if (col.causes[i] != TriValue::kNo) report.causes[i].yes = true;
      if (col.causes[i] != TriValue::kYes) report.causes[i].no = true;
    }
    for (std::size_t i = 0; i < col.effects.size(); ++i) {
      if (col.effects[i]) {
        report.effects[i].is_true = true;
      } else {
        report.effects[i].is_false = true;
      }
    }
  }

  report.effect_yes_count = static_cast<std::size_t>(
      std::count_if(report.effects.begin(), report.effects.end(), [](const EffectCoverage& e) { return e.is_true; }));
  report.satisfied =
      !table.empty() &&
      std::all_of(report.causes.begin(), report.causes.end(), [](const CauseCoverage& c) { return c.yes && c.no; }) &&
      std::all_of(report.effects.begin(), report.effects.end(),
                  [](const EffectCoverage& e) { return e.is_true && e.is_false; });
  return report;
}

}  // namespace cegen
