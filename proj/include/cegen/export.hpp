#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cegen/error.hpp"
#include "cegen/model.hpp"
#include "cegen/table.hpp"
#include "cegen/testgen.hpp"

namespace cegen {

enum class Format { kJson, kCsv, kMarkdown, kDot, kText };

std::optional<Format> parse_format(std::string_view name) noexcept;
const char* to_string(Format format) noexcept;

/// Thrown when a format does not apply to the requested artifact.
class FormatError : public Error {
 public:
  using Error::Error;
};

// All exporters produce UTF-8 text with LF line endings. Output depends only
// on the arguments, so repeated calls are byte-identical.

/// json, csv, markdown or text.
std::string export_table(const DecisionTable& table, Format format);

/// json, csv, markdown or text. JSON also carries the table's columns.
std::string export_tests(const DecisionTable& table, const std::vector<TestCase>& tests, Format format);
std::string export_grouped_tests(const DecisionTable& table, const std::vector<GroupedTest>& rows,
                                 Format format);

/// json or text.
std::string export_coverage(const DecisionTable& table, const CoverageReport& report, Format format);

/// dot, json, or text (canonical .ceg source).
std::string export_graph(const CegSpec& spec, Format format);

/// Graphviz digraph with causes on the left rank and effects on the right.
std::string to_dot(const CegSpec& spec);

}  // namespace cegen
