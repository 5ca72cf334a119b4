#include "cegen/export.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "cegen/parser.hpp"

namespace cegen {

using ordered_json = nlohmann::ordered_json;

std::optional<Format> parse_format(std::string_view name) noexcept {
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  if (name == "markdown") return Format::kMarkdown;
  if (name == "dot") return Format::kDot;
  if (name == "text") return Format::kText;
  return std::nullopt;
}

const char* to_string(Format format) noexcept {
  switch (format) {
    case Format::kJson: return "json";
    case Format::kCsv: return "csv";
    case Format::kMarkdown: return "markdown";
    case Format::kDot: return "dot";
    case Format::kText: return "text";
  }
  return "unknown";
}

namespace {

constexpr const char* kCauseHeader = "CONDITION/CAUSE";
constexpr const char* kEffectHeader = "EFFECT/ACTION";

[[noreturn]] void unsupported(Format format, const char* what) {
  throw FormatError(std::string("format '") + to_string(format) + "' does not apply to " + what);
}

// --- grid (shared by csv, markdown and text tables) ---------------------

using Grid = std::vector<std::vector<std::string>>;

Grid table_grid(const DecisionTable& table) {
  const CegSpec& spec = table.spec();
  const std::size_t width = table.size() + 1;
  Grid grid;
  std::vector<std::string> header{kCauseHeader};
  for (std::size_t i = 0; i < table.size(); ++i) header.push_back(std::to_string(i + 1));
  grid.push_back(header);
  for (std::size_t c = 0; c < spec.causes.size(); ++c) {
    std::vector<std::string> row{spec.causes[c].id.str()};
    for (const Column& col : table.columns()) row.emplace_back(to_string(col.causes[c]));
    grid.push_back(std::move(row));
  }
  std::vector<std::string> separator{kEffectHeader};
  separator.resize(width);
  grid.push_back(separator);
  for (std::size_t e = 0; e < spec.effects.size(); ++e) {
    std::vector<std::string> row{spec.effects[e].id.str()};
    for (const Column& col : table.columns()) row.emplace_back(col.effects[e] ? "YES" : "NO");
    grid.push_back(std::move(row));
  }
  return grid;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string write_csv(const Grid& grid) {
  std::string out;
  for (const auto& row : grid) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string write_markdown(const Grid& grid) {
  std::string out;
  auto line = [&](const std::vector<std::string>& row) {
    out += '|';
    for (const std::string& cell : row) out += ' ' + md_cell(cell) + " |";
    out += '\n';
  };
  line(grid.front());
  out += '|';
  for (std::size_t i = 0; i < grid.front().size(); ++i) out += " --- |";
  out += '\n';
  for (std::size_t r = 1; r < grid.size(); ++r) line(grid[r]);
  return out;
}

std::string write_aligned(const Grid& grid) {
  std::vector<std::size_t> widths;
  for (const auto& row : grid) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::string out;
  for (const auto& row : grid) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      line.append(widths[i] - row[i].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

// --- json ---------------------------------------------------------------

ordered_json causes_json(const CegSpec& spec, const std::vector<TriValue>& values) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < spec.causes.size(); ++i) out[spec.causes[i].id.str()] = to_string(values[i]);
  return out;
}

ordered_json effects_json(const CegSpec& spec, const std::vector<bool>& values) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < spec.effects.size(); ++i) out[spec.effects[i].id.str()] = static_cast<bool>(values[i]);
  return out;
}

ordered_json table_json(const DecisionTable& table) {
  ordered_json doc = ordered_json::object();
  doc["spec_title"] = table.spec().title;
  ordered_json columns = ordered_json::array();
  for (const Column& col : table.columns()) {
    ordered_json c = ordered_json::object();
    c["causes"] = causes_json(table.spec(), col.causes);
    c["effects"] = effects_json(table.spec(), col.effects);
    columns.push_back(std::move(c));
  }
  doc["columns"] = std::move(columns);
  return doc;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

// --- test suites --------------------------------------------------------

Grid suite_grid(const std::vector<std::pair<std::string, std::pair<std::string, std::string>>>& rows) {
  Grid grid{{"Test Case", "Input(causes)", "Expected Output (Effects)"}};
  for (const auto& [id, texts] : rows) grid.push_back({id, texts.first, texts.second});
  return grid;
}

}  // namespace

std::string export_table(const DecisionTable& table, Format format) {
  switch (format) {
    case Format::kCsv: return write_csv(table_grid(table));
    case Format::kMarkdown: return write_markdown(table_grid(table));
    case Format::kText: return write_aligned(table_grid(table));
    case Format::kJson: return dump(table_json(table));
    case Format::kDot: break;
  }
  unsupported(format, "decision tables");
}

std::string export_tests(const DecisionTable& table, const std::vector<TestCase>& tests, Format format) {
  const CegSpec& spec = table.spec();
  switch (format) {
    case Format::kJson: {
      ordered_json doc = table_json(table);
      doc["grouped"] = false;
      ordered_json list = ordered_json::array();
      for (const TestCase& t : tests) {
        ordered_json j = ordered_json::object();
        j["id"] = t.id;
        j["inputs"] = causes_json(spec, t.inputs);
        j["input_description"] = t.input_description;
        j["expected_effects"] = effects_json(spec, t.expected_effects);
        j["expected_description"] = t.expected_description;
        list.push_back(std::move(j));
      }
      doc["tests"] = std::move(list);
      return dump(doc);
    }
    case Format::kCsv:
    case Format::kMarkdown: {
      std::vector<std::pair<std::string, std::pair<std::string, std::string>>> rows;
      for (const TestCase& t : tests)
        rows.push_back({std::to_string(t.id), {t.input_description, t.expected_description}});
      const Grid grid = suite_grid(rows);
      return format == Format::kCsv ? write_csv(grid) : write_markdown(grid);
    }
    case Format::kText: {
      std::ostringstream out;
      for (const TestCase& t : tests) {
        out << "Test " << t.id << '\n'
            << "  input:    " << t.input_description << '\n'
            << "  expected: " << t.expected_description << '\n';
      }
      return out.str();
    }
    case Format::kDot: break;
  }
  unsupported(format, "test suites");
}

std::string export_grouped_tests(const DecisionTable& table, const std::vector<GroupedTest>& rows,
                                 Format format) {
  const CegSpec& spec = table.spec();
  switch (format) {
    case Format::kJson: {
      ordered_json doc = table_json(table);
      doc["grouped"] = true;
      ordered_json list = ordered_json::array();
      for (const GroupedTest& g : rows) {
        ordered_json j = ordered_json::object();
        j["id"] = g.id;
        j["provenance"] = g.provenance;
        ordered_json alternatives = ordered_json::array();
        for (const auto& inputs : g.alternatives) alternatives.push_back(causes_json(spec, inputs));
        j["inputs"] = std::move(alternatives);
        j["input_description"] = g.input_description;
        j["expected_effects"] = effects_json(spec, g.expected_effects);
        j["expected_description"] = g.expected_description;
        list.push_back(std::move(j));
      }
      doc["tests"] = std::move(list);
      return dump(doc);
    }
    case Format::kCsv:
    case Format::kMarkdown: {
      std::vector<std::pair<std::string, std::pair<std::string, std::string>>> out;
      for (const GroupedTest& g : rows)
        out.push_back({std::to_string(g.id), {g.input_description, g.expected_description}});
      const Grid grid = suite_grid(out);
      return format == Format::kCsv ? write_csv(grid) : write_markdown(grid);
    }
    case Format::kText: {
      std::ostringstream out;
      for (const GroupedTest& g : rows) {
        out << "Test " << g.id << " (columns";
        for (int id : g.provenance) out << ' ' << id;
        out << ")\n"
            << "  input:    " << g.input_description << '\n'
            << "  expected: " << g.expected_description << '\n';
      }
      return out.str();
    }
    case Format::kDot: break;
  }
  unsupported(format, "test suites");
}

std::string export_coverage(const DecisionTable& table, const CoverageReport& report, Format format) {
  if (format == Format::kJson) {
    ordered_json doc = ordered_json::object();
    doc["spec_title"] = table.spec().title;
    doc["satisfied"] = report.satisfied;
    doc["columns"] = table.size();
    doc["effect_yes_count"] = report.effect_yes_count;
    ordered_json causes = ordered_json::object();
    for (const CauseCoverage& c : report.causes) causes[c.id.str()] = {{"yes", c.yes}, {"no", c.no}};
    doc["causes"] = std::move(causes);
    ordered_json effects = ordered_json::object();
    for (const EffectCoverage& e : report.effects) effects[e.id.str()] = {{"true", e.is_true}, {"false", e.is_false}};
    doc["effects"] = std::move(effects);
    return dump(doc);
  }
  if (format != Format::kText) unsupported(format, "coverage reports");

  std::ostringstream out;
  out << "satisfied: " << (report.satisfied ? "yes" : "no") << '\n'
      << "columns: " << table.size() << '\n'
      << "effects true somewhere: " << report.effect_yes_count << '/' << report.effects.size() << '\n';
  for (const CauseCoverage& c : report.causes)
    out << "cause " << c.id.str() << ": " << (c.yes ? "YES" : "-") << ' ' << (c.no ? "NO" : "-") << '\n';
  for (const EffectCoverage& e : report.effects)
    out << "effect " << e.id.str() << ": " << (e.is_true ? "YES" : "-") << ' ' << (e.is_false ? "NO" : "-") << '\n';
  return out.str();
}

std::string export_graph(const CegSpec& spec, Format format) {
  switch (format) {
    case Format::kDot: return to_dot(spec);
    case Format::kText: return render(spec);
    case Format::kJson: {
      ordered_json doc = ordered_json::object();
      doc["spec_title"] = spec.title;
      ordered_json causes = ordered_json::array();
      for (const Cause& c : spec.causes) causes.push_back({{"id", c.id.str()}, {"description", c.description}});
      doc["causes"] = std::move(causes);
      ordered_json nodes = ordered_json::array();
      for (const IntermediateNode& n : spec.intermediates)
        nodes.push_back({{"id", n.id.str()}, {"expr", render_expr(n.expr)}});
      doc["intermediates"] = std::move(nodes);
      ordered_json effects = ordered_json::array();
      for (const Effect& e : spec.effects)
        effects.push_back({{"id", e.id.str()}, {"description", e.description}, {"expr", render_expr(e.expr)}});
      doc["effects"] = std::move(effects);
      ordered_json constraints = ordered_json::array();
      auto ids = [](const std::vector<NodeId>& v) {
        ordered_json a = ordered_json::array();
        for (const NodeId& id : v) a.push_back(id.str());
        return a;
      };
      for (const Constraint& c : spec.constraints) {
        ordered_json j = ordered_json::object();
        if (const auto* x = std::get_if<Exclusive>(&c)) {
          j["kind"] = "excl";
          j["members"] = ids(x->members);
        } else if (const auto* x = std::get_if<Inclusive>(&c)) {
          j["kind"] = "incl";
          j["members"] = ids(x->members);
        } else if (const auto* x = std::get_if<OneAndOnlyOne>(&c)) {
          j["kind"] = "one";
          j["members"] = ids(x->members);
        } else if (const auto* x = std::get_if<Requires>(&c)) {
          j["kind"] = "requires";
          j["antecedent"] = x->antecedent.str();
          j["consequents"] = ids(x->consequents);
        } else {
          const auto& m = std::get<Mask>(c);
          j["kind"] = "mask";
          j["masker"] = m.masker.str();
          j["masked"] = m.masked.str();
        }
        constraints.push_back(std::move(j));
      }
      doc["constraints"] = std::move(constraints);
      return dump(doc);
    }
    case Format::kCsv:
    case Format::kMarkdown: break;
  }
  unsupported(format, "graphs");
}

}  // namespace cegen
