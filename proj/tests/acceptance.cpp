// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fail.
// `acceptance N` runs criterion N alone.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cegen/parser.hpp"
#include "cegen/table.hpp"
#include "support/corpus.hpp"
#include "support/process.hpp"
#include "support/random_spec.hpp"
#include "support/reference.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kGroupedSuiteSeconds = 1.0;
constexpr double kOracleSuiteSeconds = 60.0;
constexpr int kOracleSpecs = 500;
constexpr int kRoundTripSpecs = 1000;
constexpr int kMutationsPerEntry = 200;

std::string placement_path() { return (ceg_test::corpus_dir() / "placement.ceg").string(); }

ceg_test::RunResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), CEGEN_CLI_PATH);
  return ceg_test::run_process(args);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

std::vector<std::string> true_effects(const json& effects) {
  std::vector<std::string> out;
  for (const auto& [id, v] : effects.items())
    if (v.get<bool>()) out.push_back(id);
  return out;
}

// Alternatives as "YES causes" sets, e.g. {{"C3"}, {"C5"}}.
std::set<std::set<std::string>> yes_groups(const json& row) {
  std::set<std::set<std::string>> out;
  for (const json& alt : row["inputs"]) {
    std::set<std::string> yes;
    for (const auto& [id, v] : alt.items())
      if (v == "YES") yes.insert(id);
    out.insert(yes);
  }
  return out;
}

Outcome grouped_suite() {
  Outcome o;
  const auto start = Clock::now();
  const ceg_test::RunResult text = cli({"tests", placement_path(), "--grouped"});
  const ceg_test::RunResult r = cli({"tests", placement_path(), "--grouped", "--format", "json"});
  const double elapsed = seconds_since(start);
  o.require(text.exit_code == 0 && r.exit_code == 0, "cegen tests --grouped failed");
  if (r.exit_code != 0) return o;
  const json suite = json::parse(r.out);
  const json& rows = suite["tests"];

  o.require(rows.size() == 5, "expected exactly 5 grouped rows, got " + std::to_string(rows.size()));

  std::set<std::vector<std::string>> classes;
  for (const json& row : rows) classes.insert(true_effects(row["expected_effects"]));
  o.require(classes.size() == rows.size(), "grouped rows do not map one-to-one onto effect-vector classes");
  for (const char* e : {"E1", "E2", "E3", "E4", "E5"}) {
    bool seen = false;
    for (const auto& c : classes) seen = seen || std::find(c.begin(), c.end(), e) != c.end();
    o.require(seen, std::string(e) + " is never expected true");
  }

  auto find_row = [&](const std::vector<std::string>& effects) -> const json* {
    for (const json& row : rows)
      if (true_effects(row["expected_effects"]) == effects) return &row;
    return nullptr;
  };
  const std::vector<std::pair<std::vector<std::string>, std::set<std::set<std::string>>>> expected{
      {{"E3"}, {{"C2"}}},
      {{"E4"}, {{"C3"}, {"C5"}}},
      {{"E5"}, {{"C4"}}},
      {{"E1"}, {{"C1"}}},
      {{"E1", "E2"}, {{"C6"}}},
  };
  for (const auto& [effects, groups] : expected) {
    const json* row = find_row(effects);
    std::string name;
    for (const auto& e : effects) name += (name.empty() ? "" : "+") + e;
    o.require(row != nullptr && yes_groups(*row) == groups, "input grouping for " + name + " differs");
  }
  std::ostringstream t;
  t << "runtime " << elapsed << " s (limit " << kGroupedSuiteSeconds << " s)";
  o.require(elapsed < kGroupedSuiteSeconds, "too slow");
  o.notes.push_back(t.str());
  return o;
}

std::vector<std::vector<std::string>> split_csv(const std::string& s) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

Outcome table_shape() {
  Outcome o;
  const cegen::CegSpec spec = ceg_test::corpus_spec("placement");
  const ceg_test::RunResult r = cli({"table", placement_path(), "--format", "csv"});
  o.require(r.exit_code == 0, "cegen table --format csv failed");
  if (r.exit_code != 0) return o;
  const auto rows = split_csv(r.out);
  const std::size_t nc = spec.causes.size();
  const std::size_t ne = spec.effects.size();
  o.require(rows.size() == 2 + nc + ne, "unexpected row count");
  if (rows.size() != 2 + nc + ne) return o;
  o.require(rows[0][0] == "CONDITION/CAUSE", "missing CONDITION/CAUSE header");
  o.require(rows[1 + nc][0] == "EFFECT/ACTION", "missing EFFECT/ACTION separator");
  const std::size_t width = rows[0].size();
  for (std::size_t i = 0; i < nc; ++i) {
    o.require(rows[1 + i][0] == spec.causes[i].id.str(), "cause rows out of declaration order");
    for (std::size_t c = 1; c < rows[1 + i].size(); ++c) {
      const std::string& v = rows[1 + i][c];
      o.require(v == "YES" || v == "NO" || v == "-", "bad cause cell '" + v + "'");
    }
  }
  for (std::size_t i = 0; i < ne; ++i) {
    o.require(rows[2 + nc + i][0] == spec.effects[i].id.str(), "effect rows out of declaration order");
    for (std::size_t c = 1; c < rows[2 + nc + i].size(); ++c) {
      const std::string& v = rows[2 + nc + i][c];
      o.require(v == "YES" || v == "NO", "bad effect cell '" + v + "'");
    }
  }
  bool forced = false;
  for (std::size_t c = 1; c < width; ++c) {
    bool ok = rows[1][c] == "YES";
    for (std::size_t i = 2; i <= 5; ++i) ok = ok && rows[i][c] == "-";
    forced = forced || ok;
  }
  o.require(forced, "no column with C1=YES and C2..C5 '-'");

  const ceg_test::RunResult j = cli({"table", placement_path(), "--format", "json"});
  const json table = json::parse(j.out);
  std::vector<cegen::Column> columns;
  for (const json& col : table["columns"]) {
    cegen::Column c;
    for (const auto& cause : spec.causes) {
      const std::string v = col["causes"][cause.id.str()];
      c.causes.push_back(v == "YES" ? cegen::TriValue::kYes : v == "NO" ? cegen::TriValue::kNo : cegen::TriValue::kDontCare);
    }
    for (const auto& effect : spec.effects) c.effects.push_back(col["effects"][effect.id.str()].get<bool>());
    columns.push_back(c);
  }
  if (const auto problem = ceg_test::oracle_mismatch(spec, columns)) o.require(false, "oracle: " + *problem);
  o.notes.push_back(std::to_string(width - 1) + " columns");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20261014);
  ceg_test::RandomSpecOptions options;
  options.max_causes = 10;
  options.max_effects = 6;
  options.max_constraints = 4;
  const auto start = Clock::now();
  int mismatches = 0;
  for (int i = 0; i < kOracleSpecs; ++i) {
    const cegen::CegSpec spec = ceg_test::random_spec(rng, options);
    if (ceg_test::oracle_mismatch(spec, cegen::derive_table(spec).columns())) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatching specs");
  std::ostringstream t;
  t << kOracleSpecs << " specs, " << mismatches << " mismatches, " << elapsed << " s (limit " << kOracleSuiteSeconds
    << " s)";
  o.require(elapsed < kOracleSuiteSeconds, "too slow");
  o.notes.push_back(t.str());
  return o;
}

Outcome feasible_count() {
  Outcome o;
  const cegen::CegSpec spec = ceg_test::corpus_spec("placement");
  const auto rows = cegen::enumerate_feasible(spec);
  std::size_t independent = 0;
  for (std::uint64_t code = 0; code < 64; ++code)
    if (ceg_test::ref_feasible(spec, ceg_test::bits_of(code, 6))) ++independent;
  o.require(rows.size() == 11, "enumerate_feasible returned " + std::to_string(rows.size()));
  o.require(independent == 11, "brute force found " + std::to_string(independent));
  const auto oracle = ceg_test::brute_force(spec);
  bool same = rows.size() == oracle.size();
  for (std::size_t i = 0; same && i < rows.size(); ++i)
    same = ceg_test::to_bits(spec, rows[i].causes) == oracle[i].causes &&
           ceg_test::to_bits(spec, rows[i].effects) == oracle[i].effects;
  o.require(same, "rows differ from the brute force");
  return o;
}

bool span_inside(const std::string& src, const cegen::SourceSpan& span) {
  std::vector<int> widths;
  std::istringstream in(src);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    widths.push_back(static_cast<int>(line.size()));
  }
  if (src.empty() || src.back() == '\n') widths.push_back(0);
  if (span.line < 1 || span.line > static_cast<int>(widths.size())) return false;
  return span.column >= 1 && span.length >= 1 && span.column + span.length - 1 <= widths[span.line - 1] + 1;
}

Outcome round_trip() {
  Outcome o;
  for (const auto& name : ceg_test::corpus_names()) {
    const cegen::CegSpec first = ceg_test::corpus_spec(name);
    const cegen::ParseResult again = cegen::parse(cegen::render(first));
    o.require(again.ok() && again.spec() == first, "corpus entry " + name + " does not round-trip");
  }
  std::mt19937_64 rng(31);
  ceg_test::RandomSpecOptions options;
  options.min_causes = 0;
  int random_failures = 0;
  for (int i = 0; i < kRoundTripSpecs; ++i) {
    const cegen::CegSpec spec = ceg_test::random_spec(rng, options);
    const cegen::ParseResult r = cegen::parse(cegen::render(spec));
    if (!r.ok() || !(r.spec() == spec)) ++random_failures;
  }
  o.require(random_failures == 0, std::to_string(random_failures) + " random specs fail to round-trip");

  const std::string alphabet = "()=,->\"#\\ xC1E_\n$not or and";
  int failed_parses = 0;
  int bad_spans = 0;
  for (const auto& name : ceg_test::corpus_names()) {
    const std::string original = ceg_test::corpus_source(name);
    for (int k = 0; k < kMutationsPerEntry; ++k) {
      std::string src = original;
      const std::size_t pos = src.empty() ? 0 : rng() % (src.size() + 1);
      switch (rng() % 3) {
        case 0:
          if (pos < src.size()) src.erase(pos, 1);
          break;
        case 1: src.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
        default:
          if (pos < src.size()) src[pos] = alphabet[rng() % alphabet.size()];
      }
      const cegen::ParseResult r = cegen::parse(src);
      if (r.ok()) continue;
      ++failed_parses;
      for (const auto& e : r.errors())
        if (!span_inside(src, e.span)) ++bad_spans;
    }
  }
  o.require(bad_spans == 0, std::to_string(bad_spans) + " error spans fall outside the source");
  o.notes.push_back(std::to_string(failed_parses) + " mutated sources rejected");
  return o;
}

Outcome determinism() {
  Outcome o;
  int runs = 0;
  for (const auto& name : ceg_test::corpus_names()) {
    const std::string path = (ceg_test::corpus_dir() / (name + ".ceg")).string();
    const std::vector<std::vector<std::string>> invocations{
        {"check", path},
        {"table", path, "--format", "json"},
        {"table", path, "--format", "csv"},
        {"table", path, "--format", "markdown"},
        {"table", path, "--format", "text"},
        {"tests", path, "--format", "json"},
        {"tests", path, "--grouped", "--format", "markdown"},
        {"tests", path, "--verbose-inputs", "--format", "csv"},
        {"graph", path},
        {"graph", path, "--format", "json"},
        {"coverage", path, "--format", "json"},
        {"coverage", path},
    };
    for (const auto& args : invocations) {
      const auto a = cli(args);
      const auto b = cli(args);
      const std::hash<std::string> h;
      o.require(h(a.out) == h(b.out) && a.out == b.out && a.exit_code == b.exit_code,
                "nondeterministic: " + args[0] + " " + name);
      ++runs;
    }
  }
  o.notes.push_back(std::to_string(runs) + " invocations compared");
  return o;
}

Outcome coverage_gate() {
  Outcome o;
  const int placement = cli({"coverage", placement_path()}).exit_code;
  const int contradiction = cli({"coverage", (ceg_test::corpus_dir() / "contradiction.ceg").string()}).exit_code;
  o.require(placement == 0, "placement coverage exited " + std::to_string(placement));
  o.require(contradiction == 1, "contradiction coverage exited " + std::to_string(contradiction));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"placement grouped suite: 5 rows covering E1..E5 with the expected input groupings", grouped_suite},
      {"placement table CSV shape with exclusivity-forced don't-cares", table_shape},
      {"oracle equivalence on random specs", oracle_equivalence},
      {"placement spec has 11 feasible assignments", feasible_count},
      {"parser round-trip and in-file error spans", round_trip},
      {"byte-identical output across repeated CLI runs", determinism},
      {"coverage exit codes for placement and contradiction", coverage_gate},
  };
  std::size_t first = 0;
  std::size_t last = criteria.size();
  if (argc > 1) {
    const std::size_t only = std::strtoul(argv[1], nullptr, 10);
    if (only < 1 || only > criteria.size()) {
      std::fprintf(stderr, "usage: acceptance [1-%zu]\n", criteria.size());
      return 2;
    }
    first = only - 1;
    last = only;
  }
  int failed = 0;
  for (std::size_t i = first; i < last; ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("%s criterion %zu: %s%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!o.pass) ++failed;
  }
  if (last - first > 1)
    std::printf("%d of %zu criteria passed\n", static_cast<int>(last - first) - failed, last - first);
  return failed == 0 ? 0 : 1;
}
