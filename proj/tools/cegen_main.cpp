// cegen: compile a .ceg cause-effect graph into decision tables and tests.
//
// Exit codes: 0 success, 1 invalid spec or unsatisfied coverage, 2 I/O or
// usage error, 3 enumeration limit exceeded.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "cegen/cegen.h"

namespace {

enum Exit { kOk = 0, kDomain = 1, kIo = 2, kCapacity = 3 };

struct SpecDeleter {
  void operator()(cegen_spec* s) const { cegen_spec_free(s); }
};
struct TableDeleter {
  void operator()(cegen_table* t) const { cegen_table_free(t); }
};
struct StringDeleter {
  void operator()(char* s) const { cegen_string_free(s); }
};
using SpecPtr = std::unique_ptr<cegen_spec, SpecDeleter>;
using TablePtr = std::unique_ptr<cegen_table, TableDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Options {
  std::string command;
  std::string path;
  std::optional<std::string> format;
  bool grouped = false;
  bool verbose_inputs = false;
  std::optional<std::size_t> max_causes;
};

int usage_error(const std::string& message) {
  std::cerr << "cegen: " << message << '\n';
  return kIo;
}

int status_exit(cegen_status status) {
  switch (status) {
    case CEGEN_OK: return kOk;
    case CEGEN_E_SPEC: return kDomain;
    case CEGEN_E_CAPACITY: return kCapacity;
    default: return kIo;
  }
}

int report_failure(cegen_status status) {
  std::cerr << "cegen: " << cegen_last_error() << '\n';
  return status_exit(status);
}

// Loads and validates the input file, printing diagnostics as file:line:column.
int load(const Options& opts, SpecPtr& out) {
  cegen_spec* raw = nullptr;
  const cegen_status status = cegen_spec_load(opts.path.c_str(), &raw);
  out.reset(raw);
  if (status == CEGEN_E_IO || out == nullptr) return report_failure(status);
  if (status == CEGEN_OK) return kOk;
  for (std::size_t i = 0; i < cegen_spec_diagnostic_count(out.get()); ++i) {
    cegen_diagnostic d{};
    cegen_spec_diagnostic(out.get(), i, &d);
    std::cerr << opts.path << ':' << d.line << ':' << d.column << ": " << d.kind_name << ": " << d.message
              << '\n';
  }
  return kDomain;
}

std::size_t resolve_max_causes(const Options& opts, bool& ok) {
  ok = true;
  if (opts.max_causes) return *opts.max_causes;
  if (const char* env = std::getenv("CEGEN_MAX_CAUSES"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    ok = false;
  }
  return cegen_default_max_causes();
}

int derive(const Options& opts, const SpecPtr& spec, TablePtr& out) {
  bool ok = true;
  const std::size_t limit = resolve_max_causes(opts, ok);
  if (!ok) return usage_error("CEGEN_MAX_CAUSES must be a positive integer");
  cegen_table* raw = nullptr;
  const cegen_status status = cegen_table_derive(spec.get(), limit, &raw);
  out.reset(raw);
  return status == CEGEN_OK ? kOk : report_failure(status);
}

// Takes ownership of `text`, which the status-returning call has produced.
int write(cegen_status status, char*& text) {
  StringPtr owned(std::exchange(text, nullptr));
  if (status != CEGEN_OK) return report_failure(status);
  if (owned) std::fputs(owned.get(), stdout);
  std::fflush(stdout);
  return kOk;
}

int pick_format(const Options& opts, cegen_format fallback, cegen_format& out) {
  if (!opts.format) {
    out = fallback;
    return kOk;
  }
  if (cegen_format_from_name(opts.format->c_str(), &out) != 0)
    return usage_error("unknown format '" + *opts.format + "'");
  return kOk;
}

int run(const Options& opts) {
  const bool suite = opts.command == "tests";
  if (!suite && (opts.grouped || opts.verbose_inputs))
    return usage_error("--grouped and --verbose-inputs apply only to 'tests'");
  if (opts.command == "check" && opts.format) return usage_error("'check' does not take --format");

  SpecPtr spec;
  if (int rc = load(opts, spec); rc != kOk) return rc;
  if (opts.command == "check") return kOk;

  cegen_format format{};
  if (opts.command == "graph") {
    if (int rc = pick_format(opts, CEGEN_FORMAT_DOT, format); rc != kOk) return rc;
    char* text = nullptr;
    const cegen_status status = cegen_spec_export(spec.get(), format, &text);
    return write(status, text);
  }

  if (int rc = pick_format(opts, CEGEN_FORMAT_TEXT, format); rc != kOk) return rc;
  TablePtr table;
  if (int rc = derive(opts, spec, table); rc != kOk) return rc;

  char* text = nullptr;
  if (opts.command == "table") {
    const cegen_status status = cegen_table_export(table.get(), format, &text);
    return write(status, text);
  }
  if (suite) {
    const cegen_suite_options suite_opts{opts.grouped ? 1 : 0, opts.verbose_inputs ? 1 : 0};
    const cegen_status status = cegen_tests_export(table.get(), format, &suite_opts, &text);
    return write(status, text);
  }
  int satisfied = 0;
  const cegen_status status = cegen_coverage_export(table.get(), format, &satisfied, &text);
  if (int rc = write(status, text); rc != kOk) return rc;
  return satisfied ? kOk : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
  Options opts;
  CLI::App app{"Cause-effect graph test design compiler"};
  app.set_version_flag("--version", cegen_version_string());
  app.add_option("command", opts.command, "check | table | tests | graph | coverage")
      ->required()
      ->check(CLI::IsMember({"check", "table", "tests", "graph", "coverage"}));
  app.add_option("file", opts.path, ".ceg specification")->required();
  app.add_option("--format", opts.format, "json | csv | markdown | text | dot")
      ->check(CLI::IsMember({"json", "csv", "markdown", "text", "dot"}));
  app.add_flag("--grouped", opts.grouped, "merge tests that expect the same effects");
  app.add_flag("--verbose-inputs", opts.verbose_inputs, "also describe NO and don't-care causes");
  app.add_option("--max-causes", opts.max_causes, "enumeration limit (default 24, env CEGEN_MAX_CAUSES)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kIo;
  }
  return run(opts);
}
