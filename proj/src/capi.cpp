#include "cegen/cegen.h"

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "cegen/error.hpp"
#include "cegen/export.hpp"
#include "cegen/parser.hpp"
#include "cegen/table.hpp"
#include "cegen/testgen.hpp"

struct cegen_spec {
  std::optional<cegen::CegSpec> spec;
  std::vector<cegen::ParseError> errors;
};

struct cegen_table {
  cegen::DecisionTable table;
};

namespace {

thread_local std::string last_error;

cegen_status fail(cegen_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs `fn`, translating library exceptions into status codes.
template <typename Fn>
cegen_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const cegen::CapacityError& e) {
    return fail(CEGEN_E_CAPACITY, e.what());
  } catch (const cegen::FormatError& e) {
    return fail(CEGEN_E_ARGUMENT, e.what());
  } catch (const cegen::ContractError& e) {
    return fail(CEGEN_E_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CEGEN_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CEGEN_E_INTERNAL, e.what());
  }
}

cegen_status emit(const std::string& text, char** out) {
  *out = copy_out(text);
  return *out ? CEGEN_OK : fail(CEGEN_E_INTERNAL, "out of memory");
}

bool known_format(cegen_format f) { return f >= CEGEN_FORMAT_JSON && f <= CEGEN_FORMAT_TEXT; }

cegen::Format to_format(cegen_format f) {
  switch (f) {
    case CEGEN_FORMAT_JSON: return cegen::Format::kJson;
    case CEGEN_FORMAT_CSV: return cegen::Format::kCsv;
    case CEGEN_FORMAT_MARKDOWN: return cegen::Format::kMarkdown;
    case CEGEN_FORMAT_DOT: return cegen::Format::kDot;
    case CEGEN_FORMAT_TEXT: return cegen::Format::kText;
  }
  return cegen::Format::kText;
}

cegen_status parse_into(std::string_view source, cegen_spec** out) {
  auto handle = std::make_unique<cegen_spec>();
  cegen::ParseResult result = cegen::parse(source);
  cegen_status status = CEGEN_OK;
  if (result.ok()) {
    handle->spec = std::move(result).spec();
  } else {
    handle->errors = result.errors();
    status = fail(CEGEN_E_SPEC, std::to_string(handle->errors.size()) + " error(s) in spec");
  }
  *out = handle.release();
  return status;
}

}  // namespace

extern "C" {

uint32_t cegen_api_version(void) { return CEGEN_API_VERSION; }

const char* cegen_version_string(void) { return "cegen 1.0.0"; }

const char* cegen_last_error(void) { return last_error.c_str(); }

void cegen_string_free(char* str) { std::free(str); }

const char* cegen_format_name(cegen_format format) {
  return known_format(format) ? cegen::to_string(to_format(format)) : nullptr;
}

int cegen_format_from_name(const char* name, cegen_format* out) {
  if (name == nullptr || out == nullptr) return -1;
  const auto f = cegen::parse_format(name);
  if (!f) return -1;
  *out = static_cast<cegen_format>(static_cast<int>(*f));
  return 0;
}

cegen_status cegen_spec_parse(const char* source, size_t length, cegen_spec** out) {
  if (out == nullptr || (source == nullptr && length != 0)) return fail(CEGEN_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { return parse_into(std::string_view(source ? source : "", length), out); });
}

cegen_status cegen_spec_load(const char* path, cegen_spec** out) {
  if (path == nullptr || out == nullptr) return fail(CEGEN_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(CEGEN_E_IO, std::string("cannot read '") + path + "': " + std::strerror(errno));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) return fail(CEGEN_E_IO, std::string("cannot read '") + path + "'");
    return parse_into(buffer.str(), out);
  });
}

void cegen_spec_free(cegen_spec* spec) { delete spec; }

int cegen_spec_is_valid(const cegen_spec* spec) { return spec != nullptr && spec->spec.has_value(); }

size_t cegen_spec_diagnostic_count(const cegen_spec* spec) { return spec ? spec->errors.size() : 0; }

cegen_status cegen_spec_diagnostic(const cegen_spec* spec, size_t index, cegen_diagnostic* out) {
  if (spec == nullptr || out == nullptr) return fail(CEGEN_E_ARGUMENT, "null argument");
  if (index >= spec->errors.size()) return fail(CEGEN_E_ARGUMENT, "diagnostic index out of range");
  const cegen::ParseError& e = spec->errors[index];
  out->line = e.span.line;
  out->column = e.span.column;
  out->length = e.span.length;
  out->kind = static_cast<cegen_diagnostic_kind>(static_cast<int>(e.kind));
  out->kind_name = cegen::to_string(e.kind);
  out->message = e.message.c_str();
  return CEGEN_OK;
}

size_t cegen_spec_cause_count(const cegen_spec* spec) {
  return cegen_spec_is_valid(spec) ? spec->spec->causes.size() : 0;
}

size_t cegen_spec_effect_count(const cegen_spec* spec) {
  return cegen_spec_is_valid(spec) ? spec->spec->effects.size() : 0;
}

cegen_status cegen_spec_export(const cegen_spec* spec, cegen_format format, char** out) {
  if (out == nullptr) return fail(CEGEN_E_ARGUMENT, "null argument");
  *out = nullptr;
  if (!cegen_spec_is_valid(spec)) return fail(CEGEN_E_ARGUMENT, "spec handle is null or invalid");
  if (!known_format(format)) return fail(CEGEN_E_ARGUMENT, "unknown format");
  return guarded([&] { return emit(cegen::export_graph(*spec->spec, to_format(format)), out); });
}

size_t cegen_default_max_causes(void) { return cegen::kDefaultCauseLimit; }

cegen_status cegen_table_derive(const cegen_spec* spec, size_t max_causes, cegen_table** out) {
  if (out == nullptr) return fail(CEGEN_E_ARGUMENT, "null argument");
  *out = nullptr;
  if (!cegen_spec_is_valid(spec)) return fail(CEGEN_E_ARGUMENT, "spec handle is null or invalid");
  return guarded([&] {
    cegen::TableOptions options;
    if (max_causes != 0) options.max_causes = max_causes;
    *out = new cegen_table{cegen::derive_table(*spec->spec, options)};
    return CEGEN_OK;
  });
}

void cegen_table_free(cegen_table* table) { delete table; }

size_t cegen_table_column_count(const cegen_table* table) { return table ? table->table.size() : 0; }

cegen_status cegen_table_export(const cegen_table* table, cegen_format format, char** out) {
  if (table == nullptr || out == nullptr) return fail(CEGEN_E_ARGUMENT, "null argument");
  *out = nullptr;
  if (!known_format(format)) return fail(CEGEN_E_ARGUMENT, "unknown format");
  return guarded([&] { return emit(cegen::export_table(table->table, to_format(format)), out); });
}

size_t cegen_tests_count(const cegen_table* table, const cegen_suite_options* options) {
  if (table == nullptr) return 0;
  try {
    const auto tests = cegen::generate_tests(table->table);
    if (options != nullptr && options->grouped) return cegen::group_by_effects(tests).size();
    return tests.size();
  } catch (const std::exception& e) {
    last_error = e.what();
    return 0;
  }
}

cegen_status cegen_tests_export(const cegen_table* table, cegen_format format, const cegen_suite_options* options,
                                char** out) {
  if (table == nullptr || out == nullptr) return fail(CEGEN_E_ARGUMENT, "null argument");
  *out = nullptr;
  if (!known_format(format)) return fail(CEGEN_E_ARGUMENT, "unknown format");
  const cegen_suite_options opts = options ? *options : cegen_suite_options{0, 0};
  return guarded([&] {
    cegen::DescribeOptions describe;
    describe.verbose_inputs = opts.verbose_inputs != 0;
    const auto tests = cegen::generate_tests(table->table, describe);
    if (opts.grouped)
      return emit(cegen::export_grouped_tests(table->table, cegen::group_by_effects(tests), to_format(format)), out);
    return emit(cegen::export_tests(table->table, tests, to_format(format)), out);
  });
}

cegen_status cegen_coverage_export(const cegen_table* table, cegen_format format, int* satisfied, char** out) {
  if (table == nullptr || out == nullptr) return fail(CEGEN_E_ARGUMENT, "null argument");
  *out = nullptr;
  if (!known_format(format)) return fail(CEGEN_E_ARGUMENT, "unknown format");
  return guarded([&] {
    const cegen::CoverageReport report = cegen::coverage(table->table);
    if (satisfied != nullptr) *satisfied = report.satisfied ? 1 : 0;
    return emit(cegen::export_coverage(table->table, report, to_format(format)), out);
  });
}

}  // extern "C"
