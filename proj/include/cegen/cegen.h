/*
 * C interface to the cegen cause-effect-graph compiler.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Every function returning cegen_status leaves a message for
 * failures in cegen_last_error() (per thread). Strings returned through
 * `char** out` are NUL-terminated UTF-8 and must be released with
 * cegen_string_free().
 */
#ifndef CEGEN_CEGEN_H_
#define CEGEN_CEGEN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CEGEN_BUILDING_LIBRARY)
#define CEGEN_API __declspec(dllexport)
#else
#define CEGEN_API __declspec(dllimport)
#endif
#else
#define CEGEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define CEGEN_API_VERSION 1u

/* Values match the CLI exit-code contract where one applies. */
typedef enum cegen_status {
  CEGEN_OK = 0,
  CEGEN_E_SPEC = 1,     /* parse errors or validation findings */
  CEGEN_E_IO = 2,       /* file could not be read */
  CEGEN_E_CAPACITY = 3, /* more causes than the enumeration limit */
  CEGEN_E_ARGUMENT = 4, /* null pointer, invalid handle state or format */
  CEGEN_E_INTERNAL = 5
} cegen_status;

typedef enum cegen_format {
  CEGEN_FORMAT_JSON = 0,
  CEGEN_FORMAT_CSV = 1,
  CEGEN_FORMAT_MARKDOWN = 2,
  CEGEN_FORMAT_DOT = 3,
  CEGEN_FORMAT_TEXT = 4
} cegen_format;

typedef enum cegen_diagnostic_kind {
  CEGEN_DIAG_LEX = 0,
  CEGEN_DIAG_SYNTAX = 1,
  CEGEN_DIAG_REFERENCE = 2,
  CEGEN_DIAG_DUPLICATE = 3,
  CEGEN_DIAG_CYCLE = 4
} cegen_diagnostic_kind;

typedef struct cegen_diagnostic {
  int line; /* 1-based */
  int column; /* 1-based, in bytes */
  int length;
  cegen_diagnostic_kind kind;
  const char* kind_name; /* "lex", "syntax", ... */
  const char* message; /* owned by the cegen_spec handle */
} cegen_diagnostic;

typedef struct cegen_suite_options {
  int grouped;        /* merge tests expecting the same effects */
  int verbose_inputs; /* also describe NO and don't-care causes */
} cegen_suite_options;

typedef struct cegen_spec cegen_spec;
typedef struct cegen_table cegen_table;

CEGEN_API uint32_t cegen_api_version(void);
CEGEN_API const char* cegen_version_string(void);
CEGEN_API const char* cegen_last_error(void);
CEGEN_API void cegen_string_free(char* str);

/* Returns "json", "csv", ... Unknown values return NULL. */
CEGEN_API const char* cegen_format_name(cegen_format format);
/* Returns 0 and sets *out when `name` is a known format, -1 otherwise. */
CEGEN_API int cegen_format_from_name(const char* name, cegen_format* out);

/*
 * Parses .ceg source. On CEGEN_OK or CEGEN_E_SPEC a handle is stored in *out;
 * with CEGEN_E_SPEC it carries diagnostics only.
 */
CEGEN_API cegen_status cegen_spec_parse(const char* source, size_t length, cegen_spec** out);
/* As cegen_spec_parse; CEGEN_E_IO (and *out == NULL) if `path` is unreadable. */
CEGEN_API cegen_status cegen_spec_load(const char* path, cegen_spec** out);
CEGEN_API void cegen_spec_free(cegen_spec* spec);

CEGEN_API int cegen_spec_is_valid(const cegen_spec* spec);
CEGEN_API size_t cegen_spec_diagnostic_count(const cegen_spec* spec);
CEGEN_API cegen_status cegen_spec_diagnostic(const cegen_spec* spec, size_t index, cegen_diagnostic* out);
CEGEN_API size_t cegen_spec_cause_count(const cegen_spec* spec);
CEGEN_API size_t cegen_spec_effect_count(const cegen_spec* spec);
/* Graph view: dot, json, or text (canonical source). */
CEGEN_API cegen_status cegen_spec_export(const cegen_spec* spec, cegen_format format, char** out);

/* Default enumeration limit; passing 0 as max_causes selects it. */
CEGEN_API size_t cegen_default_max_causes(void);
CEGEN_API cegen_status cegen_table_derive(const cegen_spec* spec, size_t max_causes, cegen_table** out);
CEGEN_API void cegen_table_free(cegen_table* table);
CEGEN_API size_t cegen_table_column_count(const cegen_table* table);
/* json, csv, markdown or text. */
CEGEN_API cegen_status cegen_table_export(const cegen_table* table, cegen_format format, char** out);

/* Number of tests (or grouped rows) the suite would contain. */
CEGEN_API size_t cegen_tests_count(const cegen_table* table, const cegen_suite_options* options);
/* json, csv, markdown or text. `options` may be NULL. */
CEGEN_API cegen_status cegen_tests_export(const cegen_table* table, cegen_format format,
                                          const cegen_suite_options* options, char** out);

/* json or text. `satisfied` may be NULL. */
CEGEN_API cegen_status cegen_coverage_export(const cegen_table* table, cegen_format format, int* satisfied,
                                             char** out);

#ifdef __cplusplus
}
#endif

#endif /* CEGEN_CEGEN_H_ */
