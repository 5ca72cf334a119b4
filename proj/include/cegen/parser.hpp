#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cegen/model.hpp"

namespace cegen {

/// 1-based position of a diagnostic in the source text.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class ParseErrorKind { kLex, kSyntax, kReference, kDuplicate, kCycle };

/// "lex", "syntax", "reference", "duplicate" or "cycle".
const char* to_string(ParseErrorKind kind) noexcept;

struct ParseError {
  SourceSpan span;
  std::string message;
  ParseErrorKind kind;
};

/// Either a valid spec or every error found, ordered by position.
class ParseResult {
 public:
  explicit ParseResult(CegSpec spec) : value_(std::move(spec)) {}
  explicit ParseResult(std::vector<ParseError> errors) : value_(std::move(errors)) {}

  bool ok() const noexcept { return value_.index() == 0; }
  explicit operator bool() const noexcept { return ok(); }

  const CegSpec& spec() const& { return std::get<CegSpec>(value_); }
  CegSpec&& spec() && { return std::get<CegSpec>(std::move(value_)); }
  const std::vector<ParseError>& errors() const& { return std::get<std::vector<ParseError>>(value_); }

 private:
  std::variant<CegSpec, std::vector<ParseError>> value_;
};

/// Parses .ceg source. Recovery is per line, so one call reports every bad
/// statement. A successful result always passes validate_spec.
ParseResult parse(std::string_view source);

/// Canonical .ceg text; parse(render(spec)) == spec for every valid spec.
std::string render(const CegSpec& spec);

/// Canonical text of one expression, with the minimum parentheses needed
/// to reproduce the same tree.
std::string render_expr(const BoolExpr& expr);

}  // namespace cegen
