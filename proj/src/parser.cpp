#include "cegen/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "cegen/error.hpp"

namespace cegen {

const char* to_string(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::kLex: return "lex";
    case ParseErrorKind::kSyntax: return "syntax";
    case ParseErrorKind::kReference: return "reference";
    case ParseErrorKind::kDuplicate: return "duplicate";
    case ParseErrorKind::kCycle: return "cycle";
  }
  return "unknown";
}

namespace {

constexpr int kMaxNesting = 200;

struct Token {
  enum class Type { kIdent, kKeyword, kString, kLParen, kRParen, kComma, kArrow, kEquals };
  Type type;
  std::string text;  // identifier as written, keyword lowercased, string decoded
  int column;
  int length;
};

std::string describe(const Token& t) {
  switch (t.type) {
    case Token::Type::kString: return "string";
    default: return "'" + t.text + "'";
  }
}

struct Failure {
  ParseError error;
};

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Splits one line into tokens. Throws Failure on the first lexical error.
std::vector<Token> lex_line(std::string_view line, int line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto fail = [&](std::size_t at, std::size_t len, std::string message) {
    throw Failure{ParseError{SourceSpan{line_no, static_cast<int>(at) + 1, static_cast<int>(len)},
                             std::move(message), ParseErrorKind::kLex}};
  };
  auto push = [&](Token::Type type, std::string text, std::size_t at, std::size_t len) {
    tokens.push_back(Token{type, std::move(text), static_cast<int>(at) + 1, static_cast<int>(len)});
  };
  while (i < line.size()) {
    const char c = line[i];
    const auto u = static_cast<unsigned char>(c);
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (std::isalpha(u) && u < 0x80) {
      std::size_t j = i + 1;
      while (j < line.size()) {
        const auto v = static_cast<unsigned char>(line[j]);
        if (v >= 0x80 || !(std::isalnum(v) || v == '_')) break;
        ++j;
      }
      const std::string_view word = line.substr(i, j - i);
      if (is_reserved_word(word)) {
        push(Token::Type::kKeyword, lowercase(word), i, j - i);
      } else {
        push(Token::Type::kIdent, std::string(word), i, j - i);
      }
      i = j;
    } else if (c == '"') {
      std::string text;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < line.size()) {
        if (line[j] == '"') {
          closed = true;
          break;
        }
        if (line[j] == '\\') {
          if (j + 1 >= line.size()) break;
          const char e = line[j + 1];
          if (e != '"' && e != '\\') fail(j, 2, std::string("unknown escape '\\") + e + "' in string");
          text += e;
          j += 2;
          continue;
        }
        text += line[j];
        ++j;
      }
      if (!closed) fail(i, line.size() - i, "unterminated string");
      push(Token::Type::kString, std::move(text), i, j + 1 - i);
      i = j + 1;
    } else if (c == '(') {
      push(Token::Type::kLParen, "(", i++, 1);
    } else if (c == ')') {
      push(Token::Type::kRParen, ")", i++, 1);
    } else if (c == ',') {
      push(Token::Type::kComma, ",", i++, 1);
    } else if (c == '=') {
      push(Token::Type::kEquals, "=", i++, 1);
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      push(Token::Type::kArrow, "->", i, 2);
      i += 2;
    } else {
      std::size_t len = 1;
      if (u >= 0x80) {  // keep a whole UTF-8 sequence in the span
        while (i + len < line.size() && (static_cast<unsigned char>(line[i + len]) & 0xC0) == 0x80) ++len;
      }
      fail(i, len, "unexpected character '" + std::string(line.substr(i, len)) + "'");
    }
  }
  return tokens;
}

struct NameRef {
  std::string name;
  SourceSpan span;
};

enum class DeclKind { kCause, kNode, kEffect };

struct Declaration {
  DeclKind kind;
  NameRef name;
  std::string description;
  std::optional<BoolExpr> expr;
  std::vector<NameRef> refs;
  bool complete = false;
};

struct ConstraintStatement {
  enum class Kind { kExcl, kIncl, kOne, kRequires, kMask } kind;
  SourceSpan keyword;
  std::vector<NameRef> members;  // for requires/mask the first entry is the lhs
};

// Recursive-descent parser for one tokenized line.
class LineParser {
 public:
  LineParser(const std::vector<Token>& tokens, int line_no) : tokens_(tokens), line_(line_no) {}

  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }

  bool peek_is(Token::Type type, std::string_view text = {}) const {
    return !at_end() && peek().type == type && (text.empty() || peek().text == text);
  }

  SourceSpan span_of(const Token& t) const { return SourceSpan{line_, t.column, t.length}; }

  [[noreturn]] void fail(std::string message) const {
    const Token& where = at_end() ? tokens_.back() : peek();
    throw Failure{ParseError{span_of(where), std::move(message), ParseErrorKind::kSyntax}};
  }

  std::string found() const { return at_end() ? "end of line" : describe(peek()); }

  const Token& expect(Token::Type type, const char* what) {
    if (!peek_is(type)) fail(std::string("expected ") + what + ", found " + found());
    return tokens_[pos_++];
  }

  NameRef identifier(const char* role) {
    if (peek_is(Token::Type::kKeyword))
      fail("'" + peek().text + "' is a reserved word and cannot be used as " + role);
    const Token& t = expect(Token::Type::kIdent, role);
    return NameRef{t.text, span_of(t)};
  }

  void finish() {
    if (!at_end()) fail("unexpected " + describe(peek()) + " after statement");
  }

  BoolExpr expression(std::vector<NameRef>& refs, int depth = 0) {
    std::vector<BoolExpr> terms{term(refs, depth)};
    while (peek_is(Token::Type::kKeyword, "or")) {
      ++pos_;
      terms.push_back(term(refs, depth));
    }
    return terms.size() == 1 ? terms.front() : BoolExpr::any_of(std::move(terms));
  }

 private:
  BoolExpr term(std::vector<NameRef>& refs, int depth) {
    std::vector<BoolExpr> factors{factor(refs, depth)};
    while (peek_is(Token::Type::kKeyword, "and")) {
      ++pos_;
      factors.push_back(factor(refs, depth));
    }
    return factors.size() == 1 ? factors.front() : BoolExpr::all_of(std::move(factors));
  }

  BoolExpr factor(std::vector<NameRef>& refs, int depth) {
    if (depth > kMaxNesting) fail("expression nested too deeply");
    if (peek_is(Token::Type::kKeyword, "not")) {
      ++pos_;
      return BoolExpr::negate(factor(refs, depth + 1));
    }
    if (peek_is(Token::Type::kLParen)) {
      ++pos_;
      BoolExpr inner = expression(refs, depth + 1);
      expect(Token::Type::kRParen, "')'");
      return inner;
    }
    if (peek_is(Token::Type::kIdent)) {
      const Token& t = tokens_[pos_++];
      refs.push_back(NameRef{t.text, span_of(t)});
      return BoolExpr::var(t.text);
    }
    if (peek_is(Token::Type::kKeyword)) fail("expected operand, found reserved word '" + peek().text + "'");
    fail("expected operand, found " + found());
  }

  const std::vector<Token>& tokens_;
  int line_;
  std::size_t pos_ = 0;
};

class SpecParser {
 public:
  ParseResult run(std::string_view source) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= source.size()) {
      std::size_t end = source.find('\n', start);
      if (end == std::string_view::npos) end = source.size();
      std::string_view line = source.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      statement(line, line_no);
      if (end == source.size()) break;
      start = end + 1;
    }
    resolve();
    if (!errors_.empty()) {
      std::stable_sort(errors_.begin(), errors_.end(), [](const ParseError& a, const ParseError& b) {
        return std::tie(a.span.line, a.span.column) < std::tie(b.span.line, b.span.column);
      });
      return ParseResult(std::move(errors_));
    }
    return ParseResult(build());
  }

 private:
  void error(SourceSpan span, ParseErrorKind kind, std::string message) {
    errors_.push_back(ParseError{span, std::move(message), kind});
  }

  void statement(std::string_view line, int line_no) {
    std::vector<Token> tokens;
    try {
      tokens = lex_line(line, line_no);
    } catch (const Failure& f) {
      errors_.push_back(f.error);
      salvage_declaration(line, line_no);
      return;
    }
    if (tokens.empty()) return;

    LineParser p(tokens, line_no);
    Declaration* pending = nullptr;
    try {
      if (!p.peek_is(Token::Type::kKeyword)) p.fail("expected a statement, found " + p.found());
      const Token& head = tokens.front();
      p.expect(Token::Type::kKeyword, "keyword");
      if (head.text == "title") {
        const Token& text = p.expect(Token::Type::kString, "a quoted title");
        p.finish();
        if (title_span_) {
          error(p.span_of(head), ParseErrorKind::kDuplicate,
                "duplicate 'title' (first set on line " + std::to_string(title_span_->line) + ")");
        } else {
          title_ = text.text;
          title_span_ = p.span_of(head);
        }
      } else if (head.text == "cause" || head.text == "node" || head.text == "effect") {
        const DeclKind kind = head.text == "cause"  ? DeclKind::kCause
                              : head.text == "node" ? DeclKind::kNode
                                                    : DeclKind::kEffect;
        declarations_.push_back(Declaration{kind, p.identifier("a name"), {}, std::nullopt, {}, false});
        pending = &declarations_.back();
        if (kind != DeclKind::kNode && p.peek_is(Token::Type::kString)) {
          pending->description = p.peek().text;
          p.expect(Token::Type::kString, "description");
        }
        if (kind != DeclKind::kCause) {
          p.expect(Token::Type::kEquals, "'='");
          pending->expr = p.expression(pending->refs);
        }
        p.finish();
        pending->complete = true;
      } else if (head.text == "constraint") {
        constraint(p);
      } else {
        throw Failure{ParseError{p.span_of(head), "'" + head.text + "' cannot start a statement",
                                 ParseErrorKind::kSyntax}};
      }
    } catch (const Failure& f) {
      errors_.push_back(f.error);
    }
  }

  // After a lexical error, still register a declared name when the line
  // starts "cause|node|effect IDENT" so later references do not cascade.
  void salvage_declaration(std::string_view line, int line_no) {
    std::size_t i = line.find_first_not_of(" \t");
    if (i == std::string_view::npos) return;
    std::size_t j = i;
    while (j < line.size() && std::isalpha(static_cast<unsigned char>(line[j]))) ++j;
    const std::string head = lowercase(line.substr(i, j - i));
    if (head != "cause" && head != "node" && head != "effect") return;
    std::size_t k = line.find_first_not_of(" \t", j);
    if (k == std::string_view::npos || k == j) return;
    std::size_t e = k;
    while (e < line.size() && static_cast<unsigned char>(line[e]) < 0x80 &&
           (std::isalnum(static_cast<unsigned char>(line[e])) || line[e] == '_'))
      ++e;
    const std::string_view name = line.substr(k, e - k);
    if (!is_valid_identifier(name) || is_reserved_word(name)) return;
    const DeclKind kind = head == "cause" ? DeclKind::kCause : head == "node" ? DeclKind::kNode : DeclKind::kEffect;
    declarations_.push_back(Declaration{
        kind, NameRef{std::string(name), SourceSpan{line_no, static_cast<int>(k) + 1, static_cast<int>(e - k)}},
        {}, std::nullopt, {}, false});
  }

  void constraint(LineParser& p) {
    if (!p.peek_is(Token::Type::kKeyword))
      p.fail("expected constraint kind (excl, incl, one, requires, mask), found " + p.found());
    const Token& kind_token = p.peek();
    ConstraintStatement c{};
    c.keyword = p.span_of(kind_token);
    const std::string& k = kind_token.text;
    if (k == "excl") c.kind = ConstraintStatement::Kind::kExcl;
    else if (k == "incl") c.kind = ConstraintStatement::Kind::kIncl;
    else if (k == "one") c.kind = ConstraintStatement::Kind::kOne;
    else if (k == "requires") c.kind = ConstraintStatement::Kind::kRequires;
    else if (k == "mask") c.kind = ConstraintStatement::Kind::kMask;
    else p.fail("expected constraint kind (excl, incl, one, requires, mask), found '" + k + "'");
    p.expect(Token::Type::kKeyword, "constraint kind");
    p.expect(Token::Type::kLParen, "'('");
    c.members.push_back(p.identifier("a constraint member"));
    if (c.kind == ConstraintStatement::Kind::kRequires || c.kind == ConstraintStatement::Kind::kMask) {
      p.expect(Token::Type::kArrow, "'->'");
      c.members.push_back(p.identifier("a constraint member"));
    }
    while (c.kind != ConstraintStatement::Kind::kMask && p.peek_is(Token::Type::kComma)) {
      p.expect(Token::Type::kComma, "','");
      c.members.push_back(p.identifier("a constraint member"));
    }
    p.expect(Token::Type::kRParen, "')'");
    p.finish();
    if (c.kind <= ConstraintStatement::Kind::kOne && c.members.size() < 2) {
      throw Failure{ParseError{c.keyword, "constraint '" + k + "' needs at least two members",
                               ParseErrorKind::kSyntax}};
    }
    constraints_.push_back(std::move(c));
  }

  void resolve() {
    for (const Declaration& d : declarations_) {
      auto [it, inserted] = kinds_.emplace(d.name.name, std::make_pair(d.kind, d.name.span));
      if (!inserted) {
        error(d.name.span, ParseErrorKind::kDuplicate,
              "duplicate declaration of '" + d.name.name + "' (first declared on line " +
                  std::to_string(it->second.second.line) + ")");
      }
    }
    for (const Declaration& d : declarations_) {
      for (const NameRef& ref : d.refs) {
        auto it = kinds_.find(ref.name);
        if (it == kinds_.end()) {
          error(ref.span, ParseErrorKind::kReference, "undeclared identifier '" + ref.name + "'");
        } else if (it->second.first == DeclKind::kEffect) {
          error(ref.span, ParseErrorKind::kReference,
                "effect '" + ref.name + "' cannot be referenced in an expression");
        }
      }
    }
    for (const ConstraintStatement& c : constraints_) check_constraint(c);
    check_cycles();
  }

  void check_member(const NameRef& ref, DeclKind expected) {
    auto it = kinds_.find(ref.name);
    if (it == kinds_.end()) {
      error(ref.span, ParseErrorKind::kReference, "undeclared identifier '" + ref.name + "'");
    } else if (it->second.first != expected) {
      error(ref.span, ParseErrorKind::kReference,
            "'" + ref.name + "' must be " + (expected == DeclKind::kCause ? "a cause" : "an effect"));
    }
  }

  void check_constraint(const ConstraintStatement& c) {
    const bool is_mask = c.kind == ConstraintStatement::Kind::kMask;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      const NameRef& m = c.members[i];
      check_member(m, is_mask ? DeclKind::kEffect : DeclKind::kCause);
      if (!seen.insert(m.name).second) {
        const bool self = (is_mask || c.kind == ConstraintStatement::Kind::kRequires) &&
                          m.name == c.members.front().name;
        if (self) {
          error(m.span, ParseErrorKind::kReference,
                is_mask ? "effect '" + m.name + "' cannot mask itself"
                        : "'" + m.name + "' cannot require itself");
        } else {
          error(m.span, ParseErrorKind::kDuplicate, "'" + m.name + "' listed twice in constraint");
        }
      }
    }
  }

  void check_cycles() {
    CegSpec nodes_only;
    std::map<std::string, SourceSpan> spans;
    for (const Declaration& d : declarations_) {
      if (d.kind != DeclKind::kNode || !d.complete) continue;
      if (!spans.emplace(d.name.name, d.name.span).second) continue;
      nodes_only.intermediates.push_back(IntermediateNode{NodeId(d.name.name), *d.expr});
    }
    for (const Finding& f : validate_spec(nodes_only)) {
      if (f.kind != FindingKind::kCycle) continue;
      error(spans.at(f.subject.str()), ParseErrorKind::kCycle, f.message);
    }
  }

  CegSpec build() const {
    CegSpec spec;
    spec.title = title_;
    for (const Declaration& d : declarations_) {
      NodeId id(d.name.name);
      switch (d.kind) {
        case DeclKind::kCause: spec.causes.push_back(Cause{id, d.description}); break;
        case DeclKind::kNode: spec.intermediates.push_back(IntermediateNode{id, *d.expr}); break;
        case DeclKind::kEffect: spec.effects.push_back(Effect{id, d.description, *d.expr}); break;
      }
    }
    for (const ConstraintStatement& c : constraints_) {
      std::vector<NodeId> ids;
      for (const NameRef& m : c.members) ids.emplace_back(m.name);
      switch (c.kind) {
        case ConstraintStatement::Kind::kExcl: spec.constraints.emplace_back(Exclusive{ids}); break;
        case ConstraintStatement::Kind::kIncl: spec.constraints.emplace_back(Inclusive{ids}); break;
        case ConstraintStatement::Kind::kOne: spec.constraints.emplace_back(OneAndOnlyOne{ids}); break;
        case ConstraintStatement::Kind::kRequires:
          spec.constraints.emplace_back(Requires{ids.front(), {ids.begin() + 1, ids.end()}});
          break;
        case ConstraintStatement::Kind::kMask: spec.constraints.emplace_back(Mask{ids[0], ids[1]}); break;
      }
    }
    return spec;
  }

  std::string title_;
  std::optional<SourceSpan> title_span_;
  std::vector<Declaration> declarations_;
  std::vector<ConstraintStatement> constraints_;
  std::unordered_map<std::string, std::pair<DeclKind, SourceSpan>> kinds_;
  std::vector<ParseError> errors_;
};

}  // namespace

ParseResult parse(std::string_view source) { return SpecParser().run(source); }

}  // namespace cegen
