#include <sstream>

#include "cegen/parser.hpp"

namespace cegen {

namespace {

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void write_expr(std::ostream& out, const BoolExpr& e) {
  using Kind = BoolExpr::Kind;
  auto operand = [&](const BoolExpr& op, bool parens) {
    if (parens) out << '(';
    write_expr(out, op);
    if (parens) out << ')';
  };
  switch (e.kind()) {
    case Kind::kVar:
      out << e.id().str();
      return;
    case Kind::kNot:
      out << "not ";
      operand(e.operands()[0], e.operands()[0].kind() == Kind::kAnd || e.operands()[0].kind() == Kind::kOr);
      return;
    case Kind::kAnd:
    case Kind::kOr: {
      const bool is_and = e.kind() == Kind::kAnd;
      bool first = true;
      for (const BoolExpr& op : e.operands()) {
        if (!first) out << (is_and ? " and " : " or ");
        first = false;
        // A nested operator of equal or lower precedence would otherwise be
        // flattened into this one on re-parse.
        const bool parens = op.kind() == Kind::kOr || (is_and && op.kind() == Kind::kAnd);
        operand(op, parens);
      }
      return;
    }
  }
}

void write_ids(std::ostream& out, const std::vector<NodeId>& ids) {
  for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? ", " : "") << ids[i].str();
}

}  // namespace

std::string render_expr(const BoolExpr& expr) {
  std::ostringstream out;
  write_expr(out, expr);
  return out.str();
}

std::string render(const CegSpec& spec) {
  std::ostringstream out;
  if (!spec.title.empty()) out << "title " << quoted(spec.title) << '\n';
  for (const Cause& c : spec.causes) {
    out << "cause " << c.id.str();
    if (!c.description.empty()) out << ' ' << quoted(c.description);
    out << '\n';
  }
  for (const IntermediateNode& n : spec.intermediates) {
    out << "node " << n.id.str() << " = " << render_expr(n.expr) << '\n';
  }
  for (const Effect& e : spec.effects) {
    out << "effect " << e.id.str();
    if (!e.description.empty()) out << ' ' << quoted(e.description);
    out << " = " << render_expr(e.expr) << '\n';
  }
  for (const Constraint& c : spec.constraints) {
    out << "constraint ";
    if (const auto* x = std::get_if<Exclusive>(&c)) {
      out << "excl(";
      write_ids(out, x->members);
    } else if (const auto* x = std::get_if<Inclusive>(&c)) {
      out << "incl(";
      write_ids(out, x->members);
    } else if (const auto* x = std::get_if<OneAndOnlyOne>(&c)) {
      out << "one(";
      write_ids(out, x->members);
    } else if (const auto* x = std::get_if<Requires>(&c)) {
      out << "requires(" << x->antecedent.str() << " -> ";
      write_ids(out, x->consequents);
    } else {
      const auto& m = std::get<Mask>(c);
      out << "mask(" << m.masker.str() << " -> " << m.masked.str();
    }
    out << ")\n";
  }
  return out.str();
}

}  // namespace cegen
