#include <map>
#include <sstream>

#include "cegen/export.hpp"

namespace cegen {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string q(const std::string& s) { return "\"" + escape(s) + "\""; }

class DotWriter {
 public:
  explicit DotWriter(const CegSpec& spec) : spec_(spec) {}

  std::string run() {
    const bool empty = spec_.causes.empty() && spec_.intermediates.empty() && spec_.effects.empty();
    out_ << "digraph " << q(spec_.title.empty() ? "cegen" : spec_.title) << " {\n";
    if (empty) {
      out_ << "}\n";
      return out_.str();
    }
    out_ << "  rankdir=LR;\n"
         << "  node [fontname=\"Helvetica\"];\n";

    out_ << "  subgraph causes {\n    rank=source;\n";
    for (const Cause& c : spec_.causes)
      out_ << "    " << q(c.id.str()) << " [shape=box, label=" << label(c.id, c.description) << "];\n";
    out_ << "  }\n";
    for (const IntermediateNode& n : spec_.intermediates)
      out_ << "  " << q(n.id.str()) << " [shape=ellipse];\n";
    out_ << "  subgraph effects {\n    rank=sink;\n";
    for (const Effect& e : spec_.effects)
      out_ << "    " << q(e.id.str()) << " [shape=box, style=rounded, label=" << label(e.id, e.description)
           << "];\n";
    out_ << "  }\n";

    for (const IntermediateNode& n : spec_.intermediates) relation(n.id.str(), n.expr);
    for (const Effect& e : spec_.effects) relation(e.id.str(), e.expr);

    int index = 0;
    for (const Constraint& c : spec_.constraints) constraint(c, ++index);
    out_ << "}\n";
    return out_.str();
  }

 private:
  // Quoted label: id, then the description on a second line.
  static std::string label(const NodeId& id, const std::string& description) {
    if (description.empty()) return q(id.str());
    return "\"" + escape(id.str()) + "\\n" + escape(description) + "\"";
  }

  void edge(const std::string& from, const std::string& to, bool negated) {
    out_ << "  " << q(from) << " -> " << q(to);
    if (negated) out_ << " [label=\"not\"]";
    out_ << ";\n";
  }

  std::string junction(const std::string& owner, const char* label) {
    const std::string id = owner + "#" + std::to_string(++junctions_[owner]);
    out_ << "  " << q(id) << " [shape=circle, label=\"" << label << "\", width=0.3];\n";
    return id;
  }

  void relation(const std::string& target, const BoolExpr& expr) { feed(target, expr, false); }

  void feed(const std::string& target, const BoolExpr& expr, bool negated) {
    switch (expr.kind()) {
      case BoolExpr::Kind::kVar:
        edge(expr.id().str(), target, negated);
        return;
      case BoolExpr::Kind::kNot:
        if (negated) {  // double negation gets its own junction so both labels show
          const std::string j = junction(target, "NOT");
          edge(j, target, true);
          feed(j, expr.operands()[0], true);
        } else {
          feed(target, expr.operands()[0], true);
        }
        return;
      case BoolExpr::Kind::kAnd:
      case BoolExpr::Kind::kOr: {
        const std::string j = junction(target, expr.kind() == BoolExpr::Kind::kAnd ? "AND" : "OR");
        edge(j, target, negated);
        for (const BoolExpr& op : expr.operands()) feed(j, op, false);
        return;
      }
    }
  }

  void dashed(const std::string& from, const std::string& to, char symbol, bool directed) {
    out_ << "  " << q(from) << " -> " << q(to) << " [style=dashed, label=\"" << symbol << "\"";
    if (!directed) out_ << ", dir=none";
    out_ << "];\n";
  }

  void constraint(const Constraint& c, int index) {
    const char symbol = constraint_symbol(c);
    if (const auto* r = std::get_if<Requires>(&c)) {
      for (const NodeId& id : r->consequents) dashed(r->antecedent.str(), id.str(), symbol, true);
      return;
    }
    if (const auto* m = std::get_if<Mask>(&c)) {
      dashed(m->masker.str(), m->masked.str(), symbol, true);
      return;
    }
    const std::vector<NodeId>& members = std::visit(
        [](const auto& k) -> const std::vector<NodeId>& {
          if constexpr (requires { k.members; }) {
            return k.members;
          } else {
            static const std::vector<NodeId> none;
            return none;
          }
        },
        c);
    const std::string hub = "constraint#" + std::to_string(index);
    out_ << "  " << q(hub) << " [shape=plaintext, label=\"" << symbol << "\"];\n";
    for (const NodeId& id : members) dashed(hub, id.str(), symbol, false);
  }

  const CegSpec& spec_;
  std::ostringstream out_;
  std::map<std::string, int> junctions_;
};

}  // namespace

std::string to_dot(const CegSpec& spec) { return DotWriter(spec).run(); }

}  // namespace cegen
