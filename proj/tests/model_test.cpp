#include <gtest/gtest.h>

#include <random>

#include "cegen/error.hpp"
#include "cegen/model.hpp"
#include "support/corpus.hpp"
#include "support/random_spec.hpp"
#include "support/reference.hpp"

namespace {

using namespace cegen;
using ceg_test::Bits;

Assignment placement_assignment(std::initializer_list<int> true_causes) {
  Assignment a;
  for (int i = 1; i <= 6; ++i) a.set("C" + std::to_string(i), false);
  for (int i : true_causes) a.set("C" + std::to_string(i), true);
  return a;
}

bool has_kind(const std::vector<Finding>& findings, FindingKind kind) {
  for (const auto& f : findings)
    if (f.kind == kind) return true;
  return false;
}

CegSpec two_cause_spec() {
  CegSpec s;
  s.causes = {{NodeId("A"), ""}, {NodeId("B"), ""}};
  s.effects = {{NodeId("X"), "", BoolExpr::var("A")}, {NodeId("Y"), "", BoolExpr::var("B")}};
  return s;
}

TEST(BoolExpr, AndOrNeedTwoOperands) {
  EXPECT_THROW(BoolExpr::all_of({BoolExpr::var("A")}), ContractError);
  EXPECT_THROW(BoolExpr::any_of({}), ContractError);
  const auto e = BoolExpr::any_of({BoolExpr::var("A"), BoolExpr::negate(BoolExpr::var("B"))});
  EXPECT_EQ(e.kind(), BoolExpr::Kind::kOr);
  ASSERT_EQ(e.operands().size(), 2u);
  EXPECT_EQ(e.operands()[1].kind(), BoolExpr::Kind::kNot);
}

TEST(BoolExpr, StructuralEquality) {
  const auto a = BoolExpr::all_of({BoolExpr::var("A"), BoolExpr::var("B")});
  const auto b = BoolExpr::all_of({BoolExpr::var("A"), BoolExpr::var("B")});
  const auto c = BoolExpr::any_of({BoolExpr::var("A"), BoolExpr::var("B")});
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
  EXPECT_FALSE(BoolExpr::var("A") == BoolExpr::var("B"));
}

TEST(Identifiers, ValidAndReserved) {
  EXPECT_TRUE(is_valid_identifier("C1"));
  EXPECT_TRUE(is_valid_identifier("card_ok"));
  EXPECT_FALSE(is_valid_identifier("1C"));
  EXPECT_FALSE(is_valid_identifier(""));
  EXPECT_FALSE(is_valid_identifier("a-b"));
  EXPECT_TRUE(is_reserved_word("AND"));
  EXPECT_TRUE(is_reserved_word("mask"));
  EXPECT_FALSE(is_reserved_word("masks"));
}

TEST(Validate, PlacementSpecIsValid) {
  EXPECT_TRUE(validate_spec(ceg_test::corpus_spec("placement")).empty());
}

TEST(Validate, EffectReferencedInExpression) {
  auto s = two_cause_spec();
  s.effects[0].expr = BoolExpr::var("Y");
  const auto findings = validate_spec(s);
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].kind, FindingKind::kEffectInExpression);
  EXPECT_NE(findings[0].message.find("effect referenced in expression"), std::string::npos);
}

TEST(Validate, SelfCycle) {
  auto s = two_cause_spec();
  s.intermediates = {{NodeId("N1"), BoolExpr::var("N1")}};
  const auto findings = validate_spec(s);
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].kind, FindingKind::kCycle);
}

TEST(Validate, LongerCycleReportedOnce) {
  auto s = two_cause_spec();
  s.intermediates = {{NodeId("N1"), BoolExpr::var("N2")},
                     {NodeId("N2"), BoolExpr::all_of({BoolExpr::var("A"), BoolExpr::var("N3")})},
                     {NodeId("N3"), BoolExpr::var("N1")}};
  const auto findings = validate_spec(s);
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].kind, FindingKind::kCycle);
}

TEST(Validate, StructuralFindings) {
  auto s = two_cause_spec();
  s.causes.push_back({NodeId("A"), ""});
  s.effects.push_back({NodeId("Z"), "", BoolExpr::var("Q")});
  s.constraints = {Exclusive{{NodeId("A")}}, Requires{NodeId("A"), {NodeId("A")}},
                   Mask{NodeId("X"), NodeId("X")}, Inclusive{{NodeId("A"), NodeId("X")}},
                   OneAndOnlyOne{{NodeId("A"), NodeId("B"), NodeId("B")}}};
  const auto findings = validate_spec(s);
  EXPECT_TRUE(has_kind(findings, FindingKind::kDuplicateId));
  EXPECT_TRUE(has_kind(findings, FindingKind::kDanglingReference));
  EXPECT_TRUE(has_kind(findings, FindingKind::kConstraintArity));
  EXPECT_TRUE(has_kind(findings, FindingKind::kSelfReference));
  EXPECT_TRUE(has_kind(findings, FindingKind::kWrongNodeKind));
  EXPECT_TRUE(has_kind(findings, FindingKind::kDuplicateMember));
}

TEST(Validate, BadIdentifiersAndText) {
  auto s = two_cause_spec();
  s.causes[0].id = NodeId("not");
  s.causes[1].description = "bell\a";
  s.effects.clear();
  const auto findings = validate_spec(s);
  EXPECT_TRUE(has_kind(findings, FindingKind::kInvalidIdentifier));
  EXPECT_TRUE(has_kind(findings, FindingKind::kInvalidText));
}

TEST(Evaluate, PlacementExamples) {
  const auto spec = ceg_test::corpus_spec("placement");
  const EffectVector e1 = evaluate(spec, placement_assignment({1}));
  EXPECT_TRUE(e1.at("E1"));
  for (const char* id : {"E2", "E3", "E4", "E5"}) EXPECT_FALSE(e1.at(id)) << id;

  const EffectVector none = evaluate(spec, placement_assignment({}));
  for (const auto& [id, v] : none.values()) EXPECT_FALSE(v) << id.str();

  const auto a = placement_assignment({2, 6});
  const EffectVector masked = evaluate(spec, a);
  EXPECT_TRUE(masked.at("E1"));
  EXPECT_TRUE(masked.at("E2"));
  EXPECT_FALSE(masked.at("E3"));
  EXPECT_TRUE(evaluate_unmasked(spec, a).at("E3"));
}

TEST(Evaluate, MasksReadRawMaskerValue) {
  auto s = two_cause_spec();
  s.constraints = {Mask{NodeId("X"), NodeId("Y")}, Mask{NodeId("Y"), NodeId("X")}};
  Assignment a{{NodeId("A"), true}, {NodeId("B"), true}};
  const EffectVector e = evaluate(s, a);
  EXPECT_FALSE(e.at("X"));
  EXPECT_FALSE(e.at("Y"));
}

TEST(Evaluate, RejectsPartialOrUnknownAssignments) {
  const auto s = two_cause_spec();
  EXPECT_THROW(evaluate(s, Assignment{{NodeId("A"), true}}), AssignmentError);
  EXPECT_THROW(evaluate(s, Assignment{{NodeId("A"), true}, {NodeId("B"), true}, {NodeId("Q"), true}}),
               AssignmentError);
  EXPECT_THROW(check_constraints(s, Assignment{{NodeId("B"), true}}), AssignmentError);
}

TEST(Constraints, PlacementExamples) {
  const auto spec = ceg_test::corpus_spec("placement");
  EXPECT_FALSE(check_constraints(spec, placement_assignment({1, 2})));
  EXPECT_TRUE(check_constraints(spec, placement_assignment({})));
  EXPECT_FALSE(check_constraints(spec, placement_assignment({6})));
  EXPECT_TRUE(check_constraints(spec, placement_assignment({3, 6})));
}

TEST(Constraints, EachKind) {
  CegSpec s;
  for (const char* id : {"A", "B", "C"}) s.causes.push_back({NodeId(id), ""});
  const auto with = [&](Constraint c, bool a, bool b, bool cc) {
    CegSpec t = s;
    t.constraints = {std::move(c)};
    return check_constraints(t, Assignment{{NodeId("A"), a}, {NodeId("B"), b}, {NodeId("C"), cc}});
  };
  const std::vector<NodeId> ab{NodeId("A"), NodeId("B")};
  EXPECT_TRUE(with(Exclusive{ab}, false, false, true));
  EXPECT_FALSE(with(Exclusive{ab}, true, true, false));
  EXPECT_FALSE(with(Inclusive{ab}, false, false, true));
  EXPECT_TRUE(with(Inclusive{ab}, true, true, false));
  EXPECT_FALSE(with(OneAndOnlyOne{ab}, false, false, false));
  EXPECT_TRUE(with(OneAndOnlyOne{ab}, false, true, false));
  EXPECT_FALSE(with(OneAndOnlyOne{ab}, true, true, false));
  EXPECT_TRUE(with(Requires{NodeId("C"), ab}, false, false, false));
  EXPECT_FALSE(with(Requires{NodeId("C"), ab}, false, false, true));
  EXPECT_TRUE(with(Requires{NodeId("C"), ab}, false, true, true));
}

// Properties, each against the tree-walking reference.

class ModelProperty : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20261014};
};

TEST_F(ModelProperty, EvaluateMatchesReferenceAndIsDeterministic) {
  ceg_test::RandomSpecOptions opt;
  opt.max_causes = 8;
  for (int round = 0; round < 200; ++round) {
    const CegSpec spec = ceg_test::random_spec(rng, opt);
    ASSERT_TRUE(validate_spec(spec).empty());
    const std::size_t n = spec.causes.size();
    for (std::uint64_t code = 0; code < (1u << n); ++code) {
      const Bits bits = ceg_test::bits_of(code, n);
      const Assignment a = ceg_test::to_assignment(spec, bits);
      const EffectVector first = evaluate(spec, a);
      EXPECT_EQ(first, evaluate(spec, a));
      EXPECT_EQ(ceg_test::to_bits(spec, first), ceg_test::ref_effects(spec, bits));
      EXPECT_EQ(check_constraints(spec, a), ceg_test::ref_feasible(spec, bits));
      EXPECT_EQ(check_constraints(spec, a), check_constraints(spec, a));
    }
  }
}

TEST_F(ModelProperty, MaskPassIsIdempotent) {
  for (int round = 0; round < 200; ++round) {
    const CegSpec spec = ceg_test::random_spec(rng);
    const std::size_t n = spec.causes.size();
    for (int k = 0; k < 16; ++k) {
      const Bits bits = ceg_test::bits_of(rng() & ((1u << n) - 1), n);
      const EffectVector once = apply_masks(spec, evaluate_unmasked(spec, ceg_test::to_assignment(spec, bits)));
      EXPECT_EQ(apply_masks(spec, once), once);
    }
  }
}

BoolExpr inline_nodes(const CegSpec& spec, const BoolExpr& e) {
  switch (e.kind()) {
    case BoolExpr::Kind::kVar:
      if (const auto* n = spec.find_intermediate(e.id())) return inline_nodes(spec, n->expr);
      return e;
    case BoolExpr::Kind::kNot: return BoolExpr::negate(inline_nodes(spec, e.operands()[0]));
    case BoolExpr::Kind::kAnd:
    case BoolExpr::Kind::kOr: {
      std::vector<BoolExpr> ops;
      for (const auto& op : e.operands()) ops.push_back(inline_nodes(spec, op));
      return e.kind() == BoolExpr::Kind::kAnd ? BoolExpr::all_of(ops) : BoolExpr::any_of(ops);
    }
  }
  return e;
}

TEST_F(ModelProperty, InliningIntermediatesPreservesEffects) {
  ceg_test::RandomSpecOptions opt;
  opt.max_causes = 8;
  opt.max_intermediates = 4;
  int with_nodes = 0;
  for (int round = 0; round < 200; ++round) {
    const CegSpec spec = ceg_test::random_spec(rng, opt);
    if (spec.intermediates.empty()) continue;
    ++with_nodes;
    CegSpec flat = spec;
    flat.intermediates.clear();
    for (auto& e : flat.effects) e.expr = inline_nodes(spec, e.expr);
    ASSERT_TRUE(validate_spec(flat).empty());
    const std::size_t n = spec.causes.size();
    for (std::uint64_t code = 0; code < (1u << n); ++code) {
      const Assignment a = ceg_test::to_assignment(spec, ceg_test::bits_of(code, n));
      EXPECT_EQ(evaluate(spec, a), evaluate(flat, a));
    }
  }
  EXPECT_GT(with_nodes, 50);
}

TEST_F(ModelProperty, DeMorgan) {
  for (int round = 0; round < 300; ++round) {
    CegSpec spec;
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    std::vector<NodeId> leaves;
    for (int i = 1; i <= n; ++i) {
      leaves.emplace_back("C" + std::to_string(i));
      spec.causes.push_back({leaves.back(), ""});
    }
    const BoolExpr a = ceg_test::random_expr(rng, leaves, 2);
    const BoolExpr b = ceg_test::random_expr(rng, leaves, 2);
    spec.effects = {
        {NodeId("L1"), "", BoolExpr::negate(BoolExpr::all_of({a, b}))},
        {NodeId("R1"), "", BoolExpr::any_of({BoolExpr::negate(a), BoolExpr::negate(b)})},
        {NodeId("L2"), "", BoolExpr::negate(BoolExpr::any_of({a, b}))},
        {NodeId("R2"), "", BoolExpr::all_of({BoolExpr::negate(a), BoolExpr::negate(b)})},
    };
    for (std::uint64_t code = 0; code < (1u << n); ++code) {
      const EffectVector e = evaluate(spec, ceg_test::to_assignment(spec, ceg_test::bits_of(code, n)));
      EXPECT_EQ(e.at("L1"), e.at("R1"));
      EXPECT_EQ(e.at("L2"), e.at("R2"));
    }
  }
}

TEST_F(ModelProperty, NoConstraintsMeansEverythingFeasible) {
  ceg_test::RandomSpecOptions opt;
  opt.max_constraints = 0;
  for (int round = 0; round < 100; ++round) {
    const CegSpec spec = ceg_test::random_spec(rng, opt);
    const std::size_t n = spec.causes.size();
    for (std::uint64_t code = 0; code < (1u << n); ++code)
      EXPECT_TRUE(check_constraints(spec, ceg_test::to_assignment(spec, ceg_test::bits_of(code, n))));
  }
}

}  // namespace
