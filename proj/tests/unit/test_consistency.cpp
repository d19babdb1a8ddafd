#include <gtest/gtest.h>

#include "maxclass5/maxclass5.hpp"

using namespace maxclass5;

namespace {

PresentationParams P(long long n, long long w, long long z, std::vector<long long> a = {}) {
  return validate_params({5, n, w, z, std::move(a)});
}

// y acting on s_3 with an extra s_3 factor: s_3^y = s_3^2 breaks the
// relation between y-action and commutators, and associativity with it.
PcGroup corrupted(const PresentationParams& p) {
  PresentationTables t = derive_tables(p);
  t.conj_y[3][3] = 2;
  return PcGroup::from_tables(p, t);
}

}  // namespace

TEST(Consistency, ExhaustiveSmallestGroup) {
  const PcGroup g = build_group(P(4, 0, 0));
  const auto r = consistency_check(g, CheckMode::exhaustive);
  EXPECT_TRUE(r.passed()) << r.failure();
  EXPECT_EQ(r.triples_checked, 625ull * 625 * 625);
  EXPECT_TRUE(r.closure_checked);
  EXPECT_EQ(r.closure_size, 625u);
}

TEST(Consistency, SampledSix) {
  const PcGroup g = build_group(P(6, 1, 1, {1}));
  const auto r = consistency_check(g, CheckMode::sampled, 100000, 0);
  EXPECT_TRUE(r.passed()) << r.failure();
  EXPECT_GE(r.triples_checked, 100000u);
  EXPECT_EQ(r.closure_size, g.order());
}

TEST(Consistency, SampledIsSeedDeterministic) {
  const PcGroup g = build_group(P(5, 2, 3, {4}));
  const auto a = consistency_check(g, CheckMode::sampled, 5000, 42);
  const auto b = consistency_check(g, CheckMode::sampled, 5000, 42);
  EXPECT_EQ(a.triples_checked, b.triples_checked);
  EXPECT_EQ(a.passed(), b.passed());
}

TEST(Consistency, CorruptedTableFailsWithWitness) {
  const PcGroup g = corrupted(P(4, 0, 0));
  const auto r = consistency_check(g, CheckMode::exhaustive);
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.witness.has_value());
  const auto& w = *r.witness;
  EXPECT_NE(w.left, w.right);
  EXPECT_EQ(g.multiply(g.multiply(w.u, w.v), w.w), w.left);
  EXPECT_EQ(g.multiply(w.u, g.multiply(w.v, w.w)), w.right);
  EXPECT_NE(r.failure().find("associativity"), std::string::npos);
}

TEST(Consistency, CorruptedTableCaughtBySampling) {
  const PcGroup g = corrupted(P(6, 0, 0));
  const auto r = consistency_check(g, CheckMode::sampled, 20000, 1);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.witness.has_value());
}

TEST(Consistency, BuildGroupRejectsCorruptedRelations) {
  const PcGroup g = corrupted(P(5, 0, 0));
  bool some_relation_fails = false;
  for (const auto& c : verify_presentation(g)) some_relation_fails |= !c.holds;
  EXPECT_TRUE(some_relation_fails);
}

TEST(Consistency, ExhaustiveGuard) {
  const PcGroup g = build_group(P(5, 0, 0));
  EXPECT_THROW(consistency_check(g, CheckMode::exhaustive), SizeGuard);
  EXPECT_EQ(default_mode(g), CheckMode::sampled);
  EXPECT_EQ(default_mode(build_group(P(4, 1, 0))), CheckMode::exhaustive);
}
