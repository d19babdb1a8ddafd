#include <gtest/gtest.h>

#include <random>

#include "maxclass5/maxclass5.hpp"
#include "oracles.hpp"

using namespace maxclass5;

namespace {

PresentationParams P(long long n, long long w, long long z, std::vector<long long> a = {}) {
  return validate_params({5, n, w, z, std::move(a)});
}

std::set<std::uint32_t> codes(const PcGroup& g, const Subgroup& h) {
  std::set<std::uint32_t> out;
  for (const auto& u : h.elements(g)) out.insert(u.code());
  return out;
}

std::vector<Element> gamma2_gens(const PcGroup& g) {
  std::vector<Element> out;
  for (int j = 2; j < g.n(); ++j) out.push_back(g.s(j));
  return out;
}

}  // namespace

TEST(Subgroup, TrivialClosure) {
  const PcGroup g = build_group(P(5, 0, 0));
  const Subgroup h = closure(g, {g.identity()});
  EXPECT_TRUE(h.is_trivial());
  EXPECT_EQ(h.order(), 1u);
}

TEST(Subgroup, Gamma2Closure) {
  for (int n = 4; n <= 8; ++n) {
    const PcGroup g = build_group(P(n, 1, 2));
    const auto gens = gamma2_gens(g);
    EXPECT_EQ(closure(g, gens).order(), static_cast<std::uint64_t>(std::pow(5, n - 2)));
  }
}

TEST(Subgroup, ClosureMatchesBfs) {
  const PcGroup g = build_group(P(5, 0, 0));
  auto gens = gamma2_gens(g);
  gens.push_back(g.y());
  const Subgroup h = closure(g, gens);
  EXPECT_EQ(h.order(), 625u);
  EXPECT_EQ(codes(g, h), oracle::bfs_closure(g, gens));

  std::mt19937_64 rng(5);
  for (const auto& p : {P(5, 1, 3, {2}), P(6, 0, 1, {1, 3}), P(6, 2, 2)}) {
    const PcGroup G = build_group(p);
    std::uniform_int_distribution<std::uint32_t> d(0, static_cast<std::uint32_t>(G.order() - 1));
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<Element> some;
      const int count = 1 + trial % 3;
      for (int i = 0; i < count; ++i) {
        Element u = Element::from_code(p.n, d(rng));
        // Keep most trials inside gamma_2 or H_1 so the subgroups are proper.
        if (trial % 4 != 0) u.set(0, 0);
        if (trial % 2 == 0) u.set(1, 0);
        some.push_back(u);
      }
      const Subgroup h2 = closure(G, some);
      EXPECT_EQ(codes(G, h2), oracle::bfs_closure(G, some)) << to_string(p);
    }
  }
}

TEST(Subgroup, CanonicalFormIsUnique) {
  const PcGroup g = build_group(P(6, 0, 0, {1}));
  const Subgroup a = closure(g, {g.y(), g.s(2), g.s(3), g.s(4)});
  const Subgroup b = closure(g, {g.multiply(g.y(), g.s(3)),
                                 g.multiply(g.power(g.s(2), 3), g.s(4)),
                                 g.multiply(g.s(3), g.power(g.s(4), 2)), g.s(4)});
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < a.pcgs().size(); ++i) {
    const Element& h = a.pcgs()[i];
    EXPECT_EQ(h[h.depth()], 1);
    for (std::size_t j = 0; j < a.pcgs().size(); ++j) {
      if (i != j) {
        EXPECT_EQ(a.pcgs()[j][h.depth()], 0);
      }
    }
  }
}

TEST(Subgroup, ReduceGivesLexLeastCosetElement) {
  const PcGroup g = build_group(P(5, 2, 1, {3}));
  const Subgroup h = closure(g, {g.multiply(g.x(), g.y()), g.s(3)});
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint32_t> d(0, 3124);
  const auto elems = h.elements(g);
  for (int i = 0; i < 50; ++i) {
    const Element u = Element::from_code(5, d(rng));
    Element least = g.multiply(u, elems.front());
    for (const auto& e : elems) least = std::min(least, g.multiply(u, e));
    EXPECT_EQ(h.reduce(g, u), least);
  }
}

TEST(Subgroup, ExponentsRoundTrip) {
  const PcGroup g = build_group(P(7, 0, 0, {2}));
  const Subgroup h = closure(g, {g.y(), g.s(2)});
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Element u = h.random_element(g, rng);
    const auto e = h.exponents(g, u);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(h.element_from_exponents(g, *e), u);
  }
  EXPECT_FALSE(h.exponents(g, g.x()).has_value());
}

TEST(Subgroup, NormalClosureAndCommutators) {
  const PcGroup g = build_group(P(6, 0, 0));
  const Subgroup n = normal_closure_in_group(g, std::vector<Element>{g.s(3)});
  EXPECT_EQ(n.order(), 125u);  // gamma_3
  const Subgroup whole = whole_group(g);
  EXPECT_EQ(commutator_subgroup(g, whole, whole).order(), 625u);
  EXPECT_TRUE(is_normalized_by(g, n, group_generators(g)));
  const Subgroup cyc = closure(g, {g.y()});
  EXPECT_FALSE(is_normalized_by(g, cyc, group_generators(g)));
}

TEST(Subgroup, EnumerationGuard) {
  const PcGroup g = build_group(P(12, 0, 0));
  EXPECT_THROW(whole_group(g).elements(g), SizeGuard);
}
