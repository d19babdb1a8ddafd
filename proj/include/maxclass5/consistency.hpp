#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "maxclass5/element.hpp"
#include "maxclass5/errors.hpp"
#include "maxclass5/pc_group.hpp"

namespace maxclass5 {

enum class CheckMode { exhaustive, sampled };

inline constexpr std::uint64_t kDefaultSamples = 100000;

/// Largest n for which the exhaustive associativity check runs.
inline constexpr int kMaxExhaustiveN = 4;

/// Largest n for which the generated subgroup of {x, y} is enumerated.
inline constexpr int kMaxClosureN = 9;

struct AssociativityWitness {
  Element u, v, w;
  Element left;   // (uv)w
  Element right;  // u(vw)
};

struct ConsistencyReport {
  CheckMode mode = CheckMode::sampled;
  std::uint64_t triples_checked = 0;
  std::optional<AssociativityWitness> witness;
  bool closure_checked = false;
  std::uint64_t closure_size = 0;
  bool closure_ok = true;
  std::vector<RelationCheck> relations;

  bool passed() const {
    if (witness || !closure_ok) return false;
    for (const auto& r : relations) {
      if (!r.holds) return false;
    }
    return true;
  }

  /// First failure, verbatim, or empty.
  std::string failure() const {
    if (witness) {
      return "associativity fails for u=" + witness->u.to_string() +
             " v=" + witness->v.to_string() + " w=" + witness->w.to_string() +
             ": (uv)w=" + witness->left.to_string() +
             " u(vw)=" + witness->right.to_string();
    }
    for (const auto& r : relations) {
      if (!r.holds) return r.name + (r.detail.empty() ? "" : ": " + r.detail);
    }
    if (!closure_ok) {
      return "x and y generate only " + std::to_string(closure_size) + " elements";
    }
    return "";
  }
};

namespace detail {

inline bool check_triple(const PcGroup& g, const Element& u, const Element& v,
                         const Element& w, ConsistencyReport& report) {
  ++report.triples_checked;
  const Element left = g.multiply(g.multiply(u, v), w);
  const Element right = g.multiply(u, g.multiply(v, w));
  if (left == right) return true;
  report.witness = AssociativityWitness{u, v, w, left, right};
  return false;
}

inline void exhaustive_associativity(const PcGroup& g, ConsistencyReport& report) {
  const auto size = static_cast<std::uint32_t>(g.order());
  std::vector<Element> elems;
  elems.reserve(size);
  for (std::uint32_t c = 0; c < size; ++c) elems.push_back(Element::from_code(g.n(), c));
  std::vector<std::uint32_t> table(std::size_t{size} * size);
  for (std::uint32_t a = 0; a < size; ++a) {
    for (std::uint32_t b = 0; b < size; ++b) {
      table[std::size_t{a} * size + b] = g.multiply(elems[a], elems[b]).code();
    }
  }
  auto mul = [&](std::uint32_t a, std::uint32_t b) { return table[std::size_t{a} * size + b]; };
  for (std::uint32_t a = 0; a < size; ++a) {
    for (std::uint32_t b = 0; b < size; ++b) {
      const std::uint32_t ab = mul(a, b);
      for (std::uint32_t c = 0; c < size; ++c) {
        if (mul(ab, c) != mul(a, mul(b, c))) {
          report.triples_checked += c + 1;
          check_triple(g, elems[a], elems[b], elems[c], report);
          return;
        }
      }
      report.triples_checked += size;
    }
  }
}

inline bool generator_power_triples(const PcGroup& g, ConsistencyReport& report) {
  std::vector<Element> powers;
  for (int i = 0; i < g.n(); ++i) {
    for (int e = 1; e < kPrime; ++e) powers.push_back(g.power(g.generator(i), e));
  }
  for (const Element& u : powers) {
    for (const Element& v : powers) {
      for (const Element& w : powers) {
        if (!check_triple(g, u, v, w, report)) return false;
      }
    }
  }
  return true;
}

inline void sampled_associativity(const PcGroup& g, std::uint64_t samples,
                                  std::uint64_t seed, ConsistencyReport& report) {
  if (!generator_power_triples(g, report)) return;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> code(
      0, static_cast<std::uint32_t>(g.order() - 1));
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Element u = Element::from_code(g.n(), code(rng));
    const Element v = Element::from_code(g.n(), code(rng));
    const Element w = Element::from_code(g.n(), code(rng));
    if (!check_triple(g, u, v, w, report)) return;
  }
}

/// Size of the subgroup generated by x and y, by breadth-first search.
inline std::uint64_t generated_size(const PcGroup& g) {
  std::vector<bool> seen(g.order(), false);
  std::vector<Element> frontier{g.identity()};
  seen[0] = true;
  std::uint64_t count = 1;
  const Element gens[] = {g.x(), g.y()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const Element& u : frontier) {
      for (const Element& s : gens) {
        const Element v = g.multiply(u, s);
        if (!seen[v.code()]) {
          seen[v.code()] = true;
          ++count;
          next.push_back(v);
        }
      }
    }
    frontier = std::move(next);
  }
  return count;
}

}  // namespace detail

/// Checks that the presentation behind `g` is consistent.
///
/// Exhaustive mode compares (uv)w with u(vw) on all triples and is limited
/// to n <= 4. Sampled mode covers every triple of generator powers plus
/// `samples` random triples. Both re-evaluate the defining relations and,
/// for n <= 9, confirm that x and y generate all 5^n normal forms.
inline ConsistencyReport consistency_check(const PcGroup& g, CheckMode mode,
                                           std::uint64_t samples = kDefaultSamples,
                                           std::uint64_t seed = 0) {
  ConsistencyReport report;
  report.mode = mode;
  report.relations = verify_presentation(g);
  if (mode == CheckMode::exhaustive) {
    if (g.n() > kMaxExhaustiveN) {
      throw SizeGuard("exhaustive associativity needs n <= " +
                      std::to_string(kMaxExhaustiveN));
    }
    detail::exhaustive_associativity(g, report);
  } else {
    detail::sampled_associativity(g, samples, seed, report);
  }
  if (g.n() <= kMaxClosureN) {
    report.closure_checked = true;
    report.closure_size = detail::generated_size(g);
    report.closure_ok = report.closure_size == g.order();
  }
  return report;
}

/// Exhaustive where allowed, sampled otherwise.
inline CheckMode default_mode(const PcGroup& g) {
  return g.n() <= kMaxExhaustiveN ? CheckMode::exhaustive : CheckMode::sampled;
}

}  // namespace maxclass5
