#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "maxclass5/errors.hpp"
#include "maxclass5/pc_group.hpp"
#include "maxclass5/structure.hpp"
#include "maxclass5/subgroup.hpp"

namespace maxclass5 {

/// Largest n accepted by the brute-force isomorphism search.
inline constexpr int kMaxBruteForceN = 5;

/// Images of the pc generators of `domain` under x -> gx, y -> gy, with
/// s_2 -> [gy, gx] and s_j -> [s_{j-1}, gx]; nullopt if they do not satisfy
/// the pc presentation of `domain`.
///
/// By von Dyck's theorem a match defines a homomorphism domain -> codomain.
inline std::optional<std::vector<Element>> homomorphism_images(
    const PcGroup& domain, const PcGroup& codomain, const Element& gx,
    const Element& gy) {
  const int n = domain.n();
  std::vector<Element> img(n, codomain.identity());
  img[0] = gx;
  if (n > 1) img[1] = gy;
  if (n > 2) img[2] = codomain.commutator(gy, gx);
  for (int j = 3; j < n; ++j) img[j] = codomain.commutator(img[j - 1], gx);
  // s_n = 1.
  if (n > 2 && !codomain.commutator(img[n - 1], gx).is_identity()) return std::nullopt;

  auto map = [&](const Element& u) {
    Element v = codomain.identity();
    for (int i = 0; i < n; ++i) {
      if (u[i]) v = codomain.multiply(v, codomain.power(img[i], u[i]));
    }
    return v;
  };
  for (int i = 0; i < n; ++i) {
    if (codomain.power(img[i], kPrime) != map(domain.power(domain.generator(i), kPrime))) {
      return std::nullopt;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Element lhs = codomain.conjugate(img[j], img[i]);
      const Element rhs = map(domain.conjugate(domain.generator(j), domain.generator(i)));
      if (lhs != rhs) return std::nullopt;
    }
  }
  return img;
}

/// phi(u) for the homomorphism given by generator images.
inline Element apply_images(const PcGroup& codomain,
                            const std::vector<Element>& images,
                            const Element& u) {
  Element v = codomain.identity();
  for (int i = 0; i < u.size(); ++i) {
    if (u[i]) v = codomain.multiply(v, codomain.power(images[i], u[i]));
  }
  return v;
}

/// Confirms by enumeration that the images define a bijective
/// homomorphism: phi(u s) = phi(u) phi(s) for every u and pc generator s.
inline bool verify_isomorphism(const PcGroup& domain, const PcGroup& codomain,
                               const std::vector<Element>& images) {
  std::vector<bool> hit(codomain.order(), false);
  for (std::uint32_t c = 0; c < domain.order(); ++c) {
    const Element u = Element::from_code(domain.n(), c);
    const Element pu = apply_images(codomain, images, u);
    if (hit[pu.code()]) return false;
    hit[pu.code()] = true;
    for (int i = 0; i < domain.n(); ++i) {
      const Element lhs = apply_images(codomain, images,
                                       domain.multiply(u, domain.generator(i)));
      if (lhs != codomain.multiply(pu, images[i])) return false;
    }
  }
  return true;
}

struct IsomorphismResult {
  bool isomorphic = false;
  /// Images of x and y in the second group.
  std::optional<std::pair<Element, Element>> witness;
  std::uint64_t pairs_tried = 0;
};

/// Candidate images for (x, y): g outside chi_2 and h in chi_2 \ gamma_2.
/// Any isomorphism maps chi_2 onto chi_2, so this loses nothing.
inline std::pair<std::vector<Element>, std::vector<Element>> standard_candidates(
    const PcGroup& g, const GroupAnalysis& a) {
  std::vector<Element> xs, ys;
  const Subgroup& gamma2 = a.series.gamma(2);
  for (std::uint32_t c = 0; c < g.order(); ++c) {
    const Element u = Element::from_code(g.n(), c);
    if (!a.chi2.contains(g, u)) {
      xs.push_back(u);
    } else if (!gamma2.contains(g, u)) {
      ys.push_back(u);
    }
  }
  return {std::move(xs), std::move(ys)};
}

/// Exhaustive search for an isomorphism G1 -> G2 over all standard pairs of
/// G2. `seed` shuffles the search order; the verdict must not depend on it.
inline IsomorphismResult brute_force_isomorphic(
    const PcGroup& g1, const PcGroup& g2,
    std::optional<std::uint64_t> seed = std::nullopt) {
  if (g1.n() > kMaxBruteForceN || g2.n() > kMaxBruteForceN) {
    throw SizeGuard("brute-force isomorphism needs n <= " +
                    std::to_string(kMaxBruteForceN));
  }
  IsomorphismResult result;
  if (g1.n() != g2.n()) return result;
  auto [xs, ys] = standard_candidates(g2, analyze(g2));
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::shuffle(xs.begin(), xs.end(), rng);
    std::shuffle(ys.begin(), ys.end(), rng);
  }
  for (const Element& gx : xs) {
    for (const Element& gy : ys) {
      ++result.pairs_tried;
      const auto images = homomorphism_images(g1, g2, gx, gy);
      if (!images) continue;
      // Images generate G2 modulo its Frattini subgroup, so the map is onto;
      // the enumeration double-checks it.
      if (!verify_isomorphism(g1, g2, *images)) continue;
      result.isomorphic = true;
      result.witness = std::make_pair(gx, gy);
      return result;
    }
  }
  return result;
}

}  // namespace maxclass5
