#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <vector>

#include "maxclass5/errors.hpp"
#include "maxclass5/pc_group.hpp"
#include "maxclass5/structure.hpp"
#include "maxclass5/subgroup.hpp"

namespace maxclass5 {

/// Transfer V from `source` to a normal subgroup `target` of index 5,
/// recorded by the images of the source generators modulo the derived
/// subgroup of the target.
struct TransferMap {
  Subgroup source;
  Subgroup target;
  Subgroup target_derived;
  std::vector<Element> reps;
  std::vector<Element> generators;
  std::vector<Element> images;
  bool trivial = true;
};

namespace detail {

inline void require_normal_index5(const PcGroup& g, const Subgroup& source,
                                  const Subgroup& target) {
  if (!target.is_subgroup_of(g, source)) {
    throw IndexError("target is not contained in the source");
  }
  if (!is_normalized_by(g, target, source.pcgs())) {
    throw IndexError("target is not normal in the source");
  }
  if (source.order() != target.order() * kPrime) {
    throw UnsupportedQuotient("only transfers with a cyclic quotient of order 5 "
                              "are supported; index is " +
                              std::to_string(source.order() / target.order()));
  }
}

}  // namespace detail

/// One representative per coset of N in H, each the lexicographically least
/// element of its coset, sorted.
inline std::vector<Element> coset_reps(const PcGroup& g, const Subgroup& source,
                                       const Subgroup& n) {
  if (!n.is_subgroup_of(g, source)) {
    throw IndexError("subgroup is not contained in the source");
  }
  if (!is_normalized_by(g, n, source.pcgs())) {
    throw IndexError("subgroup is not normal in the source");
  }
  const std::vector<Element> factor = factor_pcgs(source, n);
  if (factor.size() > 4) throw SizeGuard("index above 5^4");
  std::vector<Element> reps{g.identity()};
  for (auto it = factor.rbegin(); it != factor.rend(); ++it) {
    const std::size_t size = reps.size();
    Element p = *it;
    for (int e = 1; e < kPrime; ++e) {
      for (std::size_t i = 0; i < size; ++i) reps.push_back(g.multiply(p, reps[i]));
      p = g.multiply(p, *it);
    }
  }
  for (Element& r : reps) r = n.reduce(g, r);
  std::sort(reps.begin(), reps.end());
  return reps;
}

/// V(u) for u in the source, straight from the definition with the given
/// representative system.
///
/// With index 5, either u lies in the target (f = 1, five conjugates) or
/// its coset generates the quotient (f = 5, a single conjugated fifth power).
inline Element transfer_element(const PcGroup& g, const Subgroup& target,
                                const Subgroup& target_derived,
                                const std::vector<Element>& reps,
                                const Element& u) {
  Element v = g.identity();
  if (target.contains(g, u)) {
    for (const Element& t : reps) v = g.multiply(v, g.conjugate(u, t));
  } else {
    v = g.conjugate(g.power(u, kPrime), reps.front());
  }
  return target_derived.reduce(g, v);
}

inline Element apply(const PcGroup& g, const TransferMap& t, const Element& u) {
  if (!t.source.contains(g, u)) throw IndexError("element outside the source");
  return transfer_element(g, t.target, t.target_derived, t.reps, u);
}

namespace detail {

inline TransferMap finish(TransferMap t) {
  t.trivial = std::all_of(t.images.begin(), t.images.end(),
                          [](const Element& e) { return e.is_identity(); });
  return t;
}

}  // namespace detail

/// Transfer from `source` to `target` by the coset definition, with the
/// canonical representative system.
inline TransferMap transfer_general(const PcGroup& g, const Subgroup& source,
                                    const Subgroup& target) {
  detail::require_normal_index5(g, source, target);
  TransferMap t;
  t.source = source;
  t.target = target;
  t.target_derived = derived_subgroup(g, target);
  t.reps = coset_reps(g, source, target);
  t.generators = source.generators();
  for (const Element& u : t.generators) {
    t.images.push_back(transfer_element(g, target, t.target_derived, t.reps, u));
  }
  return detail::finish(std::move(t));
}

/// As transfer_general, but every representative is replaced by a random
/// element of its coset (and the single representative used for fifth
/// powers by a random element of the source).
template <class Rng>
TransferMap transfer_general(const PcGroup& g, const Subgroup& source,
                             const Subgroup& target, Rng& rng) {
  TransferMap t = transfer_general(g, source, target);
  std::vector<Element> reps = t.reps;
  for (Element& r : reps) r = g.multiply(r, target.random_element(g, rng));
  std::shuffle(reps.begin(), reps.end(), rng);
  t.images.clear();
  for (const Element& u : t.generators) {
    Element v = g.identity();
    if (target.contains(g, u)) {
      for (const Element& r : reps) v = g.multiply(v, g.conjugate(u, r));
    } else {
      const Element r = source.random_element(g, rng);
      v = g.conjugate(g.power(u, kPrime), r);
    }
    t.images.push_back(t.target_derived.reduce(g, v));
  }
  return detail::finish(std::move(t));
}

/// Transfer for source = <h, target>: V(h) = h^5 and
/// V(u) = u^{1+h+...+h^4} for u in the target.
inline TransferMap transfer_cyclic(const PcGroup& g, const Subgroup& source,
                                   const Subgroup& target, const Element& h) {
  if (target.contains(g, h)) throw BadGenerator("h lies in the target subgroup");
  if (!source.contains(g, h)) throw BadGenerator("h lies outside the source");
  detail::require_normal_index5(g, source, target);
  TransferMap t;
  t.source = source;
  t.target = target;
  t.target_derived = derived_subgroup(g, target);
  t.reps = coset_reps(g, source, target);
  t.generators = source.generators();
  for (const Element& u : t.generators) {
    Element v = g.identity();
    if (target.contains(g, u)) {
      Element hi = g.identity();
      for (int i = 0; i < kPrime; ++i) {
        v = g.multiply(v, g.conjugate(u, hi));
        hi = g.multiply(hi, h);
      }
    } else {
      // u = h^m c with c in the target; V(u) = V(h)^m V(c).
      int m = 1;
      Element hm = h;
      while (!target.contains(g, g.multiply(g.inverse(hm), u))) {
        hm = g.multiply(hm, h);
        ++m;
      }
      const Element c = g.multiply(g.inverse(hm), u);
      v = g.power(g.power(h, kPrime), m);
      Element hi = g.identity();
      for (int i = 0; i < kPrime; ++i) {
        v = g.multiply(v, g.conjugate(c, hi));
        hi = g.multiply(hi, h);
      }
    }
    t.images.push_back(t.target_derived.reduce(g, v));
  }
  return detail::finish(std::move(t));
}

inline bool is_trivial(const TransferMap& t) noexcept { return t.trivial; }

struct KernelImage {
  /// Preimage of the kernel in the source; contains the source's derived
  /// subgroup.
  Subgroup kernel;
  /// Image as a subgroup of the target containing its derived subgroup.
  Subgroup image;
};

/// Kernel and image of V on the abelianized source, by walking the
/// quotient source / derived(source).
inline KernelImage transfer_kernel_image(const PcGroup& g, const TransferMap& t) {
  const Subgroup source_derived = derived_subgroup(g, t.source);
  const std::vector<Element> factor = factor_pcgs(t.source, source_derived);
  if (factor.size() > 10) throw SizeGuard("abelianized source above 5^10");
  std::vector<Element> kernel_gens = source_derived.pcgs();
  std::vector<Element> quotient{g.identity()};
  for (auto it = factor.rbegin(); it != factor.rend(); ++it) {
    const std::size_t size = quotient.size();
    Element p = *it;
    for (int e = 1; e < kPrime; ++e) {
      for (std::size_t i = 0; i < size; ++i) quotient.push_back(g.multiply(p, quotient[i]));
      p = g.multiply(p, *it);
    }
  }
  for (const Element& u : quotient) {
    if (apply(g, t, u).is_identity()) kernel_gens.push_back(u);
  }
  std::vector<Element> image_gens = t.target_derived.pcgs();
  image_gens.insert(image_gens.end(), t.images.begin(), t.images.end());
  return {closure(g, kernel_gens), closure(g, image_gens)};
}

/// V_{H_i -> gamma_2} for the six maximal subgroups, H_i generated by its
/// defining element and gamma_2.
inline std::array<TransferMap, 6> maximal_transfers(const PcGroup& g,
                                                    const GroupAnalysis& a) {
  std::array<TransferMap, 6> out;
  for (int i = 0; i < 6; ++i) {
    out[i] = transfer_general(g, a.maximals[i], a.series.gamma(2));
  }
  return out;
}

/// Triviality of V_{H_i -> gamma_2} for i = 1..6.
using TransferFingerprint = std::array<bool, 6>;

inline TransferFingerprint fingerprint(const std::array<TransferMap, 6>& maps) {
  TransferFingerprint f{};
  for (int i = 0; i < 6; ++i) f[i] = maps[i].trivial;
  return f;
}

inline TransferFingerprint fingerprint(const PcGroup& g, const GroupAnalysis& a) {
  return fingerprint(maximal_transfers(g, a));
}

/// "011111"-style rendering, H_1 first.
inline std::string to_string(const TransferFingerprint& f) {
  std::string s;
  for (bool b : f) s += b ? '1' : '0';
  return s;
}

}  // namespace maxclass5
