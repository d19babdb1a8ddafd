#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "maxclass5/element.hpp"
#include "maxclass5/errors.hpp"
#include "maxclass5/pc_group.hpp"

namespace maxclass5 {

/// Largest subgroup order `Subgroup::elements` will enumerate.
inline constexpr std::uint64_t kMaxEnumeratedOrder = 9765625;  // 5^10

/// A subgroup of a PcGroup, held as a canonical induced pc sequence.
///
/// The sequence has strictly increasing depths and leading exponents 1, and
/// every element has exponent 0 at the depths of the others. Two subgroups
/// are equal iff their sequences are equal. Every element of the subgroup is
/// a unique product h_1^{e_1} ... h_r^{e_r} over the sequence.
class Subgroup {
 public:
  Subgroup() = default;

  int n() const noexcept { return n_; }
  const std::vector<Element>& generators() const noexcept { return generators_; }
  const std::vector<Element>& pcgs() const noexcept { return pcgs_; }
  int rank() const noexcept { return static_cast<int>(pcgs_.size()); }
  bool is_trivial() const noexcept { return pcgs_.empty(); }

  std::uint64_t order() const noexcept {
    std::uint64_t o = 1;
    for (int i = 0; i < rank(); ++i) o *= kPrime;
    return o;
  }

  /// Whether some sequence element has leading position `depth`.
  bool has_pivot(int depth) const noexcept {
    return depth >= 0 && depth < kMaxOrderExponent && slot_[depth] >= 0;
  }

  /// Least d such that every position d..n-1 is a pivot, so that H
  /// contains all elements of depth >= d.
  int tail_depth() const noexcept { return tail_; }

  /// The lexicographically least element of the left coset u H.
  Element reduce(const PcGroup& g, Element u) const {
    for (std::size_t i = 0; i < pcgs_.size(); ++i) {
      const int d = pcgs_[i].depth();
      if (d >= tail_) break;
      const int e = u[d];
      if (e) u = g.multiply(u, neg_powers_[i][e]);
    }
    // Whatever sits at depth >= tail is absorbed by H.
    for (int j = tail_; j < n_; ++j) u.set_reduced(j, 0);
    return u;
  }

  bool contains(const PcGroup& g, const Element& u) const {
    return reduce(g, u).is_identity();
  }

  bool is_subgroup_of(const PcGroup& g, const Subgroup& other) const {
    return std::all_of(pcgs_.begin(), pcgs_.end(),
                       [&](const Element& h) { return other.contains(g, h); });
  }

  /// Exponents e with u = h_1^{e_1} ... h_r^{e_r}, or nullopt if u is not
  /// in the subgroup. Sifts from the left to match that product order.
  std::optional<std::vector<int>> exponents(const PcGroup& g, Element u) const {
    std::vector<int> exps(pcgs_.size(), 0);
    for (std::size_t i = 0; i < pcgs_.size(); ++i) {
      const int d = pcgs_[i].depth();
      if (u.depth() < d) return std::nullopt;
      const int e = u[d];
      exps[i] = e;
      if (e) u = g.multiply(neg_powers_[i][e], u);
    }
    if (!u.is_identity()) return std::nullopt;
    return exps;
  }

  /// h_1^{e_1} ... h_r^{e_r}.
  Element element_from_exponents(const PcGroup& g,
                                 std::span<const int> exps) const {
    Element u = g.identity();
    for (std::size_t i = 0; i < pcgs_.size(); ++i) {
      if (exps[i]) u = g.multiply(u, g.power(pcgs_[i], exps[i]));
    }
    return u;
  }

  template <class Rng>
  Element random_element(const PcGroup& g, Rng& rng) const {
    std::uniform_int_distribution<int> digit(0, kPrime - 1);
    std::vector<int> exps(pcgs_.size());
    for (int& e : exps) e = digit(rng);
    return element_from_exponents(g, exps);
  }

  /// All elements, sorted.
  std::vector<Element> elements(const PcGroup& g) const {
    if (order() > kMaxEnumeratedOrder) {
      throw SizeGuard("refusing to enumerate a subgroup of order " +
                      std::to_string(order()));
    }
    std::vector<Element> out{g.identity()};
    out.reserve(order());
    for (auto it = pcgs_.rbegin(); it != pcgs_.rend(); ++it) {
      const std::size_t size = out.size();
      Element p = *it;
      for (int e = 1; e < kPrime; ++e) {
        for (std::size_t i = 0; i < size; ++i) out.push_back(g.multiply(p, out[i]));
        p = g.multiply(p, *it);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.n_ == b.n_ && a.pcgs_ == b.pcgs_;
  }

 private:
  friend Subgroup make_subgroup(const PcGroup&, std::vector<Element>,
                                std::vector<Element>);

  int n_ = 0;
  int tail_ = 0;
  std::vector<Element> generators_;
  std::vector<Element> pcgs_;
  std::vector<std::array<Element, kPrime>> neg_powers_;  // [i][e] = h_i^{-e}
  std::array<int, kMaxOrderExponent> slot_ = [] {
    std::array<int, kMaxOrderExponent> s{};
    s.fill(-1);
    return s;
  }();
};

namespace detail {

inline std::array<Element, kPrime> negative_powers(const PcGroup& g,
                                                   const Element& h) {
  std::array<Element, kPrime> out;
  out[0] = g.identity();
  const Element inv = g.inverse(h);
  for (int e = 1; e < kPrime; ++e) out[e] = g.multiply(out[e - 1], inv);
  return out;
}

constexpr int inverse_mod5(int v) {
  for (int i = 1; i < kPrime; ++i) {
    if ((v * i) % kPrime == 1) return i;
  }
  return 0;
}

/// Incremental induced-sequence builder indexed by depth.
class PcgsBuilder {
 public:
  explicit PcgsBuilder(const PcGroup& g) : g_(g) {}

  /// Divides u by sequence elements until its leading position has no
  /// pivot; the identity means u is already generated.
  Element sift(Element u) const {
    while (!u.is_identity()) {
      const int d = u.depth();
      if (!at_[d]) return u;
      u = g_.multiply(u, neg_[d][u[d]]);
    }
    return u;
  }

  /// Inserts a sifted, nontrivial remainder scaled to leading exponent 1.
  Element insert(const Element& remainder) {
    const int d = remainder.depth();
    Element h = g_.power(remainder, inverse_mod5(remainder[d]));
    at_[d] = h;
    neg_[d] = negative_powers(g_, h);
    return h;
  }

  /// The sequence in increasing depth, reduced to canonical form.
  std::vector<Element> canonical() const {
    std::vector<int> depths;
    for (int d = 0; d < kMaxOrderExponent; ++d) {
      if (at_[d]) depths.push_back(d);
    }
    std::vector<Element> out;
    for (int d : depths) {
      Element h = *at_[d];
      for (int d2 : depths) {
        if (d2 <= d) continue;
        const int e = h[d2];
        if (e) h = g_.multiply(h, neg_[d2][e]);
      }
      out.push_back(h);
    }
    return out;
  }

 private:
  const PcGroup& g_;
  std::array<std::optional<Element>, kMaxOrderExponent> at_{};
  std::array<std::array<Element, kPrime>, kMaxOrderExponent> neg_{};
};

}  // namespace detail

/// Wraps an already-canonical sequence.
inline Subgroup make_subgroup(const PcGroup& g, std::vector<Element> generators,
                              std::vector<Element> canonical_pcgs) {
  Subgroup h;
  h.n_ = g.n();
  h.generators_ = std::move(generators);
  h.pcgs_ = std::move(canonical_pcgs);
  for (std::size_t i = 0; i < h.pcgs_.size(); ++i) {
    h.slot_[h.pcgs_[i].depth()] = static_cast<int>(i);
    h.neg_powers_.push_back(detail::negative_powers(g, h.pcgs_[i]));
  }
  h.tail_ = h.n_;
  while (h.tail_ > 0 && h.slot_[h.tail_ - 1] >= 0) --h.tail_;
  return h;
}

/// Smallest subgroup containing `gens` and closed under conjugation by
/// every element of `conjugators`.
///
/// A sequence is closed once all fifth powers and pairwise commutators of
/// its elements sift to the identity; conjugates are fed through the same
/// queue.
inline Subgroup normal_closure(const PcGroup& g, std::span<const Element> gens,
                               std::span<const Element> conjugators) {
  detail::PcgsBuilder builder(g);
  std::vector<Element> members;
  std::deque<Element> queue(gens.begin(), gens.end());
  while (!queue.empty()) {
    const Element r = builder.sift(queue.front());
    queue.pop_front();
    if (r.is_identity()) continue;
    const Element h = builder.insert(r);
    queue.push_back(g.power(h, kPrime));
    for (const Element& m : members) queue.push_back(g.commutator(h, m));
    for (const Element& c : conjugators) queue.push_back(g.conjugate(h, c));
    members.push_back(h);
  }
  return make_subgroup(g, std::vector<Element>(gens.begin(), gens.end()),
                       builder.canonical());
}

/// Smallest subgroup containing `gens`.
inline Subgroup closure(const PcGroup& g, std::span<const Element> gens) {
  return normal_closure(g, gens, {});
}

inline Subgroup closure(const PcGroup& g, std::initializer_list<Element> gens) {
  return closure(g, std::span<const Element>(gens.begin(), gens.size()));
}

inline Subgroup trivial_subgroup(const PcGroup& g) {
  return make_subgroup(g, {}, {});
}

inline Subgroup whole_group(const PcGroup& g) {
  std::vector<Element> gens;
  for (int i = 0; i < g.n(); ++i) gens.push_back(g.generator(i));
  return make_subgroup(g, {g.x(), g.y()}, gens);
}

/// Generators of G as a group: x and y.
inline std::vector<Element> group_generators(const PcGroup& g) {
  return {g.x(), g.y()};
}

inline Subgroup normal_closure_in_group(const PcGroup& g,
                                        std::span<const Element> gens) {
  const auto conj = group_generators(g);
  return normal_closure(g, gens, conj);
}

/// [A, B] for subgroups A, B normalized by the group generated by
/// `ambient`, as the normal closure of the generator commutators.
inline Subgroup commutator_subgroup(const PcGroup& g, const Subgroup& a,
                                    const Subgroup& b,
                                    std::span<const Element> ambient) {
  std::vector<Element> comms;
  for (const Element& u : a.pcgs()) {
    for (const Element& v : b.pcgs()) comms.push_back(g.commutator(u, v));
  }
  return normal_closure(g, comms, ambient);
}

/// [A, B] for normal subgroups A, B of G.
inline Subgroup commutator_subgroup(const PcGroup& g, const Subgroup& a,
                                    const Subgroup& b) {
  const auto conj = group_generators(g);
  return commutator_subgroup(g, a, b, conj);
}

/// Whether N is normalized by every element of `ambient`.
inline bool is_normalized_by(const PcGroup& g, const Subgroup& n,
                             std::span<const Element> ambient) {
  for (const Element& h : n.pcgs()) {
    for (const Element& c : ambient) {
      if (!n.contains(g, g.conjugate(h, c))) return false;
    }
  }
  return true;
}

/// Leading depths of the sequence elements of `h` that are not pivots of the
/// normal subgroup `n`; they index a pc sequence of H/N.
inline std::vector<Element> factor_pcgs(const Subgroup& h, const Subgroup& n) {
  std::vector<Element> out;
  for (const Element& e : h.pcgs()) {
    if (!n.has_pivot(e.depth())) out.push_back(e);
  }
  return out;
}

/// The induced sequence of H built from N's sequence plus the factor
/// elements of H/N, so that exponents at factor positions are coordinates
/// in H/N.
inline Subgroup relative_sequence(const PcGroup& g, const Subgroup& h,
                                  const Subgroup& n) {
  std::vector<Element> seq = n.pcgs();
  for (const Element& e : factor_pcgs(h, n)) seq.push_back(e);
  std::sort(seq.begin(), seq.end(), [](const Element& a, const Element& b) {
    return a.depth() < b.depth();
  });
  // Not reduced on purpose: the N part must stay inside N.
  return make_subgroup(g, h.generators(), std::move(seq));
}

}  // namespace maxclass5
