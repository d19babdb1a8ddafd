#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "maxclass5/errors.hpp"
#include "maxclass5/pc_group.hpp"
#include "maxclass5/subgroup.hpp"

namespace maxclass5 {

/// gamma_1 = G, gamma_2, ..., ending with the trivial subgroup.
struct CentralSeries {
  std::vector<Subgroup> terms;

  int nilpotency_class() const noexcept {
    return static_cast<int>(terms.size()) - 1;
  }

  /// gamma_j for j >= 1; the trivial term past the end.
  const Subgroup& gamma(int j) const {
    if (j < 1) throw IndexError("gamma_j needs j >= 1");
    const std::size_t i = std::min<std::size_t>(j - 1, terms.size() - 1);
    return terms[i];
  }
};

/// Cyclic decomposition of a finite abelian 5-group, orders descending.
struct AbelianType {
  std::vector<std::uint64_t> orders;

  std::uint64_t order() const noexcept {
    return std::accumulate(orders.begin(), orders.end(), std::uint64_t{1},
                           std::multiplies<>());
  }

  int rank() const noexcept { return static_cast<int>(orders.size()); }

  /// "(25,5,5)"; the trivial group prints as "()".
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(orders[i]);
    }
    return s + ")";
  }

  friend bool operator==(const AbelianType&, const AbelianType&) = default;
};

inline Subgroup derived_subgroup(const PcGroup& g, const Subgroup& h) {
  return commutator_subgroup(g, h, h, h.pcgs());
}

inline Subgroup derived_subgroup(const PcGroup& g) {
  return derived_subgroup(g, whole_group(g));
}

inline CentralSeries lower_central_series(const PcGroup& g) {
  CentralSeries series;
  series.terms.push_back(whole_group(g));
  const Subgroup whole = series.terms.front();
  while (!series.terms.back().is_trivial()) {
    Subgroup next = commutator_subgroup(g, series.terms.back(), whole);
    if (next == series.terms.back()) {
      throw StructureError("lower central series stalls; group not nilpotent");
    }
    series.terms.push_back(std::move(next));
  }
  return series;
}

namespace detail {

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = a % m, r = m, old_s = 1, s = 0;
  if (old_r < 0) old_r += m;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return ((old_s % m) + m) % m;
}

inline int valuation5(std::int64_t v, int cap) {
  if (v == 0) return cap;
  int e = 0;
  while (v % kPrime == 0 && e < cap) {
    v /= kPrime;
    ++e;
  }
  return e;
}

}  // namespace detail

/// Invariant factors of Z^t / (row lattice of `rel`), assuming the quotient
/// has order dividing 5^t.
///
/// Works in Z/5^t, where the local Smith form is reached by pivoting on an
/// entry of least 5-adic valuation.
inline AbelianType smith_type(std::vector<std::vector<std::int64_t>> rel) {
  const int t = static_cast<int>(rel.size());
  std::int64_t modulus = 1;
  for (int i = 0; i < t; ++i) modulus *= kPrime;
  for (auto& row : rel) {
    for (auto& v : row) v = ((v % modulus) + modulus) % modulus;
  }
  AbelianType type;
  for (int s = 0; s < t; ++s) {
    int best = t + 1, bi = s, bj = s;
    for (int i = s; i < t; ++i) {
      for (int j = s; j < t; ++j) {
        const int v = detail::valuation5(rel[i][j], t);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    std::swap(rel[s], rel[bi]);
    for (auto& row : rel) std::swap(row[s], row[bj]);
    std::int64_t scale = 1;
    for (int e = 0; e < best; ++e) scale *= kPrime;
    if (best < t) {
      const std::int64_t unit_inv = detail::mod_inverse(rel[s][s] / scale, modulus);
      for (int i = s + 1; i < t; ++i) {
        const std::int64_t f = (rel[i][s] / scale) % modulus * unit_inv % modulus;
        if (!f) continue;
        for (int j = s; j < t; ++j) {
          rel[i][j] = ((rel[i][j] - f * rel[s][j]) % modulus + modulus) % modulus;
        }
      }
      for (int j = s + 1; j < t; ++j) {
        const std::int64_t f = (rel[s][j] / scale) % modulus * unit_inv % modulus;
        if (!f) continue;
        for (int i = s; i < t; ++i) {
          rel[i][j] = ((rel[i][j] - f * rel[i][s]) % modulus + modulus) % modulus;
        }
      }
    }
    if (best > 0) type.orders.push_back(static_cast<std::uint64_t>(scale));
  }
  std::sort(type.orders.rbegin(), type.orders.rend());
  return type;
}

/// Abelian invariants of H/N for a normal subgroup N of H with abelian
/// quotient, read from the fifth-power relations of a factor pc sequence.
inline AbelianType quotient_type(const PcGroup& g, const Subgroup& h,
                                 const Subgroup& n) {
  const Subgroup rel_seq = relative_sequence(g, h, n);
  std::vector<int> factor_slots;
  for (int i = 0; i < rel_seq.rank(); ++i) {
    if (!n.has_pivot(rel_seq.pcgs()[i].depth())) factor_slots.push_back(i);
  }
  const int t = static_cast<int>(factor_slots.size());
  std::vector<std::vector<std::int64_t>> rel(t, std::vector<std::int64_t>(t, 0));
  for (int r = 0; r < t; ++r) {
    const Element q5 = g.power(rel_seq.pcgs()[factor_slots[r]], kPrime);
    const auto exps = rel_seq.exponents(g, q5);
    if (!exps) throw StructureError("fifth power escapes the subgroup");
    for (int c = 0; c < t; ++c) rel[r][c] = -(*exps)[factor_slots[c]];
    rel[r][r] += kPrime;
  }
  return smith_type(std::move(rel));
}

/// Abelian type of H / gamma_2(H).
inline AbelianType abelian_type(const PcGroup& g, const Subgroup& h) {
  return quotient_type(g, h, derived_subgroup(g, h));
}

/// H_1 = <y, gamma_2>, H_i = <x y^{i-2}, gamma_2> for i = 2..6.
inline std::vector<Subgroup> maximal_subgroups(const PcGroup& g,
                                               const Subgroup& gamma2) {
  if (gamma2.order() * kPrime * kPrime != g.order()) {
    throw StructureError("G/gamma_2 has order " +
                         std::to_string(g.order() / gamma2.order()) +
                         ", expected 25");
  }
  std::vector<Subgroup> out;
  for (int i = 1; i <= 6; ++i) {
    const Element h = i == 1 ? g.y() : g.multiply(g.x(), g.power(g.y(), i - 2));
    std::vector<Element> gens{h};
    gens.insert(gens.end(), gamma2.pcgs().begin(), gamma2.pcgs().end());
    out.push_back(closure(g, gens));
    if (out.back().order() * kPrime != g.order()) {
      throw StructureError("H_" + std::to_string(i) + " is not of index 5");
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (out[i] == out[j]) throw StructureError("maximal subgroups coincide");
    }
  }
  return out;
}

inline std::vector<Subgroup> maximal_subgroups(const PcGroup& g) {
  return maximal_subgroups(g, derived_subgroup(g));
}

/// chi_2(G) = {g : [g, u] in gamma_4 for all u in gamma_2}.
///
/// Scans the 25 coset representatives x^a y^b, which suffices because
/// gamma_2 is abelian and gamma_4 is normal.
inline Subgroup two_step_centralizer(const PcGroup& g,
                                     const CentralSeries& series) {
  const Subgroup& gamma2 = series.gamma(2);
  const Subgroup& gamma4 = series.gamma(4);
  std::vector<Element> gens = gamma2.pcgs();
  for (int a = 0; a < kPrime; ++a) {
    for (int b = 0; b < kPrime; ++b) {
      const Element r = g.multiply(g.power(g.x(), a), g.power(g.y(), b));
      const bool central = std::all_of(
          gamma2.pcgs().begin(), gamma2.pcgs().end(), [&](const Element& u) {
            return gamma4.contains(g, g.commutator(r, u));
          });
      if (central) gens.push_back(r);
    }
  }
  Subgroup chi2 = closure(g, gens);
  if (g.n() >= 4 && chi2.order() * kPrime != g.order()) {
    throw StructureError("two-step centralizer has order " +
                         std::to_string(chi2.order()) +
                         " and is not a maximal subgroup");
  }
  return chi2;
}

inline Subgroup two_step_centralizer(const PcGroup& g) {
  return two_step_centralizer(g, lower_central_series(g));
}

/// 1-based index of `h` among `maximals`, or 0.
inline int maximal_index(const Subgroup& h, const std::vector<Subgroup>& maximals) {
  for (std::size_t i = 0; i < maximals.size(); ++i) {
    if (maximals[i] == h) return static_cast<int>(i) + 1;
  }
  return 0;
}

/// k with [chi_2, gamma_2] = gamma_{n-k}.
inline int defect(const PcGroup& g, const CentralSeries& series,
                  const Subgroup& chi2) {
  const Subgroup c = commutator_subgroup(g, chi2, series.gamma(2));
  for (int j = 2; j <= series.nilpotency_class() + 1; ++j) {
    if (series.gamma(j) == c) return g.n() - j;
  }
  throw StructureError("[chi_2, gamma_2] is not a term of the lower central series");
}

inline int defect(const PcGroup& g) {
  const CentralSeries series = lower_central_series(g);
  return defect(g, series, two_step_centralizer(g, series));
}

/// e with e + 1 the least j >= 3 where |gamma_j / gamma_{j+1}| <= 5.
inline int invariant_e(const CentralSeries& series) {
  for (int j = 3;; ++j) {
    const auto& a = series.gamma(j);
    const auto& b = series.gamma(j + 1);
    if (a.order() / b.order() <= static_cast<std::uint64_t>(kPrime)) return j - 1;
  }
}

/// Largest element order in H.
inline std::uint64_t exponent(const PcGroup& g, const Subgroup& h) {
  std::uint64_t best = 1;
  // For abelian H the largest generator order is the exponent.
  const bool abelian = derived_subgroup(g, h).is_trivial();
  const auto& candidates = abelian ? h.pcgs() : h.elements(g);
  for (const Element& u : candidates) best = std::max(best, g.element_order(u));
  return best;
}

/// Everything the structure module reports about one group.
struct StructureReport {
  int n = 0;
  int nilpotency_class = 0;
  int coclass = 0;
  int defect_k = 0;
  int invariant_e = 0;
  int chi2_index = 0;
  std::array<AbelianType, 6> subgroup_types;
  std::uint64_t gamma2_exponent = 0;
  std::vector<std::uint64_t> series_orders;
  int order25_count = 0;
  /// At least five maximal subgroups with commutator factor of order 25.
  bool maximal_class_criterion = false;
  bool outside_verified_family = false;
};

/// Ingredients shared by the structure and transfer computations.
struct GroupAnalysis {
  CentralSeries series;
  std::vector<Subgroup> maximals;
  Subgroup chi2;
};

inline GroupAnalysis analyze(const PcGroup& g) {
  GroupAnalysis a;
  a.series = lower_central_series(g);
  a.maximals = maximal_subgroups(g, a.series.gamma(2));
  a.chi2 = two_step_centralizer(g, a.series);
  return a;
}

inline StructureReport structure_report(const PcGroup& g, const GroupAnalysis& a) {
  StructureReport r;
  r.n = g.n();
  r.nilpotency_class = a.series.nilpotency_class();
  r.coclass = r.n - r.nilpotency_class;
  r.defect_k = defect(g, a.series, a.chi2);
  r.invariant_e = invariant_e(a.series);
  r.chi2_index = maximal_index(a.chi2, a.maximals);
  for (int i = 0; i < 6; ++i) {
    r.subgroup_types[i] = abelian_type(g, a.maximals[i]);
    if (r.subgroup_types[i].order() == 25) ++r.order25_count;
  }
  r.gamma2_exponent = exponent(g, a.series.gamma(2));
  for (const auto& t : a.series.terms) r.series_orders.push_back(t.order());
  r.maximal_class_criterion = r.order25_count >= 5;
  r.outside_verified_family = g.params().k() == 3;
  return r;
}

inline StructureReport structure_report(const PcGroup& g) {
  return structure_report(g, analyze(g));
}

}  // namespace maxclass5
