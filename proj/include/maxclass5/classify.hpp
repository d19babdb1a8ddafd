#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "maxclass5/errors.hpp"
#include "maxclass5/isomorphism.hpp"
#include "maxclass5/params.hpp"
#include "maxclass5/pc_group.hpp"
#include "maxclass5/structure.hpp"
#include "maxclass5/transfer.hpp"

namespace maxclass5 {

/// G_a^(n)(z,w). Note the text order: z before w.
struct FamilyLabel {
  int n = 4;
  std::vector<int> a;
  int z = 0;
  int w = 0;

  PresentationParams params() const {
    PresentationParams p;
    p.n = n;
    p.w = w;
    p.z = z;
    p.a = a;
    return p;
  }

  static FamilyLabel from_params(const PresentationParams& p) {
    return FamilyLabel{p.n, p.a, p.z, p.w};
  }

  /// "G_0^(5)(0,0)", "G_1^(6)(1,0)", "G_(2,1)^(7)(0,0)".
  std::string text() const {
    std::string s = "G_";
    if (a.empty()) {
      s += "0";
    } else if (a.size() == 1) {
      s += std::to_string(a[0]);
    } else {
      s += "(";
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
      }
      s += ")";
    }
    return s + "^(" + std::to_string(n) + ")(" + std::to_string(z) + "," +
           std::to_string(w) + ")";
  }

  /// Inverse of text(); the result is validated.
  static FamilyLabel parse(const std::string& text) {
    static const std::regex re(R"(G_(\d|\(\d(?:,\d)*\))\^\((\d+)\)\((\d),(\d)\))");
    std::smatch m;
    if (!std::regex_match(text, m, re)) {
      throw ParamError("label", "cannot parse '" + text + "'");
    }
    RawParams raw;
    raw.n = std::stoll(m[2]);
    raw.z = std::stoll(m[3]);
    raw.w = std::stoll(m[4]);
    const std::string a = m[1];
    for (char c : a) {
      if (c >= '0' && c <= '9') raw.a.push_back(c - '0');
    }
    for (long long v : raw.a) {
      if (v > 4) throw ParamError("a", "entry out of range in '" + text + "'");
    }
    if (raw.z > 4 || raw.w > 4) throw ParamError("label", "exponent out of range in '" + text + "'");
    const FamilyLabel out = from_params(validate_params(raw));
    if (out.text() != text) {
      throw ParamError("label", "'" + text + "' is not in canonical form");
    }
    return out;
  }

  friend auto operator<=>(const FamilyLabel&, const FamilyLabel&) = default;
  friend bool operator==(const FamilyLabel&, const FamilyLabel&) = default;
};

/// A standard generating pair and the parameters it exhibits.
struct StandardGenerators {
  Element x;
  Element y;
  /// s[j] for 2 <= j < n; entries 0 and 1 unused.
  std::vector<Element> s;
  PresentationParams observed;
};

namespace detail {

/// Exponents of u over a sequence s[2..n-1] with s[j] of depth j, or
/// nullopt if u is not a product of them.
inline std::optional<std::vector<int>> decompose(const PcGroup& g,
                                                 const std::vector<Element>& s,
                                                 Element u) {
  const int n = g.n();
  std::vector<int> exps(n, 0);
  if (u[0] || (n > 1 && u[1])) return std::nullopt;
  for (int j = 2; j < n; ++j) {
    if (!u[j]) continue;
    const int e = mod5(u[j] * inverse_mod5(s[j][j]));
    exps[j] = e;
    u = g.multiply(u, g.power(s[j], -e));
  }
  if (!u.is_identity()) return std::nullopt;
  return exps;
}

inline bool only_at(const std::vector<int>& exps, int j) {
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (static_cast<int>(i) != j && exps[i]) return false;
  }
  return true;
}

}  // namespace detail

/// Reads w, z and a off the pair (x', y') if the relations take the
/// prescribed shape.
inline std::optional<StandardGenerators> read_parameters(const PcGroup& g,
                                                         const Element& xp,
                                                         const Element& yp) {
  const int n = g.n();
  StandardGenerators sg;
  sg.x = xp;
  sg.y = yp;
  sg.s.assign(n, g.identity());
  sg.s[2] = g.commutator(yp, xp);
  for (int j = 3; j < n; ++j) sg.s[j] = g.commutator(sg.s[j - 1], xp);
  for (int j = 2; j < n; ++j) {
    if (sg.s[j].depth() != j) return std::nullopt;
  }
  if (!g.commutator(sg.s[n - 1], xp).is_identity()) return std::nullopt;
  auto s_at = [&](int j) { return j < n ? sg.s[j] : g.identity(); };

  const auto xe = detail::decompose(g, sg.s, g.power(xp, kPrime));
  if (!xe || !detail::only_at(*xe, n - 1)) return std::nullopt;

  Element rel3 = g.power(yp, kPrime);
  static constexpr std::array<int, 4> kTail{10, 10, 5, 1};
  for (int i = 0; i < 4; ++i) rel3 = g.multiply(rel3, g.power(s_at(2 + i), kTail[i]));
  const auto ze = detail::decompose(g, sg.s, rel3);
  if (!ze || !detail::only_at(*ze, n - 1)) return std::nullopt;

  const auto ae = detail::decompose(g, sg.s, g.commutator(yp, sg.s[2]));
  if (!ae) return std::nullopt;
  const int kmax = max_defect(n);
  RawParams raw;
  raw.n = n;
  raw.w = (*xe)[n - 1];
  raw.z = (*ze)[n - 1];
  for (int j = 2; j < n - kmax; ++j) {
    if ((*ae)[j]) return std::nullopt;
  }
  for (int i = 1; i <= kmax; ++i) raw.a.push_back((*ae)[n - i]);
  try {
    sg.observed = validate_params(raw);
  } catch (const ParamError&) {
    return std::nullopt;
  }
  return sg;
}

/// read_parameters, accepted only if x -> x', y -> y' defines an
/// isomorphism from the group the parameters name onto G.
///
/// The relation list alone is not trusted to pin down G.
inline std::optional<StandardGenerators> extract_parameters(const PcGroup& g,
                                                            const Element& xp,
                                                            const Element& yp) {
  auto sg = read_parameters(g, xp, yp);
  if (!sg) return std::nullopt;
  try {
    const PcGroup model = build_group(sg->observed);
    if (!homomorphism_images(model, g, xp, yp)) return std::nullopt;
  } catch (const ConsistencyError&) {
    return std::nullopt;
  }
  return sg;
}

namespace detail {

/// Visits, in lexicographic order, every element whose first `head`
/// positions pass `keep`, until `visit` returns true.
template <class Keep, class Visit>
bool walk_lex(const PcGroup& g, int head, Keep keep, Visit visit) {
  const int n = g.n();
  std::uint32_t tails = 1;
  for (int i = head; i < n; ++i) tails *= kPrime;
  const auto heads = static_cast<std::uint32_t>(g.order() / tails);
  for (std::uint32_t h = 0; h < heads; ++h) {
    if (!keep(Element::from_code(n, h * tails))) continue;
    for (std::uint32_t t = 0; t < tails; ++t) {
      if (visit(Element::from_code(n, h * tails + t))) return true;
    }
  }
  return false;
}

}  // namespace detail

/// The lexicographically least eligible x' (outside chi_2), then y' (in
/// chi_2 \ gamma_2), whose relations have the standard shape.
inline StandardGenerators standard_generators(const PcGroup& g,
                                              const GroupAnalysis& a) {
  if (a.series.nilpotency_class() != g.n() - 1) {
    throw StructureError("group is not of maximal class");
  }
  const Subgroup& gamma2 = a.series.gamma(2);
  // Membership in both subgroups is decided by the positions below `head`.
  const int head = std::max(a.chi2.tail_depth(), gamma2.tail_depth());
  std::optional<StandardGenerators> found;
  detail::walk_lex(
      g, head, [&](const Element& u) { return !a.chi2.contains(g, u); },
      [&](const Element& xp) {
        return detail::walk_lex(
            g, head,
            [&](const Element& u) {
              return a.chi2.contains(g, u) && !gamma2.contains(g, u);
            },
            [&](const Element& yp) {
              found = extract_parameters(g, xp, yp);
              return found.has_value();
            });
      });
  if (!found) throw StructureError("no standard generating pair reproduces the relations");
  return *found;
}

inline StandardGenerators standard_generators(const PcGroup& g) {
  return standard_generators(g, analyze(g));
}

inline FamilyLabel family_label(const PcGroup& g, const GroupAnalysis& a) {
  return FamilyLabel::from_params(standard_generators(g, a).observed);
}

inline FamilyLabel family_label(const PcGroup& g) {
  return family_label(g, analyze(g));
}

/// Least label over every eligible standard pair: an isomorphism invariant.
/// Enumerates all pairs, so it is limited to n <= 5.
inline FamilyLabel canonical_label(const PcGroup& g) {
  if (g.n() > kMaxBruteForceN) {
    throw SizeGuard("canonical labels need n <= " + std::to_string(kMaxBruteForceN));
  }
  const auto [xs, ys] = standard_candidates(g, analyze(g));
  std::optional<FamilyLabel> best;
  std::map<PresentationParams, std::optional<PcGroup>> models;
  for (const Element& xp : xs) {
    for (const Element& yp : ys) {
      const auto sg = read_parameters(g, xp, yp);
      if (!sg) continue;
      const FamilyLabel label = FamilyLabel::from_params(sg->observed);
      if (best && !(label < *best)) continue;
      auto it = models.find(sg->observed);
      if (it == models.end()) {
        std::optional<PcGroup> model;
        try {
          model = build_group(sg->observed);
        } catch (const ConsistencyError&) {
        }
        it = models.emplace(sg->observed, std::move(model)).first;
      }
      if (it->second && homomorphism_images(*it->second, g, xp, yp)) best = label;
    }
  }
  if (!best) throw StructureError("no standard generating pair");
  return *best;
}

// Family sets named by the propositions. Where a statement leaves a free,
// every canonical tuple of that order is listed.

inline std::vector<FamilyLabel> labels_with(int n, int z, int w, bool a_free) {
  std::vector<FamilyLabel> out;
  if (!a_free) {
    out.push_back(FamilyLabel{n, {}, z, w});
    return out;
  }
  for (const auto& a : commutator_tuples(n)) out.push_back(FamilyLabel{n, a, z, w});
  std::sort(out.begin(), out.end());
  return out;
}

/// G_0^(4)(0,0), G_a^(5)(0,0), G_a^(6)(1,0); empty for n >= 7.
inline std::vector<FamilyLabel> prop31_family(int n) {
  if (n == 4) return labels_with(4, 0, 0, false);
  if (n == 5) return labels_with(5, 0, 0, true);
  if (n == 6) return labels_with(6, 1, 0, true);
  return {};
}

/// G_a^(n)(0,0) for n in {4, 5, 6}; G_0^(n)(0,0) for n >= 7.
inline std::vector<FamilyLabel> prop32_family(int n) {
  return labels_with(n, 0, 0, n <= 6);
}

/// G_0^(n)(0,0).
inline std::vector<FamilyLabel> prop33_family(int n) {
  return labels_with(n, 0, 0, false);
}

inline bool prop31_triggered(const TransferFingerprint& f) { return f[0] && f[1]; }

inline bool prop32_triggered(const TransferFingerprint& f) {
  return f[1] && (f[2] || f[3] || f[4] || f[5]);
}

inline bool prop33_triggered(const TransferFingerprint& f) {
  return (f[2] + f[3] + f[4] + f[5]) >= 2;
}

struct Classification {
  std::vector<std::string> triggered;
  std::vector<FamilyLabel> candidates;
  std::string diagnostic;
};

/// Intersects the families of every proposition whose transfer hypothesis
/// holds.
inline Classification classify_by_transfers(int n, const TransferFingerprint& f) {
  Classification c;
  std::vector<std::vector<FamilyLabel>> sets;
  if (prop31_triggered(f)) {
    c.triggered.push_back("prop31");
    sets.push_back(prop31_family(n));
  }
  if (prop32_triggered(f)) {
    c.triggered.push_back("prop32");
    sets.push_back(prop32_family(n));
  }
  if (prop33_triggered(f)) {
    c.triggered.push_back("prop33");
    sets.push_back(prop33_family(n));
  }
  if (sets.empty()) {
    c.diagnostic = "no transfer hypothesis holds (fingerprint " + to_string(f) + ")";
    return c;
  }
  c.candidates = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) {
    std::vector<FamilyLabel> keep;
    std::set_intersection(c.candidates.begin(), c.candidates.end(), sets[i].begin(),
                          sets[i].end(), std::back_inserter(keep));
    c.candidates = std::move(keep);
  }
  if (c.candidates.empty()) c.diagnostic = "triggered propositions admit no common family";
  return c;
}

inline Classification classify_by_transfers(const PcGroup& g, const GroupAnalysis& a) {
  return classify_by_transfers(g.n(), fingerprint(g, a));
}

inline Classification classify_by_transfers(const PcGroup& g) {
  return classify_by_transfers(g, analyze(g));
}

/// a scaled so that its last entry a_{n-k} is 1.
inline std::vector<int> normalized_a(const std::vector<int>& a) {
  if (a.empty()) return a;
  const int inv = detail::inverse_mod5(a.back());
  std::vector<int> out;
  for (int v : a) out.push_back(mod5(v * inv));
  return out;
}

}  // namespace maxclass5
