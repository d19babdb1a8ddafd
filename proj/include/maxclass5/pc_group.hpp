#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maxclass5/element.hpp"
#include "maxclass5/errors.hpp"
#include "maxclass5/params.hpp"

namespace maxclass5 {

/// Integer coordinates on s_2, ..., s_{n-1}; slots 0 and 1 are unused.
using GammaVector = std::array<int, kMaxOrderExponent>;

/// The relation tables of a presentation. Every entry is a normalized word
/// in the abelian subgroup generated by s_2, ..., s_{n-1}.
struct PresentationTables {
  int n = 0;
  std::vector<GammaVector> s_power;  ///< [j] = s_j^5
  std::vector<GammaVector> conj_x;   ///< [j] = s_j^x
  std::vector<GammaVector> conj_y;   ///< [j] = s_j^y
  GammaVector x_power{};             ///< x^5
  GammaVector y_power{};             ///< y^5
  GammaVector y_conj_x_tail{};       ///< y^x = y * tail
};

namespace detail {

constexpr int floor_div5(int v) {
  return v >= 0 ? v / kPrime : -((-v + kPrime - 1) / kPrime);
}

inline GammaVector unit_vector(int j) {
  GammaVector v{};
  v[j] = 1;
  return v;
}

/// Brings every coordinate into 0..4 by rewriting s_j^5 with the power table,
/// working from s_2 downwards so carries only move to deeper generators.
inline void normalize(GammaVector& v, int n,
                      const std::vector<GammaVector>& s_power) {
  for (int i = 2; i < n; ++i) {
    const int q = floor_div5(v[i]);
    if (q == 0) continue;
    v[i] -= kPrime * q;
    const GammaVector& pw = s_power[i];
    for (int t = i + 1; t < n; ++t) v[t] += q * pw[t];
  }
}

/// Image of `v` under the endomorphism whose value on s_j is `table[j]`.
inline GammaVector apply_table(const std::vector<GammaVector>& table,
                               const GammaVector& v, int n,
                               const std::vector<GammaVector>& s_power) {
  GammaVector out{};
  for (int j = 2; j < n; ++j) {
    if (v[j] == 0) continue;
    for (int i = 2; i < n; ++i) out[i] += v[j] * table[j][i];
  }
  normalize(out, n, s_power);
  return out;
}

inline void add_into(GammaVector& acc, const GammaVector& v, int scale = 1) {
  for (int i = 0; i < kMaxOrderExponent; ++i) acc[i] += scale * v[i];
}

}  // namespace detail

/// Derives the full relation tables for G_a^(n)(z,w).
///
/// s_j^5 comes from s_j^5 s_{j+1}^10 s_{j+2}^10 s_{j+3}^5 s_{j+4} = 1, solved
/// from j = n-1 down to 2 with s_m = 1 for m >= n. The y-action starts from
/// s_2^y = s_2 [y, s_2]^{-1} and continues by s_{j+1}^y = (s_j^y)^{-1}
/// (s_j^y)^x, which presumes that x and y act commutingly on the derived
/// subgroup; `verify_presentation` checks that afterwards.
inline PresentationTables derive_tables(const PresentationParams& params) {
  const int n = params.n;
  if (n < 3 || n > kMaxOrderExponent) {
    throw ParamError("n", "cannot build a presentation with n = " +
                              std::to_string(n));
  }
  PresentationTables t;
  t.n = n;
  t.s_power.assign(n, GammaVector{});
  t.conj_x.assign(n, GammaVector{});
  t.conj_y.assign(n, GammaVector{});

  static constexpr std::array<int, 4> kBinomialTail{10, 10, 5, 1};
  for (int j = n - 1; j >= 2; --j) {
    GammaVector v{};
    for (int i = 0; i < 4; ++i) {
      if (j + 1 + i < n) v[j + 1 + i] -= kBinomialTail[i];
    }
    detail::normalize(v, n, t.s_power);
    t.s_power[j] = v;
  }

  for (int j = 2; j < n; ++j) {
    t.conj_x[j][j] = 1;
    if (j + 1 < n) t.conj_x[j][j + 1] = 1;
  }

  GammaVector s2y = detail::unit_vector(2);
  for (int j = 2; j < n; ++j) s2y[j] -= params.commutator_exponent(j);
  detail::normalize(s2y, n, t.s_power);
  t.conj_y[2] = s2y;
  for (int j = 2; j + 1 < n; ++j) {
    GammaVector next = detail::apply_table(t.conj_x, t.conj_y[j], n, t.s_power);
    detail::add_into(next, t.conj_y[j], -1);
    detail::normalize(next, n, t.s_power);
    t.conj_y[j + 1] = next;
  }

  t.x_power[n - 1] = params.w;
  t.y_power[n - 1] = params.z;
  static constexpr std::array<int, 4> kYPowerTail{10, 10, 5, 1};
  for (int i = 0; i < 4; ++i) {
    if (2 + i < n) t.y_power[2 + i] -= kYPowerTail[i];
  }
  detail::normalize(t.x_power, n, t.s_power);
  detail::normalize(t.y_power, n, t.s_power);
  t.y_conj_x_tail[2] = 1;
  return t;
}

/// A group of order 5^n given by a consistent polycyclic presentation.
///
/// Immutable once constructed; all operations are const and thread-safe.
class PcGroup {
 public:
  /// Builds the multiplication machinery from raw tables without checking
  /// them. Use `build_group` for a verified group.
  static PcGroup from_tables(PresentationParams params,
                             PresentationTables tables) {
    PcGroup g;
    g.params_ = std::move(params);
    g.tables_ = std::move(tables);
    g.n_ = g.tables_.n;
    g.precompute();
    return g;
  }

  const PresentationParams& params() const noexcept { return params_; }
  const PresentationTables& tables() const noexcept { return tables_; }
  int n() const noexcept { return n_; }

  std::uint64_t order() const noexcept {
    std::uint64_t o = 1;
    for (int i = 0; i < n_; ++i) o *= kPrime;
    return o;
  }

  Element identity() const { return Element(n_); }

  /// The pc generator at position i (x, y, s_2, ...).
  Element generator(int i) const {
    Element u(n_);
    if (i >= 0 && i < n_) u.set(i, 1);
    return u;
  }
  Element x() const { return generator(0); }
  Element y() const { return generator(1); }
  /// s_j, which is the identity for j >= n.
  Element s(int j) const { return j >= 2 && j < n_ ? generator(j) : identity(); }

  Element multiply(const Element& u, const Element& v) const {
    check(u);
    check(v);
    const int a = u[0], b = u[1], c = v[0], d = v[1];
    GammaVector acc = cross_[index(a, b, c, d)];
    accumulate_action(acc, u, action_[c][d]);
    for (int j = 2; j < kMaxOrderExponent; ++j) acc[j] += v[j];
    normalize_nonnegative(acc);
    Element out(n_);
    out.set_reduced(0, a + c < kPrime ? a + c : a + c - kPrime);
    out.set_reduced(1, b + d < kPrime ? b + d : b + d - kPrime);
    for (int j = 2; j < n_; ++j) out.set_reduced(j, acc[j]);
    return out;
  }

  Element inverse(const Element& u) const {
    check(u);
    const int c = mod5(-u[0]), d = mod5(-u[1]);
    GammaVector acc = cross_[index(u[0], u[1], c, d)];
    accumulate_action(acc, u, action_[c][d]);
    for (int j = 2; j < n_; ++j) acc[j] = -acc[j];
    normalize(acc);
    Element out(n_);
    out.set_reduced(0, c);
    out.set_reduced(1, d);
    for (int j = 2; j < n_; ++j) out.set_reduced(j, acc[j]);
    return out;
  }

  Element power(Element u, long long m) const {
    check(u);
    if (m < 0) {
      u = inverse(u);
      m = -m;
    }
    Element result = identity();
    while (m > 0) {
      if (m & 1) result = multiply(result, u);
      m >>= 1;
      if (m) u = multiply(u, u);
    }
    return result;
  }

  /// [u, v] = u^{-1} v^{-1} u v.
  Element commutator(const Element& u, const Element& v) const {
    return multiply(inverse(multiply(v, u)), multiply(u, v));
  }

  /// u^g = g^{-1} u g.
  Element conjugate(const Element& u, const Element& g) const {
    return multiply(inverse(g), multiply(u, g));
  }

  /// Least m >= 1 with u^m = 1.
  std::uint64_t element_order(Element u) const {
    check(u);
    std::uint64_t order = 1;
    while (!u.is_identity()) {
      u = power(u, kPrime);
      order *= kPrime;
    }
    return order;
  }

  void normalize(GammaVector& v) const {
    detail::normalize(v, n_, tables_.s_power);
  }

  GammaVector act_x(const GammaVector& v) const {
    return detail::apply_table(tables_.conj_x, v, n_, tables_.s_power);
  }
  GammaVector act_y(const GammaVector& v) const {
    return detail::apply_table(tables_.conj_y, v, n_, tables_.s_power);
  }

  Element from_gamma(const GammaVector& v) const {
    GammaVector w = v;
    normalize(w);
    Element out(n_);
    for (int j = 2; j < n_; ++j) out.set(j, w[j]);
    return out;
  }

  static GammaVector gamma_part(const Element& u) {
    GammaVector v{};
    for (int j = 2; j < u.size(); ++j) v[j] = u[j];
    return v;
  }

 private:
  using Matrix = std::array<GammaVector, kMaxOrderExponent>;

  PcGroup() = default;

  static int index(int a, int b, int c, int d) {
    return ((a * kPrime + b) * kPrime + c) * kPrime + d;
  }

  // acc += (gamma part of u)^{x^c y^d}; columns are zero past n.
  void accumulate_action(GammaVector& acc, const Element& u,
                         const Matrix& act) const noexcept {
    for (int j = 2; j < n_; ++j) {
      const int e = u[j];
      if (e == 0) continue;
      const GammaVector& col = act[j];
      for (int i = 0; i < kMaxOrderExponent; ++i) acc[i] += e * col[i];
    }
  }

  // normalize() for vectors with no negative coordinates.
  void normalize_nonnegative(GammaVector& v) const noexcept {
    for (int i = 2; i < n_; ++i) {
      const unsigned q = static_cast<unsigned>(v[i]) / kPrime;
      if (q == 0) continue;
      v[i] -= static_cast<int>(q) * kPrime;
      const GammaVector& pw = tables_.s_power[i];
      for (int t = 0; t < kMaxOrderExponent; ++t) v[t] += static_cast<int>(q) * pw[t];
    }
  }

  void check(const Element& u) const {
    if (u.size() != n_) {
      throw DimensionError("element of length " + std::to_string(u.size()) +
                           " used in a group with n = " + std::to_string(n_));
    }
  }

  // Collection state x^a y^b g with g in the derived subgroup.
  struct Collected {
    int a = 0;
    int b = 0;
    GammaVector g{};
  };

  // x^a y^b g * y = x^a y^{b+1} g^y, folding y^5 into the tail.
  void collect_y(Collected& s) const {
    s.g = act_y(s.g);
    if (++s.b == kPrime) {
      s.b = 0;
      detail::add_into(s.g, tables_.y_power);
    }
    normalize(s.g);
  }

  // x^a y^b g * x = x^{a+1} (y t)^b g^x with y^x = y t, and
  // (y t)^b = y^b t^{y^{b-1}} ... t^y t.
  void collect_x(Collected& s) const {
    GammaVector next = act_x(s.g);
    GammaVector t = tables_.y_conj_x_tail;
    for (int i = 0; i < s.b; ++i) {
      detail::add_into(next, t);
      t = act_y(t);
    }
    if (++s.a == kPrime) {
      s.a = 0;
      GammaVector xp = tables_.x_power;
      for (int i = 0; i < s.b; ++i) xp = act_y(xp);
      detail::add_into(next, xp);
    }
    normalize(next);
    s.g = next;
  }

  void precompute() {
    for (int c = 0; c < kPrime; ++c) {
      for (int d = 0; d < kPrime; ++d) {
        Matrix& m = action_[c][d];
        m = Matrix{};
        for (int j = 2; j < n_; ++j) {
          GammaVector v = detail::unit_vector(j);
          for (int i = 0; i < c; ++i) v = act_x(v);
          for (int i = 0; i < d; ++i) v = act_y(v);
          m[j] = v;
        }
      }
    }
    cross_.assign(kPrime * kPrime * kPrime * kPrime, GammaVector{});
    for (int a = 0; a < kPrime; ++a) {
      for (int b = 0; b < kPrime; ++b) {
        for (int c = 0; c < kPrime; ++c) {
          Collected s{a, b, {}};
          for (int i = 0; i < c; ++i) collect_x(s);
          for (int d = 0; d < kPrime; ++d) {
            cross_[index(a, b, c, d)] = s.g;
            collect_y(s);
          }
        }
      }
    }
  }

  PresentationParams params_;
  PresentationTables tables_;
  int n_ = 0;
  std::array<std::array<Matrix, kPrime>, kPrime> action_{};
  std::vector<GammaVector> cross_;
};

/// Outcome of checking one defining relation.
struct RelationCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

/// Commutation of the x- and y-actions on s_j, for every j; returns the
/// first j where they disagree, or 0.
inline int first_noncommuting_generator(const PcGroup& g) {
  for (int j = 2; j < g.n(); ++j) {
    const GammaVector e = detail::unit_vector(j);
    if (g.act_x(g.act_y(e)) != g.act_y(g.act_x(e))) return j;
  }
  return 0;
}

/// Re-evaluates every defining relation through the multiplication engine.
inline std::vector<RelationCheck> verify_presentation(const PcGroup& g) {
  std::vector<RelationCheck> out;
  const int n = g.n();
  const auto& params = g.params();
  auto record = [&](std::string name, const Element& lhs, const Element& rhs) {
    const bool ok = lhs == rhs;
    out.push_back({std::move(name), ok,
                   ok ? "" : lhs.to_string() + " != " + rhs.to_string()});
  };

  const int bad = first_noncommuting_generator(g);
  out.push_back({"x- and y-actions commute", bad == 0,
                 bad ? "disagree on s_" + std::to_string(bad) : ""});

  // s_2 = [y, x], s_j = [s_{j-1}, x], s_n = 1.
  record("s_2 = [y,x]", g.commutator(g.y(), g.x()), g.s(2));
  for (int j = 3; j <= n; ++j) {
    record("s_" + std::to_string(j) + " = [s_" + std::to_string(j - 1) + ",x]",
           g.commutator(g.s(j - 1), g.x()), g.s(j));
  }

  static constexpr std::array<int, 5> kBinomial{5, 10, 10, 5, 1};
  for (int j = 2; j < n; ++j) {
    Element lhs = g.identity();
    for (int i = 0; i < 5; ++i) {
      lhs = g.multiply(lhs, g.power(g.s(j + i), kBinomial[i]));
    }
    record("s_" + std::to_string(j) + "^5 binomial relation", lhs, g.identity());
  }

  record("x^5 = s_{n-1}^w", g.power(g.x(), 5),
         g.power(g.s(n - 1), params.w));

  Element y5 = g.power(g.y(), 5);
  static constexpr std::array<int, 4> kTail{10, 10, 5, 1};
  for (int i = 0; i < 4; ++i) {
    y5 = g.multiply(y5, g.power(g.s(2 + i), kTail[i]));
  }
  record("y^5 s_2^10 s_3^10 s_4^5 s_5 = s_{n-1}^z", y5,
         g.power(g.s(n - 1), params.z));

  Element rhs = g.identity();
  for (int j = 2; j < n; ++j) {
    rhs = g.multiply(rhs, g.power(g.s(j), params.commutator_exponent(j)));
  }
  record("[y, s_2] = prod s_j^{c_j}", g.commutator(g.y(), g.s(2)), rhs);
  return out;
}

/// Builds G_a^(n)(z,w) and verifies it.
///
/// Throws ConsistencyError when the derived y-action fails to commute with
/// the x-action or a defining relation fails on re-evaluation.
inline PcGroup build_group(const PresentationParams& params) {
  PcGroup g = PcGroup::from_tables(params, derive_tables(params));
  for (const auto& check : verify_presentation(g)) {
    if (!check.holds) {
      throw ConsistencyError(to_string(params) + ": " + check.name +
                             (check.detail.empty() ? "" : ": " + check.detail));
    }
  }
  return g;
}

}  // namespace maxclass5
