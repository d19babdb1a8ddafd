#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "maxclass5/errors.hpp"

namespace maxclass5 {

inline constexpr int kPrime = 5;

/// Largest supported order exponent; 5^12 still fits a 32-bit element code.
inline constexpr int kMaxOrderExponent = 12;

/// Reduces `v` into 0..4.
constexpr int mod5(long long v) {
  const long long r = v % kPrime;
  return static_cast<int>(r < 0 ? r + kPrime : r);
}

/// Largest admissible defect for groups of order 5^n.
constexpr int max_defect(int n) { return std::max(0, std::min(n - 4, 3)); }

/// Names one member G_a^(n)(z,w) of the family.
///
/// `a` lists (a_{n-1}, ..., a_{n-k}); its last entry is nonzero, so `k()` is
/// the length of `a`.
struct PresentationParams {
  int p = kPrime;
  int n = 4;
  int w = 0;
  int z = 0;
  std::vector<int> a;

  int k() const noexcept { return static_cast<int>(a.size()); }

  /// Exponent of s_j in [y, s_2], for 2 <= j < n.
  int commutator_exponent(int j) const noexcept {
    const int i = n - j;  // s_j = s_{n-i}
    return (i >= 1 && i <= k()) ? a[i - 1] : 0;
  }

  friend auto operator<=>(const PresentationParams&,
                          const PresentationParams&) = default;
  friend bool operator==(const PresentationParams&,
                         const PresentationParams&) = default;
};

/// Unvalidated parameter input, e.g. straight from a CLI or JSON file.
struct RawParams {
  long long p = kPrime;
  long long n = 0;
  long long w = 0;
  long long z = 0;
  std::vector<long long> a;
};

/// Checks ranges, reduces exponents mod 5 and strips trailing zeros from `a`.
inline PresentationParams validate_params(const RawParams& raw) {
  if (raw.p != kPrime) throw ParamError("p", "only p = 5 is supported");
  if (raw.n < 4) throw ParamError("n", "order exponent must be at least 4");
  if (raw.n > kMaxOrderExponent) {
    throw ParamError("n", "order exponent above " +
                              std::to_string(kMaxOrderExponent) +
                              " is not supported");
  }
  PresentationParams params;
  params.n = static_cast<int>(raw.n);
  params.w = mod5(raw.w);
  params.z = mod5(raw.z);
  for (long long v : raw.a) params.a.push_back(mod5(v));
  while (!params.a.empty() && params.a.back() == 0) params.a.pop_back();
  if (params.k() > max_defect(params.n)) {
    throw ParamError("a", "defect k = " + std::to_string(params.k()) +
                              " exceeds min(n-4, 3) = " +
                              std::to_string(max_defect(params.n)));
  }
  return params;
}

/// Number of canonical parameter tuples with order exponent n.
constexpr std::uint64_t tuple_count(int n) {
  std::uint64_t count = 25;
  for (int i = 0; i < max_defect(n); ++i) count *= 5;
  return count;
}

/// All canonical `a` tuples for order exponent n, shortest first.
inline std::vector<std::vector<int>> commutator_tuples(int n) {
  std::vector<std::vector<int>> out{{}};
  for (int k = 1; k <= max_defect(n); ++k) {
    // a_{n-1}, ..., a_{n-k+1} free; a_{n-k} nonzero.
    int free = 1;
    for (int i = 0; i < k - 1; ++i) free *= 5;
    for (int f = 0; f < free; ++f) {
      std::vector<int> prefix(k - 1);
      int v = f;
      for (int i = k - 2; i >= 0; --i) {
        prefix[i] = v % 5;
        v /= 5;
      }
      for (int last = 1; last < 5; ++last) {
        auto a = prefix;
        a.push_back(last);
        out.push_back(std::move(a));
      }
    }
  }
  return out;
}

/// Every canonical parameter tuple of order 5^n, sorted.
inline std::vector<PresentationParams> valid_tuples(int n) {
  std::vector<PresentationParams> out;
  const auto tuples = commutator_tuples(n);
  for (int w = 0; w < 5; ++w) {
    for (int z = 0; z < 5; ++z) {
      for (const auto& a : tuples) {
        PresentationParams params;
        params.n = n;
        params.w = w;
        params.z = z;
        params.a = a;
        out.push_back(std::move(params));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string to_string(const PresentationParams& params) {
  std::string s = "(n=" + std::to_string(params.n) +
                  ", w=" + std::to_string(params.w) +
                  ", z=" + std::to_string(params.z) + ", a=(";
  for (int i = 0; i < params.k(); ++i) {
    if (i) s += ",";
    s += std::to_string(params.a[i]);
  }
  return s + "))";
}

}  // namespace maxclass5
