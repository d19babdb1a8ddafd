#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "maxclass5/errors.hpp"
#include "maxclass5/params.hpp"

namespace maxclass5 {

/// Normal form x^{e_x} y^{e_y} s_2^{c_2} ... s_{n-1}^{c_{n-1}}.
///
/// Position 0 holds e_x, position 1 holds e_y and position j >= 2 holds the
/// exponent of s_j. All entries lie in 0..4. Comparison is lexicographic.
class Element {
 public:
  Element() = default;

  /// The identity of a group of order 5^n.
  explicit Element(int n) : size_(static_cast<std::uint8_t>(n)) {
    if (n < 0 || n > kMaxOrderExponent) {
      throw DimensionError("element length " + std::to_string(n) +
                           " out of range");
    }
  }

  static Element from_exponents(std::span<const int> exps) {
    Element u(static_cast<int>(exps.size()));
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] < 0 || exps[i] >= kPrime) {
        throw DimensionError("exponent " + std::to_string(exps[i]) +
                             " at position " + std::to_string(i) +
                             " is not in 0..4");
      }
      u.exps_[i] = static_cast<std::uint8_t>(exps[i]);
    }
    return u;
  }

  static Element from_exponents(std::initializer_list<int> exps) {
    return from_exponents(std::span<const int>(exps.begin(), exps.size()));
  }

  /// Inverse of `code()`.
  static Element from_code(int n, std::uint32_t code) {
    Element u(n);
    for (int i = n - 1; i >= 0; --i) {
      u.exps_[i] = static_cast<std::uint8_t>(code % kPrime);
      code /= kPrime;
    }
    return u;
  }

  int size() const noexcept { return size_; }
  int operator[](int i) const noexcept { return exps_[i]; }
  void set(int i, int value) noexcept {
    exps_[i] = static_cast<std::uint8_t>(mod5(value));
  }

  /// Like set(), for a value already known to lie in 0..4.
  void set_reduced(int i, int value) noexcept {
    exps_[i] = static_cast<std::uint8_t>(value);
  }

  bool is_identity() const noexcept {
    for (int i = 0; i < size_; ++i) {
      if (exps_[i]) return false;
    }
    return true;
  }

  /// Index of the first nonzero exponent, or size() for the identity.
  int depth() const noexcept {
    for (int i = 0; i < size_; ++i) {
      if (exps_[i]) return i;
    }
    return size_;
  }

  /// Base-5 code with e_x most significant; orders like the exponent vector.
  std::uint32_t code() const noexcept {
    std::uint32_t c = 0;
    for (int i = 0; i < size_; ++i) c = c * kPrime + exps_[i];
    return c;
  }

  std::vector<int> to_vector() const {
    return std::vector<int>(exps_.begin(), exps_.begin() + size_);
  }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < size_; ++i) {
      if (i) s += ",";
      s += static_cast<char>('0' + exps_[i]);
    }
    return s + ")";
  }

  friend auto operator<=>(const Element&, const Element&) = default;
  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::array<std::uint8_t, kMaxOrderExponent> exps_{};
  std::uint8_t size_ = 0;
};

}  // namespace maxclass5
