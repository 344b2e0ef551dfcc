#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "qdeg/errors.hpp"

namespace qdeg {

/// Input string x in {0,1}^n, n <= 64. Position i (1-based) is bit i-1.
class BitString {
 public:
  static constexpr int kMaxBits = 64;

  BitString() = default;
  BitString(int n, std::uint64_t bits) : n_(n), bits_(bits & full_mask(n)) {
    if (n < 0 || n > kMaxBits) throw ParameterError("BitString: n must be in [0, 64]");
  }

  /// Parses "1000" as x_1=1, x_2=x_3=x_4=0.
  static BitString parse(std::string_view text) {
    if (text.size() > kMaxBits) throw ParameterError("BitString: more than 64 bits");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') {
        bits |= std::uint64_t{1} << i;
      } else if (text[i] != '0') {
        throw ParameterError("BitString: expected only '0' and '1'");
      }
    }
    return BitString(static_cast<int>(text.size()), bits);
  }

  static constexpr std::uint64_t full_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }

  int size() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  int weight() const { return std::popcount(bits_); }

  bool operator[](int i) const {
    check_index(i);
    return (bits_ >> (i - 1)) & 1U;
  }

  BitString complement() const { return BitString(n_, ~bits_); }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) {
      if ((bits_ >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
  }

  void check_index(int i) const {
    if (i < 1 || i > n_) throw ParameterError("index " + std::to_string(i) + " outside [1, n]");
  }

  auto operator<=>(const BitString&) const = default;

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

}  // namespace qdeg
