#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace citeflow {

using BigRational = boost::multiprecision::cpp_rational;

/// Non-negative fraction of two counts, e.g. n_intra / n_cit. Not reduced;
/// comparisons are exact by cross-multiplication.
class Fraction {
 public:
  constexpr Fraction() = default;
  constexpr Fraction(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {}

  constexpr std::uint64_t num() const noexcept { return num_; }
  constexpr std::uint64_t den() const noexcept { return den_; }

  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  BigRational exact() const { return BigRational(num_, den_); }

  /// 1 - this
  constexpr Fraction complement() const noexcept { return {den_ - num_, den_}; }

  __extension__ using Wide = unsigned __int128;

  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) noexcept {
    const auto lhs = static_cast<Wide>(a.num_) * b.den_;
    const auto rhs = static_cast<Wide>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  friend bool operator==(const Fraction& a, const Fraction& b) noexcept { return (a <=> b) == 0; }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

inline constexpr Fraction kHalf{1, 2};

/// Exact running mean of fractions. Numerators are pooled per denominator,
/// so the sum stays small and the result is independent of insertion order.
class ExactMean {
 public:
  void add(Fraction f);
  void add(std::uint64_t value) { add(Fraction{value, 1}); }

  std::uint64_t count() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  BigRational sum() const;
  /// Throws std::domain_error when empty.
  BigRational mean() const;
  /// Correctly rounded mean.
  double mean_double() const;

 private:
  std::map<std::uint64_t, std::uint64_t> by_den_;
  std::uint64_t count_ = 0;
};

double to_double(const BigRational& r);

}  // namespace citeflow
