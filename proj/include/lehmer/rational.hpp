#pragma once

#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "lehmer/bigint.hpp"
#include "lehmer/errors.hpp"

namespace lehmer {

// Arbitrary-precision rational, always in lowest terms with a positive
// denominator.
class ExactRational {
 public:
  ExactRational() : num_(0), den_(1) {}

  template <std::integral T>
  ExactRational(T value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)

  ExactRational(BigInt value) : num_(std::move(value)), den_(1) {}  // NOLINT

  ExactRational(BigInt numerator, BigInt denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_ == 0) throw InvalidArgument("rational with zero denominator");
    normalize();
  }

  // Caller guarantees gcd(numerator, denominator) = 1 and denominator > 0.
  static ExactRational from_lowest_terms(BigInt numerator, BigInt denominator) {
    return {std::move(numerator), std::move(denominator), no_normalize};
  }

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return num_.sign(); }

  ExactRational operator-() const { return {-num_, den_, no_normalize}; }

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b) {
    if (b.num_ == 0) throw InvalidArgument("rational division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  ExactRational& operator+=(const ExactRational& o) { return *this = *this + o; }
  ExactRational& operator-=(const ExactRational& o) { return *this = *this - o; }
  ExactRational& operator*=(const ExactRational& o) { return *this = *this * o; }
  ExactRational& operator/=(const ExactRational& o) { return *this = *this / o; }

  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Machine form: always "p/q".
  std::string str() const { return num_.str() + "/" + den_.str(); }

  // Human form: "p" for integers, otherwise "p/q".
  std::string pretty() const { return is_integer() ? num_.str() : str(); }

  // Accepts "p/q" or "p" (optionally signed numerator).
  static ExactRational parse(std::string_view text) {
    auto slash = text.find('/');
    auto parse_signed = [](std::string_view s) {
      bool negative = !s.empty() && s.front() == '-';
      if (negative) s.remove_prefix(1);
      BigInt v = parse_bigint(s);
      return negative ? BigInt(-v) : v;
    };
    if (slash == std::string_view::npos) return ExactRational(parse_signed(text));
    return {parse_signed(text.substr(0, slash)), parse_bigint(text.substr(slash + 1))};
  }

  // Fixed-point decimal rounded half away from zero to `significant` digits.
  std::string decimal(int significant = 10) const {
    if (num_ == 0) return "0";
    if (significant < 1) significant = 1;
    BigInt n = boost::multiprecision::abs(num_);
    // Position of the leading digit relative to the decimal point.
    int lead = static_cast<int>(BigInt(n / den_).str().size());
    if (n < den_) {
      lead = 0;
      BigInt t = n * 10;
      while (t < den_) {
        t *= 10;
        --lead;
      }
    }
    int frac_digits = significant - lead;
    if (frac_digits < 0) frac_digits = 0;
    BigInt scaled = n * pow10(static_cast<unsigned>(frac_digits));
    BigInt q = scaled / den_;
    BigInt r = scaled % den_;
    if (2 * r >= den_) ++q;
    std::string digits = q.str();
    if (frac_digits > 0) {
      if (static_cast<int>(digits.size()) <= frac_digits) {
        digits.insert(0, static_cast<std::size_t>(frac_digits) + 1 - digits.size(), '0');
      }
      digits.insert(digits.size() - static_cast<std::size_t>(frac_digits), ".");
    }
    return (num_.sign() < 0 ? "-" : "") + digits;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactRational& r) {
    return os << r.pretty();
  }

 private:
  struct NoNormalize {};
  static constexpr NoNormalize no_normalize{};
  ExactRational(BigInt n, BigInt d, NoNormalize) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

inline ExactRational abs(const ExactRational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace lehmer
