#pragma once
// Non-negative reals stored as natural logarithms, for bound terms such as
// (6m)^(3m+4) that leave double range long before they stop being interesting.

#include "randsurf/common.hpp"

#include <cmath>
#include <compare>
#include <limits>

namespace randsurf {

class LogNumber {
 public:
  LogNumber() = default;  // zero

  LogNumber(double x) {  // NOLINT(google-explicit-constructor): numeric literal convenience
    require(x >= 0 && !std::isnan(x), "LogNumber holds non-negative values only");
    if (x > 0) {
      zero_ = false;
      log_ = std::log(x);
    }
  }

  LogNumber(int x) : LogNumber(static_cast<double>(x)) {}  // NOLINT(google-explicit-constructor)

  explicit LogNumber(const BigInt& x) {
    require(x >= 0, "LogNumber holds non-negative values only");
    if (x == 0) return;
    zero_ = false;
    const std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 1000) {
      log_ = std::log(x.convert_to<double>());
    } else {
      const std::size_t drop = bits - 64;
      log_ = std::log(BigInt(x >> drop).convert_to<double>()) + static_cast<double>(drop) * std::log(2.0);
    }
  }

  explicit LogNumber(const Rational& x)
      : LogNumber(from_ratio(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x))) {}

  static LogNumber from_log(double log_value) {
    LogNumber out;
    out.zero_ = false;
    out.log_ = log_value;
    return out;
  }

  bool is_zero() const noexcept { return zero_; }
  /// Natural log; -inf for zero.
  double log() const noexcept { return zero_ ? -std::numeric_limits<double>::infinity() : log_; }
  double log10() const noexcept { return log() / std::log(10.0); }
  /// May overflow to +inf or underflow to 0.
  double value() const noexcept { return zero_ ? 0.0 : std::exp(log_); }

  friend LogNumber operator*(const LogNumber& a, const LogNumber& b) {
    if (a.zero_ || b.zero_) return {};
    return from_log(a.log_ + b.log_);
  }

  friend LogNumber operator/(const LogNumber& a, const LogNumber& b) {
    require(!b.zero_, "LogNumber division by zero");
    if (a.zero_) return {};
    return from_log(a.log_ - b.log_);
  }

  friend LogNumber operator+(const LogNumber& a, const LogNumber& b) {
    if (a.zero_) return b;
    if (b.zero_) return a;
    const double hi = std::max(a.log_, b.log_);
    const double lo = std::min(a.log_, b.log_);
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }

  LogNumber& operator*=(const LogNumber& b) { return *this = *this * b; }
  LogNumber& operator/=(const LogNumber& b) { return *this = *this / b; }
  LogNumber& operator+=(const LogNumber& b) { return *this = *this + b; }

  friend std::partial_ordering operator<=>(const LogNumber& a, const LogNumber& b) {
    if (a.zero_ || b.zero_) return static_cast<int>(!a.zero_) <=> static_cast<int>(!b.zero_);
    return a.log_ <=> b.log_;
  }
  friend bool operator==(const LogNumber& a, const LogNumber& b) { return (a <=> b) == 0; }

  friend LogNumber pow(const LogNumber& base, unsigned exponent) {
    if (exponent == 0) return LogNumber(1.0);
    if (base.zero_) return {};
    return from_log(base.log_ * exponent);
  }

 private:
  static LogNumber from_ratio(const BigInt& num, const BigInt& den) {
    const LogNumber n(num);
    return n.is_zero() ? n : n / LogNumber(den);
  }

  bool zero_ = true;
  double log_ = 0.0;
};

/// Compensated sum of many LogNumbers: terms are scaled by the running maximum
/// and accumulated with Neumaier summation.
class LogSum {
 public:
  void add(const LogNumber& x) {
    if (x.is_zero()) return;
    const double l = x.log();
    if (empty_) {
      empty_ = false;
      scale_ = l;
      sum_ = 1.0;
      comp_ = 0.0;
      return;
    }
    if (l > scale_) {
      const double shrink = std::exp(scale_ - l);
      sum_ *= shrink;
      comp_ *= shrink;
      scale_ = l;
    }
    const double term = std::exp(l - scale_);
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term))
      comp_ += (sum_ - t) + term;
    else
      comp_ += (term - t) + sum_;
    sum_ = t;
  }

  LogNumber total() const {
    if (empty_) return {};
    return LogNumber::from_log(scale_ + std::log(sum_ + comp_));
  }

 private:
  bool empty_ = true;
  double scale_ = 0.0;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace randsurf
