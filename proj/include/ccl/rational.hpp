#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace ccl {

// Exact rational amount. boost::rational keeps values in canonical reduced
// form (positive denominator, gcd 1); parse() bounds the digits it accepts so
// that int64 arithmetic on admissible instances cannot overflow.
class Money {
 public:
  Money() : r_(0) {}
  Money(long long units) : r_(units) {}  // NOLINT: implicit by design, Money(3)
  Money(long long num, long long den) : r_(num, den) {}

  // Accepts integers ("3", "-12"), decimal strings ("1.5", "-0.25") and
  // fraction strings ("7/4"). Returns nullopt on malformed or oversized input.
  static std::optional<Money> parse(const std::string& text);

  long long num() const { return r_.numerator(); }
  long long den() const { return r_.denominator(); }
  bool is_integer() const { return r_.denominator() == 1; }
  bool is_negative() const { return r_.numerator() < 0; }
  bool is_zero() const { return r_.numerator() == 0; }

  // Shortest exact rendering: integer, terminating decimal, or "p/q".
  std::string str() const;

  // Audit hook: true when stored in canonical reduced form.
  bool canonical() const;

  Money operator-() const {
    Money m;
    m.r_ = -r_;
    return m;
  }
  Money& operator+=(const Money& o) {
    r_ += o.r_;
    return *this;
  }
  Money& operator-=(const Money& o) {
    r_ -= o.r_;
    return *this;
  }
  Money& operator*=(const Money& o) {
    r_ *= o.r_;
    return *this;
  }
  friend Money operator+(Money a, const Money& b) { return a += b; }
  friend Money operator-(Money a, const Money& b) { return a -= b; }
  friend Money operator*(Money a, const Money& b) { return a *= b; }

  friend bool operator==(const Money& a, const Money& b) { return a.r_ == b.r_; }
  friend std::strong_ordering operator<=>(const Money& a, const Money& b) {
    if (a.r_ < b.r_) return std::strong_ordering::less;
    if (b.r_ < a.r_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  boost::rational<long long> r_;
};

}  // namespace ccl
