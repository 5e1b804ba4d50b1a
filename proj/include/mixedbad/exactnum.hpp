#pragma once

// Exact arithmetic kernel: GMP-backed integers and rationals, closed rational
// intervals, and exact comparisons involving rational powers of rationals.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mixedbad {

using Integer = mpz_class;
using Rational = mpq_class;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Accepts "n", "-n", "n/d", "-n/d" with decimal digits only; the result is
// canonical (lowest terms, positive denominator).
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// "num/den", or the bare integer when den == 1.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);
Rational abs(const Rational& x);
Rational pow(const Rational& base, unsigned long exponent);

// Closed interval [lo, hi] with rational endpoints, lo <= hi.
class RInterval {
 public:
  RInterval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational length() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RInterval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  friend bool operator==(const RInterval& a, const RInterval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Rational lo_;
  Rational hi_;
};

// "lo,hi"
RInterval parse_interval(std::string_view text);
std::string to_string(const RInterval& interval);

// Order of a against b^(u/v) for a, b >= 0, decided as a^v against b^u.
std::strong_ordering cmp_pow(const Rational& a, const Rational& b,
                             unsigned long u, unsigned long v);

// floor(n^(1/k)) for n >= 0, k >= 1.
Integer ifloor_root(const Integer& n, unsigned long k);

// Closed-interval convention: a shared endpoint counts as intersection.
bool intervals_intersect(const RInterval& a, const RInterval& b);

// Distance from x to the interval; zero when x lies inside.
Rational distance(const RInterval& interval, const Rational& x);

struct PowerFactor {
  Rational base;      // > 0
  Rational exponent;  // any sign
};

// Order of prod(base^exponent) relative to 1. All exponents are cleared to a
// common integer power, so the comparison is a single integer comparison.
std::strong_ordering compare_product_to_one(
    std::span<const PowerFactor> factors);

// base^exponent when it is rational, nullopt otherwise. base > 0.
std::optional<Rational> exact_power(const Rational& base,
                                    const Rational& exponent);

// Largest t >= 0 with 2^-t >= prod(base^exponent), for a product <= 1.
// Gives an exact power-of-two upper bound on an irrational quantity.
unsigned long power_of_two_upper_bound(std::span<const PowerFactor> factors);

// Fractional part of a rational held with 128 fractional bits. For 64-bit q
// the fractional part of q*x is recovered with absolute error below 2^-52.
class FracFixed {
 public:
  explicit FracFixed(const Rational& x);
  double frac_times(std::uint64_t q) const;

 private:
  unsigned __int128 bits_ = 0;
};

// Floating prefilter for "q*I comes within delta of an integer". It answers
// false only when the exact distance is certainly larger than delta; callers
// always follow a true answer with an exact test.
class NearIntegerFilter {
 public:
  explicit NearIntegerFilter(const RInterval& interval);
  bool may_be_within(std::uint64_t q, double delta) const;

 private:
  FracFixed lo_frac_;
  double length_;
};

}  // namespace mixedbad
