#pragma once

// Exact quadratic irrationals p + s*sqrt(d) with rational p, s and a fixed
// square-free radicand d >= 2. Order, floor and decimal truncation are decided
// by sign analysis and squaring; nothing is rounded.

#include <compare>
#include <string>
#include <string_view>

#include "mixedbad/exactnum.hpp"

namespace mixedbad {

class QuadraticSurd {
 public:
  // (a + b sqrt(d)) / e
  QuadraticSurd(const Integer& a, const Integer& b, const Integer& d,
                const Integer& e);

  // "surd:a,b,d,e"
  static QuadraticSurd parse(std::string_view literal);

  const Rational& rational_part() const { return p_; }
  const Rational& radical_coeff() const { return s_; }
  const Integer& radicand() const { return d_; }

  int sign() const;
  Integer floor() const;
  // Truncation toward -infinity with `digits` fractional digits; the exact
  // value lies in [result, result + 10^-digits).
  std::string truncated_decimal(unsigned digits) const;

  QuadraticSurd operator+(const Rational& x) const;
  QuadraticSurd operator-(const Rational& x) const;
  QuadraticSurd operator*(const Rational& x) const;
  QuadraticSurd operator-() const;
  QuadraticSurd operator-(const QuadraticSurd& other) const;

  friend std::strong_ordering operator<=>(const QuadraticSurd& a,
                                          const QuadraticSurd& b);
  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b);
  friend std::strong_ordering operator<=>(const QuadraticSurd& a,
                                          const Rational& b);
  friend bool operator==(const QuadraticSurd& a, const Rational& b);

  std::string to_string() const;

 private:
  QuadraticSurd(Rational p, Rational s, Integer d);

  Rational p_;
  Rational s_;
  Integer d_;
};

// Truncated decimal of a nonnegative rational, same convention as above.
std::string truncated_decimal(const Rational& x, unsigned digits);

}  // namespace mixedbad
