#pragma once

// Dangerous rationals and their forbidden neighbourhoods.
//
// A denominator q is dangerous when |q|_{D_t} < (c/q)^{i_t} for every norm
// term t. A reduced r/q with dangerous q forbids the closed neighbourhood
// |x - r/q| <= c^j / q^(1+j). The half-width is irrational in general, so
// every predicate here reduces to an exact comparison of rational powers.

#include <compare>
#include <cstddef>
#include <vector>

#include "mixedbad/dnorm.hpp"
#include "mixedbad/exactnum.hpp"

namespace mixedbad {

struct NormTerm {
  DigitSequence seq;
  Rational exponent;  // i_t in (0,1)

  friend bool operator==(const NormTerm&, const NormTerm&) = default;
};

// The approximation target without its constant: one or more norm terms and
// the exponent j, with i_1 + ... + i_s + j = 1.
class Target {
 public:
  Target(std::vector<NormTerm> terms, Rational j);
  static Target single(DigitSequence seq, Rational i, Rational j);

  const std::vector<NormTerm>& terms() const { return terms_; }
  const Rational& j() const { return j_; }
  // i_1 + ... + i_s, i.e. 1 - j.
  Rational i_total() const { return 1 - j_; }
  bool is_single() const { return terms_.size() == 1; }

  friend bool operator==(const Target&, const Target&) = default;

 private:
  std::vector<NormTerm> terms_;
  Rational j_;
};

class ApproxParams {
 public:
  ApproxParams(Target target, Rational c);

  const Target& target() const { return target_; }
  const std::vector<NormTerm>& terms() const { return target_.terms(); }
  const Rational& j() const { return target_.j(); }
  const Rational& c() const { return c_; }

 private:
  Target target_;
  Rational c_;
};

struct DangerousRational {
  Integer r;
  Integer q;

  friend bool operator==(const DangerousRational& a,
                         const DangerousRational& b) {
    return a.q == b.q && a.r == b.r;
  }
  friend std::strong_ordering operator<=>(const DangerousRational& a,
                                          const DangerousRational& b) {
    if (auto o = cmp(a.q, b.q) <=> 0; o != 0) return o;
    return cmp(a.r, b.r) <=> 0;
  }
};

// Inclusive q range; empty when lo > hi.
struct QRange {
  Integer lo;
  Integer hi;
  bool empty() const { return lo > hi; }
};

bool is_dangerous_q(const ApproxParams& params, const Integer& q);

// |x - r/q| <= c^j / q^(1+j), ties inside.
bool point_in_delta(const ApproxParams& params, const Integer& r,
                    const Integer& q, const Rational& x);

// dist(r/q, I) <= c^j / q^(1+j), tangency counts as meeting.
bool interval_meets_delta(const ApproxParams& params, const Integer& r,
                          const Integer& q, const RInterval& interval);

// q with R^(n-1) <= q^(1+j) < R^n.
QRange band_q_range(const Rational& j, const Rational& ratio, std::size_t n);
// q >= 1 with q^(1+j) < R^n; empty for n == 0.
QRange below_q_range(const Rational& j, const Rational& ratio, std::size_t n);

struct EnumerationOptions {
  // Denominators up to this bound are tested one by one.
  Integer naive_threshold = 10000;
};

// Every coprime r/q with q in range, q dangerous and the neighbourhood of r/q
// meeting the interval. Sorted by (q, r).
std::vector<DangerousRational> enumerate_dangerous_between(
    const ApproxParams& params, const QRange& range, const RInterval& interval,
    const EnumerationOptions& options = {});

std::vector<DangerousRational> enumerate_dangerous_in(
    const ApproxParams& params, const Rational& ratio, std::size_t n,
    const RInterval& interval, const EnumerationOptions& options = {});

// Every dangerous q in range, ascending.
std::vector<Integer> dangerous_denominators(
    const ApproxParams& params, const QRange& range,
    const EnumerationOptions& options = {});

}  // namespace mixedbad
