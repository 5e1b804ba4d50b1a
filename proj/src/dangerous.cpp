#include "mixedbad/dangerous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mixedbad {

namespace {

unsigned long ulong_of(const Integer& x, const char* what) {
  if (x < 1 || !x.fits_ulong_p()) {
    throw std::invalid_argument(std::string(what) + " out of range");
  }
  return x.get_ui();
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// Largest q >= 0 with q^e < num/den (num/den > 0).
Integer largest_below(const Integer& num, const Integer& den, unsigned long e) {
  Integer bound = num - 1;
  mpz_fdiv_q(bound.get_mpz_t(), bound.get_mpz_t(), den.get_mpz_t());
  return ifloor_root(bound, e);
}

// Smallest q >= 1 with q^e >= num/den.
Integer smallest_at_least(const Integer& num, const Integer& den,
                          unsigned long e) {
  Integer need;
  mpz_cdiv_q(need.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (need <= 1) return Integer(1);
  return ifloor_root(Integer(need - 1), e) + 1;
}

// Lightweight handle to the current denominator: 64-bit when it fits.
struct QRef {
  std::uint64_t small = 0;
  const Integer* big = nullptr;

  Integer value() const {
    if (big) return *big;
    return Integer(static_cast<unsigned long>(small));
  }
};

bool term_dangerous(const NormTerm& term, const Rational& c, const Integer& q) {
  const unsigned long u = ulong_of(term.exponent.get_num(), "exponent");
  const unsigned long v = ulong_of(term.exponent.get_den(), "exponent");
  const Rational norm = d_norm(term.seq, q).value;
  return cmp_pow(norm, Rational(c / q), u, v) == std::strong_ordering::less;
}

// Calls fn(QRef) for candidates q in range that are dangerous for the first
// norm term; for several terms the caller still has to test the others.
// Below the naive threshold each q is tested in full.
template <typename Fn>
void for_each_candidate(const ApproxParams& params, const QRange& range,
                        const Integer& naive_threshold, Fn&& fn) {
  if (range.empty()) return;
  const Integer lo = range.lo < 1 ? Integer(1) : range.lo;
  const Integer& hi = range.hi;
  if (lo > hi) return;

  const NormTerm& first = params.terms().front();
  const Rational& c = params.c();

  // Naive prefix.
  Integer naive_end = hi < naive_threshold ? hi : naive_threshold;
  for (Integer q = lo; q <= naive_end; ++q) {
    if (is_dangerous_q(params, q)) fn(QRef{0, &q});
  }
  Integer start = lo > naive_threshold ? lo : Integer(naive_threshold + 1);
  if (start > hi) return;

  const unsigned long u = ulong_of(first.exponent.get_num(), "exponent");
  const unsigned long v = ulong_of(first.exponent.get_den(), "exponent");
  const Integer c_num_u = ipow(c.get_num(), u);
  const Integer c_den_u = ipow(c.get_den(), u);
  const bool fits64 = hi.fits_ulong_p() && sizeof(unsigned long) == 8;

  auto run_level = [&](const Integer& dk, unsigned long next_digit,
                       const Integer& qmax) {
    Integer top = hi < qmax ? hi : qmax;
    if (top < start) return;
    Integer m_lo;
    mpz_cdiv_q(m_lo.get_mpz_t(), start.get_mpz_t(), dk.get_mpz_t());
    Integer m_hi;
    mpz_fdiv_q(m_hi.get_mpz_t(), top.get_mpz_t(), dk.get_mpz_t());
    if (m_lo > m_hi) return;
    if (fits64) {
      const std::uint64_t d = dk.get_ui();
      const std::uint64_t mh = m_hi.get_ui();
      for (std::uint64_t m = m_lo.get_ui(); m <= mh; ++m) {
        if (m % next_digit == 0) continue;
        fn(QRef{d * m, nullptr});
      }
    } else {
      Integer q;
      for (Integer m = m_lo; m <= m_hi; ++m) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), next_digit)) continue;
        q = dk * m;
        fn(QRef{0, &q});
      }
    }
  };

  // Level 0: |q|_D = 1, dangerous iff q < c.
  {
    Integer qmax0 = ceil(c) - 1;
    run_level(Integer(1), first.seq.digit(1), qmax0);
  }
  Integer dk = 1;
  for (std::size_t k = 1;; ++k) {
    dk *= first.seq.digit(k);
    if (dk > hi) break;
    const Integer qmax = largest_below(c_num_u * ipow(dk, v), c_den_u, u);
    run_level(dk, first.seq.digit(k + 1), qmax);
  }
}

bool other_terms_dangerous(const ApproxParams& params, const Integer& q) {
  const auto& terms = params.terms();
  for (std::size_t t = 1; t < terms.size(); ++t) {
    if (!term_dangerous(terms[t], params.c(), q)) return false;
  }
  return true;
}

}  // namespace

Target::Target(std::vector<NormTerm> terms, Rational j)
    : terms_(std::move(terms)), j_(std::move(j)) {
  if (terms_.empty()) throw std::invalid_argument("target needs a norm term");
  if (j_ <= 0 || j_ >= 1) throw std::invalid_argument("j must lie in (0,1)");
  Rational sum = j_;
  for (const auto& t : terms_) {
    if (t.exponent <= 0 || t.exponent >= 1) {
      throw std::invalid_argument("norm exponents must lie in (0,1)");
    }
    sum += t.exponent;
  }
  if (sum != 1) {
    throw std::invalid_argument("exponents must sum to 1 (got " +
                                to_string(sum) + ")");
  }
}

Target Target::single(DigitSequence seq, Rational i, Rational j) {
  return Target({NormTerm{std::move(seq), std::move(i)}}, std::move(j));
}

ApproxParams::ApproxParams(Target target, Rational c)
    : target_(std::move(target)), c_(std::move(c)) {
  if (c_ <= 0) throw std::invalid_argument("c must be positive");
}

bool is_dangerous_q(const ApproxParams& params, const Integer& q) {
  if (q < 1) throw std::domain_error("denominator must be >= 1");
  for (const auto& term : params.terms()) {
    if (!term_dangerous(term, params.c(), q)) return false;
  }
  return true;
}

namespace {

bool distance_within_delta(const ApproxParams& params, const Rational& dist,
                           const Integer& q) {
  const unsigned long uj = ulong_of(params.j().get_num(), "j");
  const unsigned long vj = ulong_of(params.j().get_den(), "j");
  // dist <= c^j q^-(1+j)  <=>  dist^vj <= c^uj / q^(uj+vj)
  const Rational bound(ipow(params.c().get_num(), uj),
                       ipow(params.c().get_den(), uj) * ipow(q, uj + vj));
  return cmp_pow(dist, bound, 1, vj) != std::strong_ordering::greater;
}

}  // namespace

bool point_in_delta(const ApproxParams& params, const Integer& r,
                    const Integer& q, const Rational& x) {
  Rational center(r, q);
  center.canonicalize();
  return distance_within_delta(params, abs(Rational(x - center)), q);
}

bool interval_meets_delta(const ApproxParams& params, const Integer& r,
                          const Integer& q, const RInterval& interval) {
  Rational center(r, q);
  center.canonicalize();
  return distance_within_delta(params, distance(interval, center), q);
}

QRange band_q_range(const Rational& j, const Rational& ratio, std::size_t n) {
  if (ratio <= 1) throw std::invalid_argument("R must exceed 1");
  if (n == 0) throw std::invalid_argument("band index starts at 1");
  const unsigned long uj = ulong_of(j.get_num(), "j");
  const unsigned long vj = ulong_of(j.get_den(), "j");
  const unsigned long e = uj + vj;
  // q^(1+j) vs R^m  <=>  q^(uj+vj) vs R^(m vj)
  const unsigned long lower_pow = static_cast<unsigned long>(n - 1) * vj;
  const unsigned long upper_pow = static_cast<unsigned long>(n) * vj;
  QRange out;
  out.lo = smallest_at_least(ipow(ratio.get_num(), lower_pow),
                             ipow(ratio.get_den(), lower_pow), e);
  out.hi = largest_below(ipow(ratio.get_num(), upper_pow),
                         ipow(ratio.get_den(), upper_pow), e);
  return out;
}

QRange below_q_range(const Rational& j, const Rational& ratio, std::size_t n) {
  if (n == 0) return {Integer(1), Integer(0)};
  QRange band = band_q_range(j, ratio, n);
  return {Integer(1), band.hi};
}

std::vector<DangerousRational> enumerate_dangerous_between(
    const ApproxParams& params, const QRange& range, const RInterval& interval,
    const EnumerationOptions& options) {
  std::vector<DangerousRational> out;
  const NearIntegerFilter filter(interval);
  const double c_d = params.c().get_d();
  const double j_d = params.j().get_d();
  const double c_pow_j = std::pow(c_d, j_d);
  const bool multi = params.terms().size() > 1;
  const Integer reach = ceil(params.c()) > 1 ? ceil(params.c()) : Integer(1);

  Integer q;
  Integer r_lo;
  Integer r_hi;
  Integer g;
  for_each_candidate(params, range, options.naive_threshold, [&](QRef ref) {
    if (!ref.big) {
      // q*w = c^j q^-j bounds how far q*I may sit from an integer.
      const double delta = c_pow_j * std::pow(static_cast<double>(ref.small), -j_d);
      if (!filter.may_be_within(ref.small, delta)) return;
    }
    q = ref.value();
    if (multi && !other_terms_dangerous(params, q)) return;
    r_lo = floor(Rational(interval.lo() * q)) - reach;
    r_hi = ceil(Rational(interval.hi() * q)) + reach;
    for (Integer r = r_lo; r <= r_hi; ++r) {
      mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
      if (g != 1) continue;
      if (interval_meets_delta(params, r, q, interval)) out.push_back({r, q});
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DangerousRational> enumerate_dangerous_in(
    const ApproxParams& params, const Rational& ratio, std::size_t n,
    const RInterval& interval, const EnumerationOptions& options) {
  return enumerate_dangerous_between(params, band_q_range(params.j(), ratio, n),
                                     interval, options);
}

std::vector<Integer> dangerous_denominators(const ApproxParams& params,
                                            const QRange& range,
                                            const EnumerationOptions& options) {
  std::vector<Integer> out;
  const bool multi = params.terms().size() > 1;
  for_each_candidate(params, range, options.naive_threshold, [&](QRef ref) {
    Integer q = ref.value();
    if (multi && !other_terms_dangerous(params, q)) return;
    out.push_back(std::move(q));
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mixedbad
