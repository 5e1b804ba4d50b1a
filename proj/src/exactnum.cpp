#include "mixedbad/exactnum.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace mixedbad {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

Integer pow_integer(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

unsigned long to_ulong_checked(const Integer& x) {
  if (x < 0 || !x.fits_ulong_p()) {
    throw std::overflow_error("exponent out of range");
  }
  return x.get_ui();
}

}  // namespace

Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (!all_digits(digits)) {
    throw ParseError("invalid integer literal '" + std::string(text) + "'");
  }
  return Integer(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!all_digits(den)) {
    throw ParseError("invalid rational literal '" + std::string(text) + "'");
  }
  Integer n = parse_integer(num);
  Integer d(std::string(den), 10);
  if (d == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  Rational out(n, d);
  out.canonicalize();
  return out;
}

std::string to_string(const Integer& x) { return x.get_str(10); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str(10);
  return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

Integer floor(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Integer ceil(const Rational& x) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Rational pow(const Rational& base, unsigned long exponent) {
  Rational out(pow_integer(base.get_num(), exponent),
               pow_integer(base.get_den(), exponent));
  return out;  // already canonical: powers of coprime integers stay coprime
}

RInterval::RInterval(Rational lo, Rational hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) {
    throw std::invalid_argument("interval with lo > hi: " + to_string(lo_) +
                                "," + to_string(hi_));
  }
}

RInterval parse_interval(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw ParseError("interval literal must be 'lo,hi': '" +
                     std::string(text) + "'");
  }
  Rational lo = parse_rational(text.substr(0, comma));
  Rational hi = parse_rational(text.substr(comma + 1));
  if (lo > hi) {
    throw ParseError("interval literal with lo > hi: '" + std::string(text) +
                     "'");
  }
  return RInterval(std::move(lo), std::move(hi));
}

std::string to_string(const RInterval& interval) {
  return to_string(interval.lo()) + "," + to_string(interval.hi());
}

std::strong_ordering cmp_pow(const Rational& a, const Rational& b,
                             unsigned long u, unsigned long v) {
  if (a < 0 || b < 0) throw std::domain_error("cmp_pow: negative argument");
  if (u == 0 || v == 0) throw std::domain_error("cmp_pow: zero exponent");
  // a^v vs b^u  <=>  an^v * bd^u vs bn^u * ad^v
  Integer lhs = pow_integer(a.get_num(), v) * pow_integer(b.get_den(), u);
  Integer rhs = pow_integer(b.get_num(), u) * pow_integer(a.get_den(), v);
  return cmp(lhs, rhs) <=> 0;
}

Integer ifloor_root(const Integer& n, unsigned long k) {
  if (n < 0) throw std::domain_error("ifloor_root: negative argument");
  if (k == 0) throw std::domain_error("ifloor_root: zero index");
  Integer out;
  mpz_root(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

bool intervals_intersect(const RInterval& a, const RInterval& b) {
  const Rational& lo = a.lo() > b.lo() ? a.lo() : b.lo();
  const Rational& hi = a.hi() < b.hi() ? a.hi() : b.hi();
  return lo <= hi;
}

Rational distance(const RInterval& interval, const Rational& x) {
  if (x < interval.lo()) return interval.lo() - x;
  if (x > interval.hi()) return x - interval.hi();
  return Rational(0);
}

std::strong_ordering compare_product_to_one(
    std::span<const PowerFactor> factors) {
  Integer common = 1;
  for (const auto& f : factors) {
    if (f.base <= 0) {
      throw std::domain_error("compare_product_to_one: non-positive base");
    }
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(),
            f.exponent.get_den_mpz_t());
  }
  Integer lhs = 1;
  Integer rhs = 1;
  for (const auto& f : factors) {
    Integer e = f.exponent.get_num() * (common / f.exponent.get_den());
    if (e > 0) {
      const unsigned long k = to_ulong_checked(e);
      lhs *= pow_integer(f.base.get_num(), k);
      rhs *= pow_integer(f.base.get_den(), k);
    } else if (e < 0) {
      const unsigned long k = to_ulong_checked(Integer(-e));
      lhs *= pow_integer(f.base.get_den(), k);
      rhs *= pow_integer(f.base.get_num(), k);
    }
  }
  return cmp(lhs, rhs) <=> 0;
}

std::optional<Rational> exact_power(const Rational& base,
                                    const Rational& exponent) {
  if (base <= 0) throw std::domain_error("exact_power: non-positive base");
  if (!exponent.get_den().fits_ulong_p() ||
      !Integer(abs(Rational(exponent.get_num()))).fits_ulong_p()) {
    throw std::overflow_error("exact_power: exponent out of range");
  }
  const unsigned long root = exponent.get_den().get_ui();
  Integer num;
  Integer den;
  if (mpz_root(num.get_mpz_t(), base.get_num_mpz_t(), root) == 0) {
    return std::nullopt;
  }
  if (mpz_root(den.get_mpz_t(), base.get_den_mpz_t(), root) == 0) {
    return std::nullopt;
  }
  Rational rooted(num, den);
  rooted.canonicalize();
  const long p = exponent.get_num().get_si();
  Rational out = pow(rooted, static_cast<unsigned long>(p < 0 ? -p : p));
  if (p < 0) out = 1 / out;
  return out;
}

unsigned long power_of_two_upper_bound(std::span<const PowerFactor> factors) {
  std::vector<PowerFactor> with_two(factors.begin(), factors.end());
  with_two.push_back({Rational(2), Rational(0)});
  auto holds = [&](unsigned long t) {
    // prod * 2^t <= 1
    with_two.back().exponent = Rational(static_cast<long>(t));
    return compare_product_to_one(with_two) != std::strong_ordering::greater;
  };
  if (!holds(0)) {
    throw std::domain_error("power_of_two_upper_bound: product exceeds 1");
  }
  double log2_product = 0.0;
  for (const auto& f : factors) {
    const double lb = std::log2(f.base.get_num().get_d()) -
                      std::log2(f.base.get_den().get_d());
    log2_product += f.exponent.get_d() * lb;
  }
  unsigned long t = 0;
  if (std::isfinite(log2_product) && log2_product < -4.0) {
    t = static_cast<unsigned long>(-log2_product) - 2;
    while (t > 0 && !holds(t)) --t;
  }
  while (holds(t + 1)) ++t;
  return t;
}

FracFixed::FracFixed(const Rational& x) {
  Integer rem;
  mpz_fdiv_r(rem.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Integer scaled = rem;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 128);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
  Integer low;
  mpz_fdiv_r_2exp(low.get_mpz_t(), scaled.get_mpz_t(), 64);
  Integer high;
  mpz_fdiv_q_2exp(high.get_mpz_t(), scaled.get_mpz_t(), 64);
  const auto lo64 = static_cast<std::uint64_t>(mpz_get_ui(low.get_mpz_t()));
  const auto hi64 = static_cast<std::uint64_t>(mpz_get_ui(high.get_mpz_t()));
  bits_ = (static_cast<unsigned __int128>(hi64) << 64) | lo64;
}

double FracFixed::frac_times(std::uint64_t q) const {
  const unsigned __int128 p = bits_ * q;
  const auto hi = static_cast<std::uint64_t>(p >> 64);
  const auto lo = static_cast<std::uint64_t>(p);
  return std::ldexp(static_cast<double>(hi), -64) +
         std::ldexp(static_cast<double>(lo), -128);
}

NearIntegerFilter::NearIntegerFilter(const RInterval& interval)
    : lo_frac_(interval.lo()), length_(interval.length().get_d()) {}

bool NearIntegerFilter::may_be_within(std::uint64_t q, double delta) const {
  constexpr double kSlack = 0x1p-48;
  const double scaled_length = static_cast<double>(q) * length_;
  if (!(scaled_length < 0.5)) return true;
  const double f = lo_frac_.frac_times(q);
  if (f + scaled_length >= 1.0 - kSlack) return true;
  const double gap = std::min(f, 1.0 - f - scaled_length);
  return gap <= delta * (1.0 + 1e-9) + kSlack;
}

}  // namespace mixedbad
