#include "mixedbad/surd.hpp"

#include <stdexcept>
#include <vector>

namespace mixedbad {

namespace {

bool square_free(const Integer& d) {
  Integer rest = d;
  for (unsigned long p = 2;; ++p) {
    const Integer pp = Integer(p) * p;
    if (pp > rest) return true;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) return false;
    }
  }
}

int sgn(const Rational& x) { return ::sgn(x); }

Integer isqrt(const Integer& n) {
  Integer out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

std::string decimal_from_scaled(bool negative, const Integer& magnitude, unsigned digits) {
  // magnitude = floor(|x| * 10^digits)
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, digits);
  Integer whole;
  Integer frac;
  mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), magnitude.get_mpz_t(),
              ten_pow.get_mpz_t());
  std::string out = (negative ? "-" : "") + whole.get_str(10);
  if (digits == 0) return out;
  std::string tail = frac.get_str(10);
  out += '.';
  out += std::string(digits - tail.size(), '0') + tail;
  return out;
}

}  // namespace

QuadraticSurd::QuadraticSurd(const Integer& a, const Integer& b,
                             const Integer& d, const Integer& e)
    : d_(d) {
  if (e <= 0) throw std::invalid_argument("surd denominator must be positive");
  if (d < 2 || !square_free(d)) {
    throw std::invalid_argument("surd radicand must be square-free and >= 2");
  }
  p_ = Rational(a, e);
  p_.canonicalize();
  s_ = Rational(b, e);
  s_.canonicalize();
}

QuadraticSurd::QuadraticSurd(Rational p, Rational s, Integer d)
    : p_(std::move(p)), s_(std::move(s)), d_(std::move(d)) {}

QuadraticSurd QuadraticSurd::parse(std::string_view literal) {
  if (!literal.starts_with("surd:")) {
    throw ParseError("surd literal must start with 'surd:'");
  }
  std::string_view rest = literal.substr(5);
  std::vector<Integer> parts;
  while (true) {
    const auto comma = rest.find(',');
    parts.push_back(parse_integer(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (parts.size() != 4) {
    throw ParseError("surd literal needs four integers a,b,d,e: '" +
                     std::string(literal) + "'");
  }
  try {
    return QuadraticSurd(parts[0], parts[1], parts[2], parts[3]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

int QuadraticSurd::sign() const {
  const int sp = sgn(p_);
  const int ss = sgn(s_);
  if (ss == 0) return sp;
  if (sp == 0 || sp == ss) return ss;
  // Opposite signs: compare p^2 with s^2 d (never equal, d is not a square).
  const Rational lhs = p_ * p_;
  const Rational rhs = s_ * s_ * d_;
  return lhs > rhs ? sp : ss;
}

Integer QuadraticSurd::floor() const {
  // (A + B sqrt(d)) / C with C = lcm of the denominators.
  Integer c;
  mpz_lcm(c.get_mpz_t(), p_.get_den_mpz_t(), s_.get_den_mpz_t());
  const Integer a = p_.get_num() * (c / p_.get_den());
  const Integer b = s_.get_num() * (c / s_.get_den());
  Integer y_floor;
  if (b == 0) {
    y_floor = 0;
  } else {
    const Integer root = isqrt(Integer(b * b * d_));
    y_floor = b > 0 ? root : Integer(-root - 1);
  }
  // B sqrt(d) lies strictly between y_floor and y_floor + 1, so the floor of
  // (A + B sqrt(d)) / C equals the floor of (A + y_floor) / C.
  Integer out;
  const Integer num = a + y_floor;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), c.get_mpz_t());
  return out;
}

std::string QuadraticSurd::truncated_decimal(unsigned digits) const {
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, digits);
  const bool negative = sign() < 0;
  const QuadraticSurd scaled = *this * Rational(negative ? -ten_pow : ten_pow);
  return decimal_from_scaled(negative, scaled.floor(), digits);
}

QuadraticSurd QuadraticSurd::operator+(const Rational& x) const {
  return QuadraticSurd(Rational(p_ + x), s_, d_);
}

QuadraticSurd QuadraticSurd::operator-(const Rational& x) const {
  return QuadraticSurd(Rational(p_ - x), s_, d_);
}

QuadraticSurd QuadraticSurd::operator*(const Rational& x) const {
  return QuadraticSurd(Rational(p_ * x), Rational(s_ * x), d_);
}

QuadraticSurd QuadraticSurd::operator-() const {
  return QuadraticSurd(Rational(-p_), Rational(-s_), d_);
}

QuadraticSurd QuadraticSurd::operator-(const QuadraticSurd& other) const {
  if (other.d_ != d_ && other.s_ != 0 && s_ != 0) {
    throw std::invalid_argument("surds with different radicands");
  }
  return QuadraticSurd(Rational(p_ - other.p_), Rational(s_ - other.s_),
                       s_ != 0 ? d_ : other.d_);
}

std::strong_ordering operator<=>(const QuadraticSurd& a,
                                 const QuadraticSurd& b) {
  return (a - b).sign() <=> 0;
}

bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const QuadraticSurd& a, const Rational& b) {
  return (a - b).sign() <=> 0;
}

bool operator==(const QuadraticSurd& a, const Rational& b) {
  return (a <=> b) == 0;
}

std::string QuadraticSurd::to_string() const {
  return mixedbad::to_string(p_) + " + " + mixedbad::to_string(s_) + "*sqrt(" +
         d_.get_str(10) + ")";
}

std::string truncated_decimal(const Rational& x, unsigned digits) {
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, digits);
  const bool negative = sgn(x) < 0;
  return decimal_from_scaled(negative, floor(Rational(abs(x) * ten_pow)), digits);
}

}  // namespace mixedbad
