#include "mixedbad/dnorm.hpp"

#include <limits>
#include <stdexcept>

namespace mixedbad {

namespace {

std::vector<unsigned long> parse_digit_list(std::string_view text,
                                            std::string_view literal) {
  std::vector<unsigned long> out;
  while (true) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    if (item.empty()) {
      throw ParseError("empty digit in sequence literal '" +
                       std::string(literal) + "'");
    }
    Integer value;
    try {
      value = parse_integer(item);
    } catch (const ParseError&) {
      throw ParseError("invalid digit '" + std::string(item) +
                       "' in sequence literal '" + std::string(literal) + "'");
    }
    if (value < 2 || !value.fits_ulong_p()) {
      throw ParseError("sequence digits must be integers >= 2: '" +
                       std::string(literal) + "'");
    }
    out.push_back(value.get_ui());
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string join(const std::vector<unsigned long>& digits) {
  std::string out;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(digits[k]);
  }
  return out;
}

}  // namespace

DigitSequence::DigitSequence(std::vector<unsigned long> preperiod,
                             std::vector<unsigned long> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) {
    throw std::invalid_argument("digit sequence needs a nonempty period");
  }
  for (auto d : preperiod_) {
    if (d < 2) throw std::invalid_argument("digit sequence entry below 2");
  }
  for (auto d : period_) {
    if (d < 2) throw std::invalid_argument("digit sequence entry below 2");
  }
}

DigitSequence DigitSequence::constant(unsigned long digit) {
  return DigitSequence({}, {digit});
}

DigitSequence DigitSequence::parse(std::string_view literal) {
  std::string_view rest = literal;
  std::vector<unsigned long> pre;
  if (rest.starts_with("pre:")) {
    const auto bar = rest.find('|');
    if (bar == std::string_view::npos) {
      throw ParseError("sequence literal with preperiod needs '|per:...': '" +
                       std::string(literal) + "'");
    }
    pre = parse_digit_list(rest.substr(4, bar - 4), literal);
    rest.remove_prefix(bar + 1);
  }
  if (!rest.starts_with("per:")) {
    throw ParseError("sequence literal must contain 'per:': '" +
                     std::string(literal) + "'");
  }
  return DigitSequence(std::move(pre), parse_digit_list(rest.substr(4), literal));
}

unsigned long DigitSequence::digit(std::size_t n) const {
  if (n == 0) throw std::out_of_range("digit index starts at 1");
  if (n <= preperiod_.size()) return preperiod_[n - 1];
  return period_[(n - 1 - preperiod_.size()) % period_.size()];
}

std::string DigitSequence::to_string() const {
  std::string out;
  if (!preperiod_.empty()) out = "pre:" + join(preperiod_) + "|";
  return out + "per:" + join(period_);
}

Integer capital_d(const DigitSequence& seq, std::size_t n) {
  Integer out = 1;
  for (std::size_t k = 1; k <= n; ++k) out *= seq.digit(k);
  return out;
}

std::size_t omega(const DigitSequence& seq, const Integer& q) {
  if (q < 1) throw std::domain_error("omega is defined for q >= 1 only");
  // D_n | q  <=>  d_{n} divides q / D_{n-1}
  Integer rest = q;
  std::size_t level = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), seq.digit(level + 1))) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), seq.digit(level + 1));
    ++level;
  }
  return level;
}

DNormValue d_norm(const DigitSequence& seq, const Integer& q) {
  const std::size_t level = omega(seq, q);
  return {level, Rational(Integer(1), capital_d(seq, level))};
}

}  // namespace mixedbad
