#pragma once

// Pseudo-norms attached to a bounded digit sequence d_1, d_2, ... (d_n >= 2):
// D_n = d_1 * ... * d_n, omega(q) = max{n : D_n | q}, |q|_D = 1 / D_omega(q).

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mixedbad/exactnum.hpp"

namespace mixedbad {

// Eventually periodic digit sequence. Literal syntax: "per:2", "per:2,3",
// "pre:5|per:2,3".
class DigitSequence {
 public:
  DigitSequence(std::vector<unsigned long> preperiod,
                std::vector<unsigned long> period);

  static DigitSequence constant(unsigned long digit);
  static DigitSequence parse(std::string_view literal);

  // d_n for n >= 1.
  unsigned long digit(std::size_t n) const;

  const std::vector<unsigned long>& preperiod() const { return preperiod_; }
  const std::vector<unsigned long>& period() const { return period_; }

  std::string to_string() const;

  friend bool operator==(const DigitSequence&, const DigitSequence&) = default;

 private:
  std::vector<unsigned long> preperiod_;
  std::vector<unsigned long> period_;
};

struct DNormValue {
  std::size_t level;  // omega(q)
  Rational value;     // 1 / D_level
};

Integer capital_d(const DigitSequence& seq, std::size_t n);

// Throws std::domain_error for q < 1.
std::size_t omega(const DigitSequence& seq, const Integer& q);
DNormValue d_norm(const DigitSequence& seq, const Integer& q);

}  // namespace mixedbad
