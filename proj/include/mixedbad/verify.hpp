#pragma once

// Independent oracles. Nothing here calls the enumeration used by the
// strategy: denominators are walked one by one up to a cap and then level by
// level (every q has exactly one level omega(q)), with the norm, the
// dangerous test and the neighbourhood test all recomputed locally.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mixedbad/dangerous.hpp"
#include "mixedbad/surd.hpp"

namespace mixedbad {

struct OracleOptions {
  // Every q up to this bound is tested individually.
  Integer naive_cap = 100000;
  // 0 means: MIXEDBAD_WORKERS if set, else hardware concurrency.
  unsigned workers = 0;
  // Stop after this many witnesses; 0 keeps all.
  std::size_t max_witnesses = 0;
  // Per-q records kept in a MembershipReport.
  std::size_t max_records = 1000;
};

unsigned resolve_workers(unsigned requested);

// Every coprime r/q with q in [q_lo, q_hi], q dangerous and the closed
// neighbourhood of r/q meeting the interval. Sorted by (q, r).
std::vector<DangerousRational> delta_avoidance_oracle(
    const RInterval& interval, const ApproxParams& params, const Integer& q_lo,
    const Integer& q_hi, const OracleOptions& options = {});

struct QRecord {
  Integer q;
  Rational norm;          // |q|_D of the first norm term
  Rational min_distance;  // min over x in I of ||q x||
  bool passes = false;
  bool boundary = false;  // some norm term sits exactly on c/q
};

struct MembershipReport {
  RInterval interval;
  Integer q_max;
  Rational c;
  std::size_t candidates = 0;  // q not cleared by the norm terms alone
  std::vector<QRecord> records;
  std::vector<Integer> violations;     // direct definition fails at q
  std::vector<Integer> boundary_qs;    // equality cases, flagged separately
  std::vector<DangerousRational> delta_violations;
  std::optional<Rational> c_eff;

  bool direct_ok() const { return violations.empty(); }
  bool delta_ok() const { return delta_violations.empty(); }
};

// Checks max{|q|_{D_t}^(1/i_t), ||qx||^(1/j)} > c/q for all x in I and all
// q <= q_max, and separately the neighbourhood-avoidance predicate.
MembershipReport check_membership(const RInterval& interval,
                                  const ApproxParams& params,
                                  const Integer& q_max,
                                  const OracleOptions& options = {});

struct BadnessOptions {
  OracleOptions oracle;
  // Exponent to start the search from; a good guess avoids large candidate
  // sets. The answer does not depend on it.
  unsigned long start_exponent = 0;
};

// Largest c = 2^-t, t <= t_max, for which the direct definition holds on the
// interval for every q <= q_max; nullopt when even 2^-t_max fails.
std::optional<Rational> effective_badness(const RInterval& interval,
                                          const Target& target,
                                          const Integer& q_max,
                                          unsigned long t_max,
                                          const BadnessOptions& options = {});

struct FactFailure {
  std::string fact;  // "fact1", "fact2-gcd", "fact2-gap"
  std::size_t band;
  Integer q1;
  Integer q2;  // equals q1 for fact1
};

struct BandFacts {
  std::size_t band;
  QRange range;  // as checked, clipped to q_cap
  bool clipped = false;
  std::size_t members = 0;  // dangerous denominators
};

struct FactsReport {
  std::vector<BandFacts> bands;
  std::vector<FactFailure> failures;
  std::size_t failure_count = 0;
  bool ok() const { return failure_count == 0; }
};

// For every band n <= n_max (clipped to q <= q_cap): each dangerous q has
// 2 c^j / q^(1+j) < |B_{n+1}| / 2; each pair has
// gcd(q1,q2) > c^-i R^((n-1)i/(j+1)) and gcd(q1,q2)/(q1 q2) > 2 |B_{n+1}|.
// |B_{n+1}| = R^-n |B_1|.
FactsReport facts_check(const ApproxParams& params, const Rational& ratio,
                        const Rational& b1_length, std::size_t n_max,
                        const Integer& q_cap,
                        std::size_t max_failures = 100);

using ScanPoint = std::variant<Rational, QuadraticSurd>;

struct ScanRecord {
  Integer q;
  ScanPoint value;  // q |q|_D ||q x||
};

// Rows where the running minimum of q |q|_D ||q x|| strictly decreases
// (the first row always appears); the running minimum of a row is its value.
std::vector<ScanRecord> liminf_scan(const ScanPoint& x, const DigitSequence& seq,
                                    const Integer& q_max);

// ||y|| for a surd y, exactly.
QuadraticSurd nearest_integer_distance(const QuadraticSurd& y);
Rational nearest_integer_distance(const Rational& y);

std::string render_scan_value(const ScanPoint& v);
// "q,value,running_min" rows with header.
std::string render_scan_csv(const std::vector<ScanRecord>& rows);

}  // namespace mixedbad
