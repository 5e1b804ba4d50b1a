#include <random>

#include "doctest.h"
#include "mixedbad/strategy.hpp"
#include "mixedbad/verify.hpp"
#include "oracles.hpp"

using namespace mixedbad;

namespace {

Rational q(long n, long d = 1) {
  Rational out(n, d);
  out.canonicalize();
  return out;
}

RInterval iv(Rational lo, Rational hi) { return RInterval(std::move(lo), std::move(hi)); }

Rational nearest(const Rational& y) {
  const Rational f = y - floor(y);
  return f < 1 - f ? f : Rational(1 - f);
}

OracleOptions small_cap(long cap) {
  OracleOptions o;
  o.naive_cap = cap;
  return o;
}

}  // namespace

TEST_CASE("the neighbourhood oracle agrees with the strategy's enumeration") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<long> num(0, 1 << 24);
  for (const char* seq : {"per:2", "per:3", "per:2,3", "pre:5|per:2"}) {
    for (const auto& [i, j] : {std::pair{q(1, 3), q(2, 3)}, std::pair{q(1, 2), q(1, 2)},
                               std::pair{q(2, 3), q(1, 3)}}) {
      const ApproxParams p(Target::single(DigitSequence::parse(seq), i, j), q(1, 16));
      for (int trial = 0; trial < 3; ++trial) {
        const Rational lo = q(num(rng), 1 << 24);
        const RInterval interval(lo, Rational(lo + q(1 + num(rng) % 512, 1 << 24)));
        const auto fast = enumerate_dangerous_between(p, {1, 300000}, interval);
        CHECK(delta_avoidance_oracle(interval, p, 1, 300000) == fast);
        CHECK(delta_avoidance_oracle(interval, p, 1, 300000, small_cap(50)) == fast);
        auto split = delta_avoidance_oracle(interval, p, 1, 1234, small_cap(10));
        const auto rest = delta_avoidance_oracle(interval, p, 1235, 300000, small_cap(10));
        split.insert(split.end(), rest.begin(), rest.end());
        CHECK(split == fast);
      }
    }
  }
}

TEST_CASE("oracle output does not depend on the worker count") {
  const ApproxParams p(Target::single(DigitSequence::constant(2), q(1, 3), q(2, 3)), q(1, 4));
  const RInterval interval(q(1, 7), q(1, 7) + q(1, 1 << 16));
  OracleOptions one;
  one.workers = 1;
  OracleOptions four;
  four.workers = 4;
  CHECK(delta_avoidance_oracle(interval, p, 1, 1000000, one) ==
        delta_avoidance_oracle(interval, p, 1, 1000000, four));
}

TEST_CASE("membership records the exact minimum of ||qx|| over the interval") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> num(0, 1 << 16);
  // c = 8 keeps plenty of candidates.
  const ApproxParams p(Target::single(DigitSequence::constant(2), q(1, 2), q(1, 2)), q(8));
  for (int trial = 0; trial < 10; ++trial) {
    const Rational lo = q(num(rng), 1 << 16);
    const RInterval interval(lo, Rational(lo + q(1 + num(rng) % 64, 1 << 16)));
    OracleOptions o;
    o.max_records = 100000;
    const MembershipReport report = check_membership(interval, p, 2000, o);
    CHECK(report.records.size() == report.candidates);
    CHECK(report.candidates > 0);
    for (const auto& rec : report.records) {
      constexpr int kSamples = 64;
      Rational best = 1;
      for (int s = 0; s <= kSamples; ++s) {
        const Rational x = interval.lo() + interval.length() * s / kSamples;
        const Rational d = nearest(Rational(x * rec.q));
        if (d < best) best = d;
      }
      // The sampled minimum brackets the exact one within the sample spacing.
      CHECK(rec.min_distance <= best);
      CHECK(best - rec.min_distance <= interval.length() * rec.q / kSamples);
      CHECK(rec.norm == d_norm(DigitSequence::constant(2), rec.q).value);
    }
  }
}

TEST_CASE("membership on and near rational points") {
  const Target t = Target::single(DigitSequence::constant(2), q(1, 2), q(1, 2));
  const RInterval third(q(1, 3) - q(1, 1000000000), q(1, 3) + q(1, 1000000000));
  // With c = 3 every q <= 3 fails; q = 3 sits exactly on the norm bound.
  const MembershipReport bad = check_membership(third, ApproxParams(t, q(3)), 3);
  CHECK(bad.violations == std::vector<Integer>{1, 2, 3});
  CHECK(bad.boundary_qs == std::vector<Integer>{3});
  // A small constant clears every odd q through the norm alone.
  const MembershipReport good =
      check_membership(third, ApproxParams(t, q(1, 4096)), 1000);
  for (const auto& rec : good.records) CHECK(rec.q % 2 == 0);
}

TEST_CASE("effective badness") {
  const Target t = Target::single(DigitSequence::constant(2), q(1, 2), q(1, 2));
  const RInterval point(q(1, 3), q(1, 3));
  // q = 3 * 2^24 is the last multiple of 3 under 10^8 with the largest
  // 2-part; it forces c < 3 * 2^-24.
  CHECK(effective_badness(point, t, 100000000, 30) == q(1, 1 << 23));
  CHECK_FALSE(effective_badness(point, t, 100000000, 20).has_value());
  BadnessOptions hint;
  hint.start_exponent = 28;
  CHECK(effective_badness(point, t, 100000000, 30, hint) == q(1, 1 << 23));

  const RInterval near(q(2, 7), q(2, 7) + q(1, 1 << 20));
  std::optional<Rational> previous;
  for (long qmax : {10L, 1000L, 100000L, 10000000L}) {
    const auto c = effective_badness(near, t, qmax, 60);
    REQUIRE(c.has_value());
    if (previous) CHECK(*c <= *previous);
    previous = c;
  }
}

TEST_CASE("facts hold on a grid configuration and fail for an oversized constant") {
  const Target t = Target::single(DigitSequence::constant(2), q(1, 2), q(1, 2));
  const FactsReport ok = facts_check(ApproxParams(t, q(1, 4096)), q(8), q(1), 40, 100000);
  CHECK(ok.ok());
  CHECK(ok.bands.back().clipped);
  std::size_t members = 0;
  for (const auto& b : ok.bands) members += b.members;
  CHECK(members > 0);

  const FactsReport bad = facts_check(ApproxParams(t, q(1)), q(8), q(1), 40, 100000);
  CHECK_FALSE(bad.ok());
  bool fact1 = false;
  for (const auto& f : bad.failures) fact1 = fact1 || f.fact == "fact1";
  CHECK(fact1);
}

TEST_CASE("quadratic surds") {
  const QuadraticSurd root2 = QuadraticSurd::parse("surd:0,1,2,1");
  CHECK(root2.floor() == 1);
  CHECK((-root2).floor() == -2);
  CHECK(root2 > q(1414, 1000));
  CHECK(root2 < q(1415, 1000));
  CHECK(root2.truncated_decimal(13) == "1.4142135623730");
  CHECK((-root2).truncated_decimal(3) == "-1.414");
  const QuadraticSurd golden = QuadraticSurd::parse("surd:1,1,5,2");
  CHECK(golden.floor() == 1);
  CHECK(golden.sign() == 1);
  CHECK(QuadraticSurd::parse("surd:3,-2,2,1").sign() == 1);   // 3 - 2.828
  CHECK(QuadraticSurd::parse("surd:-3,2,2,1").sign() == -1);
  CHECK_THROWS(QuadraticSurd::parse("surd:0,1,4,1"));
  CHECK_THROWS(QuadraticSurd::parse("surd:0,1,2,0"));
  CHECK_THROWS(QuadraticSurd::parse("surd:0,1,2"));
  CHECK_THROWS(QuadraticSurd::parse("0,1,2,1"));
}

TEST_CASE("surd distances agree with 200-bit floats") {
  const QuadraticSurd root2 = QuadraticSurd::parse("surd:0,1,2,1");
  for (unsigned long qv = 1; qv <= 10000; ++qv) {
    const QuadraticSurd d = nearest_integer_distance(root2 * Rational(Integer(qv)));
    const double exact_trunc = oracle::decimal(d.truncated_decimal(13));
    const double numeric = oracle::surd_distance(0, 1, 2, 1, qv).to_double();
    CHECK(std::abs(exact_trunc - numeric) < 1e-12);
  }
}

TEST_CASE("liminf scans") {
  const auto third = liminf_scan(ScanPoint(q(1, 3)), DigitSequence::constant(2), 10);
  REQUIRE(!third.empty());
  CHECK(third.back().q == 3);
  CHECK(std::get<Rational>(third.back().value) == 0);
  CHECK(render_scan_csv(third) == "q,value,running_min\n1,1/3,1/3\n3,0,0\n");

  const auto root2 = liminf_scan(ScanPoint(QuadraticSurd::parse("surd:0,1,2,1")),
                                 DigitSequence::constant(2), 2000);
  const auto& first = std::get<QuadraticSurd>(root2.front().value);
  CHECK(first == QuadraticSurd::parse("surd:-1,1,2,1"));
  CHECK(render_scan_value(root2.front().value) == "0.4142135623730");
  for (std::size_t k = 1; k < root2.size(); ++k) {
    CHECK(std::get<QuadraticSurd>(root2[k].value) <
          std::get<QuadraticSurd>(root2[k - 1].value));
    CHECK(std::get<QuadraticSurd>(root2[k].value).sign() > 0);
  }
}
