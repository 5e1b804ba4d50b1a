#include "mixedbad/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

namespace mixedbad {

namespace {

Integer ipow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Rational half_power(unsigned long t) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, t);
  return Rational(Integer(1), den);
}

// Runs fn(0..count-1) on a small pool; results are merged by the caller in
// task order, so output never depends on the worker count.
void run_tasks(std::size_t count, unsigned workers,
               const std::function<void(std::size_t)>& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, count));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          fn(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// One norm term with the constant folded in:
//   |q|_D  vs  (c/q)^(u/v)   <=>   (q c_den)^u  vs  c_num^u D^v.
struct TermTest {
  const DigitSequence* seq;
  unsigned long u;
  unsigned long v;
  Integer c_num_u;
  Integer c_den;

  TermTest(const NormTerm& term, const Rational& c)
      : seq(&term.seq),
        u(term.exponent.get_num().get_ui()),
        v(term.exponent.get_den().get_ui()),
        c_num_u(ipow(c.get_num(), u)),
        c_den(c.get_den()) {}

  // D_level for this sequence.
  Integer capital(std::size_t level) const {
    Integer out = 1;
    for (std::size_t k = 1; k <= level; ++k) out *= seq->digit(k);
    return out;
  }

  std::size_t level_of(const Integer& q) const {
    Integer rest = q;
    std::size_t level = 0;
    Integer quot;
    Integer rem;
    while (true) {
      mpz_fdiv_qr_ui(quot.get_mpz_t(), rem.get_mpz_t(), rest.get_mpz_t(),
                     seq->digit(level + 1));
      if (rem != 0) return level;
      rest = quot;
      ++level;
    }
  }

  // -1: |q|_D below (c/q)^i, 0: equal, +1: above.
  int compare(const Integer& q, const Integer& dk) const {
    const Integer lhs = ipow(Integer(q * c_den), u);
    const Integer rhs = c_num_u * ipow(dk, v);
    // |q|_D < (c/q)^i  <=>  lhs < rhs
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
  }
};

struct WalkTask {
  bool naive = false;
  Integer a;  // naive: first q
  Integer b;  // naive: last q
  std::size_t level = 0;
  Integer dk;
  unsigned long next_digit = 0;
};

struct Walk {
  std::vector<TermTest> terms;
  bool strict = true;
  Integer q_lo;
  Integer q_hi;
  Integer naive_cap;
  std::vector<WalkTask> tasks;
  const std::atomic<bool>* stop = nullptr;

  Walk(const std::vector<NormTerm>& norm_terms, const Rational& c, bool strict_,
       const Integer& lo, const Integer& hi, const Integer& cap)
      : strict(strict_), q_lo(lo < 1 ? Integer(1) : lo), q_hi(hi),
        naive_cap(cap) {
    for (const auto& t : norm_terms) terms.emplace_back(t, c);
    if (q_lo > q_hi) return;
    const Integer naive_end = q_hi < naive_cap ? q_hi : naive_cap;
    constexpr unsigned long kChunk = 25000;
    for (Integer a = q_lo; a <= naive_end; a += kChunk) {
      Integer b = a + (kChunk - 1);
      if (b > naive_end) b = naive_end;
      tasks.push_back({true, a, b, 0, Integer(0), 0});
    }
    const TermTest& first = terms.front();
    Integer dk = 1;
    for (std::size_t k = 0; dk <= q_hi; ++k) {
      tasks.push_back({false, Integer(0), Integer(0), k, dk,
                       first.seq->digit(k + 1)});
      dk *= first.seq->digit(k + 1);
    }
  }

  bool accepts(int cmp_result) const {
    return strict ? cmp_result < 0 : cmp_result <= 0;
  }

  // fn(q, boundary) for every q whose norm terms all sit below c/q.
  template <typename Fn>
  void run(const WalkTask& task, Fn&& fn) const {
    if (task.naive) {
      for (Integer q = task.a; q <= task.b; ++q) {
        if (stop && stop->load(std::memory_order_relaxed)) return;
        bool all = true;
        bool boundary = false;
        for (const auto& t : terms) {
          const int r = t.compare(q, t.capital(t.level_of(q)));
          if (!accepts(r)) {
            all = false;
            break;
          }
          boundary = boundary || r == 0;
        }
        if (all) fn(q, boundary);
      }
      return;
    }
    const Integer start = q_lo > naive_cap ? q_lo : Integer(naive_cap + 1);
    Integer m;
    mpz_cdiv_q(m.get_mpz_t(), start.get_mpz_t(), task.dk.get_mpz_t());
    if (m < 1) m = 1;
    const TermTest& first = terms.front();
    auto accepted = [&](const Integer& mm) {
      return accepts(first.compare(Integer(task.dk * mm), task.dk));
    };
    // The first term only grows with q, so at this level it holds exactly on
    // an initial run of multipliers; find its end by galloping.
    if (!accepted(m)) return;
    Integer good = m;
    Integer step = 1;
    Integer bad;
    while (true) {
      const Integer probe = good + step;
      if (probe * task.dk > q_hi) {
        bad = probe;
        break;
      }
      if (!accepted(probe)) {
        bad = probe;
        break;
      }
      good = probe;
      step *= 2;
    }
    while (bad - good > 1) {
      const Integer mid = (good + bad) / 2;
      if (mid * task.dk <= q_hi && accepted(mid)) {
        good = mid;
      } else {
        bad = mid;
      }
    }
    Integer m_end;
    mpz_fdiv_q(m_end.get_mpz_t(), q_hi.get_mpz_t(), task.dk.get_mpz_t());
    if (good < m_end) m_end = good;
    const bool edge = first.compare(Integer(task.dk * m_end), task.dk) == 0;

    Integer q = task.dk * m;
    for (; m <= m_end; q += task.dk, ++m) {
      if (stop && stop->load(std::memory_order_relaxed)) return;
      // Exactly at this level: the next digit must not divide m.
      if (mpz_divisible_ui_p(m.get_mpz_t(), task.next_digit)) continue;
      bool all = true;
      bool boundary = edge && m == m_end;
      for (std::size_t s = 1; s < terms.size(); ++s) {
        const auto& t = terms[s];
        const int r = t.compare(q, t.capital(t.level_of(q)));
        if (!accepts(r)) {
          all = false;
          break;
        }
        boundary = boundary || r == 0;
      }
      if (all) fn(q, boundary);
    }
  }
};

// Exact power-of-two bounds on c^e q^-f for q >= 2^b, indexed by b. Empty
// entries mean the bound would exceed 1 and no shortcut is taken.
class PowerBoundTable {
 public:
  PowerBoundTable(const Rational& c, const Rational& c_exp,
                  const Rational& q_exp, const Integer& q_hi) {
    const std::size_t bits = mpz_sizeinbase(q_hi.get_mpz_t(), 2) + 1;
    for (std::size_t b = 0; b <= bits; ++b) {
      Integer two_b;
      mpz_ui_pow_ui(two_b.get_mpz_t(), 2, b);
      const PowerFactor factors[] = {{c, c_exp},
                                     {Rational(two_b), Rational(-q_exp)}};
      if (compare_product_to_one(factors) == std::strong_ordering::greater) {
        shifts_.push_back(std::nullopt);
      } else {
        shifts_.push_back(power_of_two_upper_bound(factors));
      }
    }
  }

  // s with value <= 2^-s for this q, if known.
  std::optional<unsigned long> shift_for(const Integer& q) const {
    const std::size_t b = mpz_sizeinbase(q.get_mpz_t(), 2) - 1;
    return b < shifts_.size() ? shifts_[b] : std::nullopt;
  }

 private:
  std::vector<std::optional<unsigned long>> shifts_;
};

// Neighbourhood test written out on integers:
//   num/den <= c^j q^-(1+j)  <=>  num^vj q^(uj+vj) c_den^uj <= c_num^uj den^vj
struct DeltaTest {
  unsigned long uj;
  unsigned long vj;
  Integer c_num_uj;
  Integer c_den_uj;
  Integer reach;  // r candidates beyond the interval on each side
  PowerBoundTable half_width;

  DeltaTest(const ApproxParams& params, const Integer& q_hi)
      : uj(params.j().get_num().get_ui()),
        vj(params.j().get_den().get_ui()),
        c_num_uj(ipow(params.c().get_num(), uj)),
        c_den_uj(ipow(params.c().get_den(), uj)),
        reach(std::max(Integer(1), ceil(params.c()))),
        half_width(params.c(), params.j(), Rational(params.j() + 1),
                   q_hi) {}

  bool within(const Integer& num, const Integer& den, const Integer& q) const {
    if (auto s = half_width.shift_for(q)) {
      Integer scaled;
      mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), *s);
      if (scaled > den) return false;
    }
    const Integer lhs = ipow(num, vj) * ipow(q, uj + vj) * c_den_uj;
    const Integer rhs = c_num_uj * ipow(den, vj);
    return lhs <= rhs;
  }

  void collect(const Integer& q, const RInterval& interval,
               std::vector<DangerousRational>& out) const {
    const Rational& lo = interval.lo();
    const Rational& hi = interval.hi();
    Integer q_lo_num = q * lo.get_num();
    Integer q_hi_num = q * hi.get_num();
    Integer r_below;  // floor(q lo)
    mpz_fdiv_q(r_below.get_mpz_t(), q_lo_num.get_mpz_t(), lo.get_den_mpz_t());
    Integer r_above;  // ceil(q hi)
    mpz_cdiv_q(r_above.get_mpz_t(), q_hi_num.get_mpz_t(), hi.get_den_mpz_t());
    Integer g;
    auto coprime = [&](const Integer& r) {
      mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
      return g == 1;
    };
    const Integer lo_den_q = lo.get_den() * q;
    const Integer hi_den_q = hi.get_den() * q;
    for (Integer r = r_below - reach + 1; r <= r_above + reach - 1; ++r) {
      // r lies left of, inside, or right of q*I.
      const Integer left = q_lo_num - r * lo.get_den();   // q lo - r, scaled
      const Integer right = r * hi.get_den() - q_hi_num;  // r - q hi, scaled
      bool hit;
      if (left > 0) {
        hit = within(left, lo_den_q, q);
      } else if (right > 0) {
        hit = within(right, hi_den_q, q);
      } else {
        hit = true;
      }
      if (hit && coprime(r)) out.push_back({r, q});
    }
  }
};

std::vector<DangerousRational> merge_sorted(
    std::vector<std::vector<DangerousRational>>& parts) {
  std::vector<DangerousRational> out;
  for (auto& p : parts) {
    out.insert(out.end(), std::make_move_iterator(p.begin()),
               std::make_move_iterator(p.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// min over x in I of ||q x|| as num/den (not reduced); num = 0 when q I
// contains an integer.
struct Gap {
  Integer num;
  Integer den;

  Rational value() const {
    Rational out(num, den);
    out.canonicalize();
    return out;
  }
};

Gap min_distance(const Integer& q, const RInterval& interval) {
  const Rational& lo = interval.lo();
  const Rational& hi = interval.hi();
  Integer below, rem_lo, above, rem_hi;
  const Integer a = q * lo.get_num();
  const Integer b = q * hi.get_num();
  mpz_fdiv_qr(below.get_mpz_t(), rem_lo.get_mpz_t(), a.get_mpz_t(),
              lo.get_den_mpz_t());
  mpz_cdiv_qr(above.get_mpz_t(), rem_hi.get_mpz_t(), b.get_mpz_t(),
              hi.get_den_mpz_t());
  // ceil(q lo) <= floor(q hi) means an integer inside.
  const Integer first_in = rem_lo == 0 ? below : Integer(below + 1);
  const Integer last_in = rem_hi == 0 ? above : Integer(above - 1);
  if (first_in <= last_in) return {Integer(0), Integer(1)};
  // left = rem_lo / lo_den, right = -rem_hi / hi_den
  const Integer right = -rem_hi;
  if (rem_lo * hi.get_den() <= right * lo.get_den()) return {rem_lo, lo.get_den()};
  return {right, hi.get_den()};
}

// m > (c/q)^j  <=>  num^vj q^uj c_den^uj > c_num^uj den^vj
bool gap_clears(const Gap& m, const Integer& c_num_uj, const Integer& c_den_uj,
                unsigned long uj, unsigned long vj, const Integer& q) {
  if (m.num == 0) return false;
  return ipow(m.num, vj) * ipow(q, uj) * c_den_uj > c_num_uj * ipow(m.den, vj);
}

// The same test for a fixed c, with an exact power-of-two shortcut.
struct DistanceTest {
  unsigned long uj;
  unsigned long vj;
  Integer c_num_uj;
  Integer c_den_uj;
  PowerBoundTable bound;

  DistanceTest(const Rational& c, const Rational& j, const Integer& q_hi)
      : uj(j.get_num().get_ui()), vj(j.get_den().get_ui()),
        c_num_uj(ipow(c.get_num(), uj)), c_den_uj(ipow(c.get_den(), uj)),
        bound(c, j, j, q_hi) {}

  bool clears(const Gap& m, const Integer& q) const {
    if (m.num == 0) return false;
    if (auto s = bound.shift_for(q)) {
      Integer scaled;
      mpz_mul_2exp(scaled.get_mpz_t(), m.num.get_mpz_t(), *s);
      if (scaled > m.den) return true;
    }
    return gap_clears(m, c_num_uj, c_den_uj, uj, vj, q);
  }
};

}  // namespace

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MIXEDBAD_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<DangerousRational> delta_avoidance_oracle(
    const RInterval& interval, const ApproxParams& params, const Integer& q_lo,
    const Integer& q_hi, const OracleOptions& options) {
  if (q_hi < 1 || q_lo > q_hi) return {};
  const Walk walk(params.terms(), params.c(), true, q_lo, q_hi,
                  options.naive_cap);
  const DeltaTest delta(params, q_hi);
  std::vector<std::vector<DangerousRational>> parts(walk.tasks.size());
  run_tasks(walk.tasks.size(), resolve_workers(options.workers),
            [&](std::size_t k) {
              walk.run(walk.tasks[k], [&](const Integer& q, bool) {
                delta.collect(q, interval, parts[k]);
              });
            });
  auto out = merge_sorted(parts);
  if (options.max_witnesses && out.size() > options.max_witnesses) {
    out.resize(options.max_witnesses);
  }
  return out;
}

MembershipReport check_membership(const RInterval& interval,
                                  const ApproxParams& params,
                                  const Integer& q_max,
                                  const OracleOptions& options) {
  MembershipReport report{interval, q_max, params.c(), 0, {}, {}, {}, {}, {}};
  if (q_max < 1) return report;
  const Walk walk(params.terms(), params.c(), false, Integer(1), q_max,
                  options.naive_cap);
  const DistanceTest distance_test(params.c(), params.j(), q_max);

  struct Part {
    std::size_t candidates = 0;
    std::vector<QRecord> records;
  };
  std::vector<Part> parts(walk.tasks.size());
  run_tasks(walk.tasks.size(), resolve_workers(options.workers),
            [&](std::size_t k) {
              Part& part = parts[k];
              walk.run(walk.tasks[k], [&](const Integer& q, bool boundary) {
                ++part.candidates;
                QRecord rec;
                rec.q = q;
                const Gap gap = min_distance(q, interval);
                rec.passes = distance_test.clears(gap, q);
                rec.boundary = boundary;
                if (!rec.passes || boundary ||
                    part.records.size() < options.max_records) {
                  rec.min_distance = gap.value();
                  rec.norm = d_norm(params.terms().front().seq, q).value;
                  part.records.push_back(std::move(rec));
                }
              });
            });
  std::vector<QRecord> all;
  for (auto& p : parts) {
    report.candidates += p.candidates;
    all.insert(all.end(), std::make_move_iterator(p.records.begin()),
               std::make_move_iterator(p.records.end()));
  }
  std::sort(all.begin(), all.end(),
            [](const QRecord& a, const QRecord& b) { return a.q < b.q; });
  for (const auto& rec : all) {
    if (!rec.passes) report.violations.push_back(rec.q);
    if (rec.boundary) report.boundary_qs.push_back(rec.q);
  }
  std::size_t kept = 0;
  for (auto& rec : all) {
    if (kept >= options.max_records) break;
    report.records.push_back(std::move(rec));
    ++kept;
  }
  report.delta_violations =
      delta_avoidance_oracle(interval, params, Integer(1), q_max, options);
  return report;
}

namespace {

// Smallest t in [t0, limit] at which q satisfies the direct definition with
// c = 2^-t, or limit + 1.
unsigned long pass_exponent(const Integer& q, const RInterval& interval,
                            const Target& target, unsigned long t0,
                            unsigned long limit, const DistanceTest& cheap) {
  const Gap m = min_distance(q, interval);
  if (cheap.clears(m, q)) return t0;
  std::vector<Rational> norms;
  for (const auto& term : target.terms()) norms.push_back(d_norm(term.seq, q).value);
  const unsigned long uj = target.j().get_num().get_ui();
  const unsigned long vj = target.j().get_den().get_ui();
  for (unsigned long t = t0; t <= limit; ++t) {
    const Rational c = half_power(t);
    const Rational cq = c / q;
    if (t > t0 && gap_clears(m, Integer(1), ipow(c.get_den(), uj), uj, vj, q)) {
      return t;
    }
    for (std::size_t s = 0; s < norms.size(); ++s) {
      const auto& e = target.terms()[s].exponent;
      // |q|_D^(1/i) > c/q  <=>  |q|_D > (c/q)^i
      if (cmp_pow(norms[s], cq, e.get_num().get_ui(), e.get_den().get_ui()) ==
          std::strong_ordering::greater) {
        return t;
      }
    }
  }
  return limit + 1;
}

}  // namespace

namespace {

struct Probe {
  bool passes;
  unsigned long worst;  // only meaningful for full probes
};

// Walks the candidates at c = 2^-t0. A quick probe only asks whether every
// candidate passes at t0 and stops at the first that does not; a full probe
// also finds the exponent each failing candidate needs.
Probe probe_badness(const RInterval& interval, const Target& target,
                    const Integer& q_max, unsigned long t0, unsigned long t_max,
                    const BadnessOptions& options, bool quick) {
  const Rational c0 = half_power(t0);
  Walk walk(target.terms(), c0, false, Integer(1), q_max,
            options.oracle.naive_cap);
  std::atomic<bool> stop{false};
  walk.stop = &stop;
  const DistanceTest cheap(c0, target.j(), q_max);
  std::vector<unsigned long> worst(walk.tasks.size(), t0);
  run_tasks(walk.tasks.size(), resolve_workers(options.oracle.workers),
            [&](std::size_t k) {
              walk.run(walk.tasks[k], [&](const Integer& q, bool) {
                const unsigned long limit = quick ? t0 : t_max;
                const unsigned long tq =
                    pass_exponent(q, interval, target, t0, limit, cheap);
                if (tq > t0 && (quick || tq > t_max)) stop = true;
                worst[k] = std::max(worst[k], tq);
              });
            });
  const unsigned long w = *std::max_element(worst.begin(), worst.end());
  return {w == t0, w};
}

}  // namespace

std::optional<Rational> effective_badness(const RInterval& interval,
                                          const Target& target,
                                          const Integer& q_max,
                                          unsigned long t_max,
                                          const BadnessOptions& options) {
  const unsigned long t0 = std::min(options.start_exponent, t_max);
  const Probe first =
      probe_badness(interval, target, q_max, t0, t_max, options, false);
  if (!first.passes) {
    if (first.worst > t_max) return std::nullopt;
    return half_power(first.worst);
  }
  // Passing is monotone in t; the answer lies in [0, t0].
  auto passes = [&](unsigned long t) {
    return probe_badness(interval, target, q_max, t, t_max, options, true)
        .passes;
  };
  unsigned long good = t0;
  unsigned long step = 1;
  std::optional<unsigned long> bad;
  while (good > 0) {
    const unsigned long t = good > step ? good - step : 0;
    if (!passes(t)) {
      bad = t;
      break;
    }
    good = t;
    step *= 2;
  }
  if (!bad) return half_power(0);
  while (good - *bad > 1) {
    const unsigned long mid = *bad + (good - *bad) / 2;
    if (passes(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return half_power(good);
}

FactsReport facts_check(const ApproxParams& params, const Rational& ratio,
                        const Rational& b1_length, std::size_t n_max,
                        const Integer& q_cap, std::size_t max_failures) {
  FactsReport report;
  const Rational& c = params.c();
  const Rational& j = params.j();
  const Rational i = params.target().i_total();
  auto fail = [&](std::string fact, std::size_t n, const Integer& q1,
                  const Integer& q2) {
    ++report.failure_count;
    if (report.failures.size() < max_failures) {
      report.failures.push_back({std::move(fact), n, q1, q2});
    }
  };
  for (std::size_t n = 1; n <= n_max; ++n) {
    QRange range = band_q_range(j, ratio, n);
    if (range.lo > q_cap) break;
    BandFacts band{n, range, false, 0};
    if (range.hi > q_cap) {
      band.range.hi = q_cap;
      band.clipped = true;
    }
    std::vector<Integer> qs;
    if (!band.range.empty()) {
      const Walk walk(params.terms(), c, true, band.range.lo, band.range.hi,
                      Integer(0));
      for (const auto& task : walk.tasks) {
        walk.run(task, [&](const Integer& q, bool) { qs.push_back(q); });
      }
    }
    std::sort(qs.begin(), qs.end());
    band.members = qs.size();
    report.bands.push_back(band);

    // |B_{n+1}| = R^-n |B_1|
    Rational next_len = b1_length;
    for (std::size_t s = 0; s < n; ++s) next_len /= ratio;

    for (const auto& q : qs) {
      // 2 c^j q^-(1+j) < |B_{n+1}|/2  <=>  4 c^j q^-(1+j) / |B_{n+1}| < 1
      const PowerFactor f1[] = {{c, j},
                                {Rational(q), Rational(-(j + 1))},
                                {Rational(4 / next_len), Rational(1)}};
      if (compare_product_to_one(f1) != std::strong_ordering::less) {
        fail("fact1", n, q, q);
      }
    }
    const Rational gcd_exp = -Rational(static_cast<long>(n - 1)) * i / (j + 1);
    for (std::size_t a = 0; a < qs.size(); ++a) {
      for (std::size_t b = a; b < qs.size(); ++b) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), qs[a].get_mpz_t(), qs[b].get_mpz_t());
        // gcd > c^-i R^((n-1)i/(j+1))  <=>  gcd c^i R^(-(n-1)i/(j+1)) > 1
        const PowerFactor f2[] = {
            {Rational(g), Rational(1)}, {c, i}, {ratio, gcd_exp}};
        if (compare_product_to_one(f2) != std::strong_ordering::greater) {
          fail("fact2-gcd", n, qs[a], qs[b]);
        }
        // Distinct r1/q1, r2/q2 differ by at least gcd/(q1 q2).
        if (Rational(g, qs[a] * qs[b]) <= 2 * next_len) {
          fail("fact2-gap", n, qs[a], qs[b]);
        }
      }
    }
  }
  return report;
}

Rational nearest_integer_distance(const Rational& y) {
  const Rational f = y - floor(y);
  const Rational g = 1 - f;
  return f < g ? f : g;
}

QuadraticSurd nearest_integer_distance(const QuadraticSurd& y) {
  const QuadraticSurd f = y - Rational(y.floor());
  const QuadraticSurd g = -(f - Rational(1));
  return f < g ? f : g;
}

std::vector<ScanRecord> liminf_scan(const ScanPoint& x, const DigitSequence& seq,
                                    const Integer& q_max) {
  std::vector<ScanRecord> out;
  std::optional<ScanPoint> best;
  for (Integer q = 1; q <= q_max; ++q) {
    const Rational weight = Rational(q) * d_norm(seq, q).value;
    ScanPoint value = std::visit(
        [&](const auto& v) -> ScanPoint {
          return nearest_integer_distance(v * Rational(q)) * weight;
        },
        x);
    bool lower = !best;
    if (best) {
      lower = std::visit(
          [](const auto& a, const auto& b) { return a < b; }, value,
          *best);
    }
    if (lower) {
      best = value;
      out.push_back({q, std::move(value)});
    }
  }
  return out;
}

std::string render_scan_value(const ScanPoint& v) {
  if (const auto* r = std::get_if<Rational>(&v)) return to_string(*r);
  return std::get<QuadraticSurd>(v).truncated_decimal(13);
}

std::string render_scan_csv(const std::vector<ScanRecord>& rows) {
  std::ostringstream out;
  out << "q,value,running_min\n";
  for (const auto& row : rows) {
    const std::string v = render_scan_value(row.value);
    out << to_string(row.q) << ',' << v << ',' << v << '\n';
  }
  return out.str();
}

}  // namespace mixedbad
