#include "mixedbad/strategy.hpp"

#include <random>
#include <sstream>

namespace mixedbad {

namespace {

Rational power_of_half(unsigned long t) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, t);
  return Rational(Integer(1), den);
}

std::string describe(const std::vector<DangerousRational>& dangers) {
  std::ostringstream out;
  out << "[";
  for (std::size_t k = 0; k < dangers.size(); ++k) {
    if (k) out << ", ";
    out << to_string(dangers[k].r) << "/" << to_string(dangers[k].q);
  }
  out << "]";
  return out.str();
}

bool cell_is_free(const RInterval& cell, const ApproxParams& params,
                  const std::vector<DangerousRational>& dangers) {
  for (const auto& d : dangers) {
    if (interval_meets_delta(params, d.r, d.q, cell)) return false;
  }
  return true;
}

void maybe_recheck(const RInterval& chosen, std::size_t n,
                   const ApproxParams& params, const Rational& ratio,
                   const MoveOptions& options) {
  if (options.recheck_every == 0 || n == 0) return;
  const QRange below = below_q_range(params.j(), ratio, n);
  const bool due =
      below.hi <= options.recheck_always_below || n % options.recheck_every == 0;
  if (!due) return;
  auto hits =
      enumerate_dangerous_between(params, below, chosen, options.enumeration);
  if (!hits.empty()) {
    throw InvariantViolation(
        hits.front(), "move " + to_string(chosen) + " after band " +
                          std::to_string(n) + " meets " + describe(hits));
  }
}

}  // namespace

bool meets_length_condition(const Target& target, const Rational& c,
                            const Rational& ratio, const Rational& b1_length) {
  // c < (4R/|B1|)^(-1/j)  <=>  c^j * 4R/|B1| < 1
  const PowerFactor factors[] = {{c, target.j()},
                                 {Rational(4 * ratio / b1_length), Rational(1)}};
  return compare_product_to_one(factors) == std::strong_ordering::less;
}

bool meets_gap_condition(const Target& target, const Rational& c,
                         const Rational& ratio, const Rational& b1_length) {
  // c < (2 R^(i/(j+1)) |B1|)^(-1/i)  <=>  c^i * 2|B1| * R^(i/(j+1)) < 1
  const Rational i = target.i_total();
  const PowerFactor factors[] = {{c, i},
                                 {Rational(2 * b1_length), Rational(1)},
                                 {ratio, Rational(i / (target.j() + 1))}};
  return compare_product_to_one(factors) == std::strong_ordering::less;
}

CChoice choose_c(const Target& target, const Rational& alpha,
                 const Rational& beta, const RInterval& b1) {
  const Rational ratio = 1 / (alpha * beta);
  const Rational len = b1.length();
  if (len <= 0) throw std::invalid_argument("B_1 must have positive length");
  unsigned long t = 0;
  while (!(meets_length_condition(target, power_of_half(t), ratio, len) &&
           meets_gap_condition(target, power_of_half(t), ratio, len))) {
    ++t;
  }
  CChoice out;
  out.exponent = t + 1;
  out.c = power_of_half(out.exponent);

  const Rational i = target.i_total();
  out.length_threshold =
      exact_power(Rational(4 * ratio / len), Rational(-1 / target.j()));
  if (auto r_pow = exact_power(ratio, Rational(i / (target.j() + 1)))) {
    out.gap_threshold =
        exact_power(Rational(2 * len * *r_pow), Rational(-1 / i));
  }
  return out;
}

NoValidInterval::NoValidInterval(std::size_t band, bool invariant_violation,
                                 const std::string& detail)
    : std::runtime_error("no valid interval for band " + std::to_string(band) +
                         ": " + detail),
      band_(band),
      invariant_violation_(invariant_violation) {}

InvariantViolation::InvariantViolation(DangerousRational witness,
                                       const std::string& detail)
    : std::runtime_error("avoidance invariant violated: " + detail),
      witness_(std::move(witness)) {}

RInterval avoiding_move(const RInterval& current, std::size_t n,
                        const ApproxParams& params, const Rational& ratio,
                        const Rational& alpha, const MoveOptions& options) {
  const Rational len = current.length();
  const Rational want = alpha * len;
  if (n == 0) return RInterval(current.lo(), current.lo() + want);

  const auto dangers =
      enumerate_dangerous_in(params, ratio, n, current, options.enumeration);
  if (dangers.empty()) {
    RInterval chosen(current.lo(), current.lo() + want);
    maybe_recheck(chosen, n, params, ratio, options);
    return chosen;
  }

  for (unsigned k = 2; k <= options.max_refinement; ++k) {
    const unsigned long cells = 1UL << k;
    const Rational width = len / cells;
    std::size_t run = 0;
    Rational run_lo;
    for (unsigned long s = 0; s < cells; ++s) {
      const Rational cell_lo = current.lo() + width * s;
      const RInterval cell(cell_lo, Rational(cell_lo + width));
      if (!cell_is_free(cell, params, dangers)) {
        run = 0;
        continue;
      }
      if (run == 0) run_lo = cell_lo;
      ++run;
      if (width * run >= want) {
        RInterval chosen(run_lo, Rational(run_lo + want));
        maybe_recheck(chosen, n, params, ratio, options);
        return chosen;
      }
    }
  }
  const bool guaranteed = params.terms().size() == 1 && alpha * 4 <= 1;
  throw NoValidInterval(n, guaranteed,
                        "B = " + to_string(current) +
                            ", band members meeting B: " + describe(dangers));
}

void require_quarter_alpha(const Rational& alpha) {
  if (alpha * 4 > 1) {
    throw std::invalid_argument("the avoidance strategy needs alpha <= 1/4 (got " +
                                to_string(alpha) + ")");
  }
}

RInterval a_winning_move(const GameState& state, const ApproxParams& params,
                         const Rational& ratio, const MoveOptions& options) {
  if (params.terms().size() != 1) {
    throw std::invalid_argument("a_winning_move takes a single norm term");
  }
  return multi_norm_winning_move(state, params, ratio, options);
}

RInterval multi_norm_winning_move(const GameState& state,
                                  const ApproxParams& params,
                                  const Rational& ratio,
                                  const MoveOptions& options) {
  if (state.turn() != Player::A) {
    throw std::logic_error("A's strategy called on B's turn");
  }
  require_quarter_alpha(state.params().alpha);
  return avoiding_move(state.current(), state.a_moves(), params, ratio,
                       state.params().alpha, options);
}

AvoidanceStrategy::AvoidanceStrategy(Target target, MoveOptions options)
    : target_(std::move(target)), options_(std::move(options)) {}

RInterval AvoidanceStrategy::propose(const GameState& state) {
  const GameParams& gp = state.params();
  require_quarter_alpha(gp.alpha);
  if (!choice_) choice_ = choose_c(target_, gp.alpha, gp.beta, gp.b1);
  const ApproxParams params(target_, choice_->c);
  return multi_norm_winning_move(state, params, gp.ratio(), options_);
}

Adversary::Adversary(AdversaryKind kind, std::uint64_t seed,
                     std::vector<ApproxParams> targets,
                     std::optional<Rational> ratio)
    : kind_(kind),
      seed_(seed),
      targets_(std::move(targets)),
      ratio_(std::move(ratio)) {
  if (kind_ == AdversaryKind::Greedy && (targets_.empty() || !ratio_)) {
    throw std::invalid_argument("greedy adversary needs targets and R");
  }
}

RInterval Adversary::propose(const GameState& state) {
  if (state.turn() != Player::B) {
    throw std::logic_error("B's strategy called on A's turn");
  }
  const RInterval& a = state.current();
  const Rational len = state.params().beta * a.length();
  const Rational slack = a.length() - len;
  switch (kind_) {
    case AdversaryKind::Leftmost:
      return RInterval(a.lo(), Rational(a.lo() + len));
    case AdversaryKind::Rightmost:
      return RInterval(Rational(a.hi() - len), a.hi());
    case AdversaryKind::Random: {
      // Pure in (seed, move number): a fresh engine per move.
      const std::uint64_t m = state.moves().size();
      std::seed_seq seq{static_cast<std::uint32_t>(seed_),
                        static_cast<std::uint32_t>(seed_ >> 32),
                        static_cast<std::uint32_t>(m),
                        static_cast<std::uint32_t>(m >> 32)};
      std::mt19937_64 engine(seq);
      const unsigned long k = engine() % 65537UL;
      const Rational lo = a.lo() + slack * Rational(k, 65536UL);
      return RInterval(lo, Rational(lo + len));
    }
    case AdversaryKind::Greedy: {
      // Aim at the dangerous rational nearest the middle of A_m among the
      // next two bands.
      const std::size_t m = state.a_moves();
      const Rational mid = a.midpoint();
      std::optional<Rational> best;
      Rational best_gap;
      for (const auto& params : targets_) {
        for (std::size_t band = m; band <= m + 1; ++band) {
          if (band == 0) continue;
          for (const auto& d : enumerate_dangerous_in(params, *ratio_, band, a)) {
            Rational center(d.r, d.q);
            center.canonicalize();
            const Rational gap = abs(Rational(center - mid));
            if (!best || gap < best_gap) {
              best = center;
              best_gap = gap;
            }
          }
        }
      }
      const Rational aim = best ? *best : mid;
      Rational lo = aim - len / 2;
      if (lo < a.lo()) lo = a.lo();
      if (lo > a.lo() + slack) lo = a.lo() + slack;
      return RInterval(lo, Rational(lo + len));
    }
  }
  throw std::logic_error("unknown adversary kind");
}

std::unique_ptr<Strategy> adversary_b(AdversaryKind kind, std::uint64_t seed) {
  return std::make_unique<Adversary>(kind, seed);
}

DelegateView delegate_of(std::size_t a, std::size_t k) {
  if (k == 0) throw std::invalid_argument("no delegates");
  const std::size_t t = a % k;
  return {t, a / k, 2 * t};
}

Rational effective_beta(const Rational& alpha, const Rational& beta,
                        std::size_t k) {
  Rational out = beta;
  for (std::size_t s = 1; s < k; ++s) out *= alpha * beta;
  return out;
}

CombinedStrategy::CombinedStrategy(std::vector<Target> targets,
                                   MoveOptions options)
    : targets_(std::move(targets)),
      options_(std::move(options)),
      choices_(targets_.size()) {
  if (targets_.empty()) throw std::invalid_argument("no targets to combine");
}

RInterval CombinedStrategy::propose(const GameState& state) {
  if (state.turn() != Player::A) {
    throw std::logic_error("A's strategy called on B's turn");
  }
  const GameParams& gp = state.params();
  require_quarter_alpha(gp.alpha);
  const std::size_t k = targets_.size();
  const DelegateView view = delegate_of(state.a_moves(), k);
  const Rational beta_eff = effective_beta(gp.alpha, gp.beta, k);
  const Rational ratio_eff = 1 / (gp.alpha * beta_eff);
  auto& choice = choices_[view.delegate];
  if (!choice) {
    choice = choose_c(targets_[view.delegate], gp.alpha, beta_eff,
                      state.moves()[view.b1_index]);
  }
  const ApproxParams params(targets_[view.delegate], choice->c);
  try {
    return avoiding_move(state.current(), view.local_n, params, ratio_eff,
                         gp.alpha, options_);
  } catch (const NoValidInterval& e) {
    throw NoValidInterval(e.band(), e.invariant_violation(),
                          "delegate " + std::to_string(view.delegate) + ": " +
                              e.what());
  }
}

std::unique_ptr<Strategy> intersect_strategies(std::vector<Target> targets,
                                               MoveOptions options) {
  return std::make_unique<CombinedStrategy>(std::move(targets),
                                            std::move(options));
}

}  // namespace mixedbad
