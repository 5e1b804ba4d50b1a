#pragma once

// Player A's avoidance strategy, adversarial B strategies, and a round-robin
// combinator that plays several targets in one game.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixedbad/dangerous.hpp"
#include "mixedbad/game.hpp"

namespace mixedbad {

// c = 2^-exponent, chosen one halving below the first power of two that meets
//   c < (4 R / |B_1|)^(-1/j)   and   c < (2 R^(i/(j+1)) |B_1|)^(-1/i),
// with i = 1 - j (the sum of the norm exponents).
struct CChoice {
  Rational c;
  unsigned long exponent = 0;
  // The two thresholds, when they happen to be rational.
  std::optional<Rational> length_threshold;
  std::optional<Rational> gap_threshold;
};

// Both strict inequalities above, decided exactly.
bool meets_length_condition(const Target& target, const Rational& c,
                            const Rational& ratio, const Rational& b1_length);
bool meets_gap_condition(const Target& target, const Rational& c,
                         const Rational& ratio, const Rational& b1_length);

CChoice choose_c(const Target& target, const Rational& alpha,
                 const Rational& beta, const RInterval& b1);

class NoValidInterval : public std::runtime_error {
 public:
  NoValidInterval(std::size_t band, bool invariant_violation,
                  const std::string& detail);
  std::size_t band() const { return band_; }
  // True when the single-norm guarantee says this cannot happen.
  bool invariant_violation() const { return invariant_violation_; }

 private:
  std::size_t band_;
  bool invariant_violation_;
};

// A chosen interval met a forbidden neighbourhood from an earlier band.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(DangerousRational witness, const std::string& detail);
  const DangerousRational& witness() const { return witness_; }

 private:
  DangerousRational witness_;
};

struct MoveOptions {
  EnumerationOptions enumeration;
  unsigned max_refinement = 12;  // cells = 2^k, k = 2 .. max_refinement
  // Full re-check of every band below the current one: each round while the
  // horizon stays below `recheck_always_below`, then every `recheck_every`
  // rounds. 0 disables it.
  std::size_t recheck_every = 5;
  Integer recheck_always_below = 10000;
};

// A's move from `current` = B_{n+1}: an interval of length alpha |current|
// avoiding every neighbourhood of band n. For n == 0 the leftmost piece.
// Tie-break: leftmost run of free cells, left-aligned.
RInterval avoiding_move(const RInterval& current, std::size_t n,
                        const ApproxParams& params, const Rational& ratio,
                        const Rational& alpha,
                        const MoveOptions& options = {});

// Single-norm move; requires alpha <= 1/4.
RInterval a_winning_move(const GameState& state, const ApproxParams& params,
                         const Rational& ratio,
                         const MoveOptions& options = {});

// Same sweep for several norm terms; NoValidInterval is a legal outcome here.
RInterval multi_norm_winning_move(const GameState& state,
                                  const ApproxParams& params,
                                  const Rational& ratio,
                                  const MoveOptions& options = {});

// Player A for one target; fixes c from B_1 on its first move.
class AvoidanceStrategy : public Strategy {
 public:
  explicit AvoidanceStrategy(Target target, MoveOptions options = {});
  RInterval propose(const GameState& state) override;

  const Target& target() const { return target_; }
  const std::optional<CChoice>& choice() const { return choice_; }

 private:
  Target target_;
  MoveOptions options_;
  std::optional<CChoice> choice_;
};

// Throws std::invalid_argument when alpha > 1/4.
void require_quarter_alpha(const Rational& alpha);

enum class AdversaryKind { Leftmost, Rightmost, Random, Greedy };

class Adversary : public Strategy {
 public:
  // Greedy needs the targets (with their constants) and R to look ahead.
  Adversary(AdversaryKind kind, std::uint64_t seed,
            std::vector<ApproxParams> targets = {},
            std::optional<Rational> ratio = std::nullopt);
  RInterval propose(const GameState& state) override;

  AdversaryKind kind() const { return kind_; }

 private:
  AdversaryKind kind_;
  std::uint64_t seed_;
  std::vector<ApproxParams> targets_;
  std::optional<Rational> ratio_;
};

std::unique_ptr<Strategy> adversary_b(AdversaryKind kind, std::uint64_t seed);

// Round-robin delegation over k avoidance strategies. Delegate t plays A moves
// t, t+k, t+2k, ...; it sees a game with alpha and beta (alpha beta)^(k-1),
// so R_eff = R^k, and B_1 is the first interval handed to it.
class CombinedStrategy : public Strategy {
 public:
  explicit CombinedStrategy(std::vector<Target> targets,
                            MoveOptions options = {});
  RInterval propose(const GameState& state) override;

  std::size_t size() const { return targets_.size(); }
  const std::vector<Target>& targets() const { return targets_; }
  const std::vector<std::optional<CChoice>>& choices() const {
    return choices_;
  }

 private:
  std::vector<Target> targets_;
  MoveOptions options_;
  std::vector<std::optional<CChoice>> choices_;
};

struct DelegateView {
  std::size_t delegate;   // which target
  std::size_t local_n;    // A moves this delegate made before
  std::size_t b1_index;   // index of its B_1 in the interval list
};

// Which delegate handles global A move `a` (0-based) among k delegates.
DelegateView delegate_of(std::size_t a, std::size_t k);
// beta (alpha beta)^(k-1)
Rational effective_beta(const Rational& alpha, const Rational& beta,
                        std::size_t k);

// Finite intersection combinator; with one target it plays exactly like
// AvoidanceStrategy.
std::unique_ptr<Strategy> intersect_strategies(std::vector<Target> targets,
                                               MoveOptions options = {});

}  // namespace mixedbad
