#pragma once

// Game transcripts: running a configured game, JSON round-tripping, and the
// post-hoc audit used by `mixedbad verify`.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixedbad/game.hpp"
#include "mixedbad/strategy.hpp"
#include "mixedbad/verify.hpp"

namespace mixedbad {

struct TargetRecord {
  Target target;
  Rational c;
};

struct Transcript {
  GameParams params;
  std::string strategy;   // "paper-a" or "combine:paper-a+paper-a..."
  std::string adversary;  // "adv:leftmost", "adv:random:7", ...
  std::uint64_t seed = 0;
  std::size_t rounds = 0;
  std::vector<TargetRecord> targets;  // one per delegate
  std::vector<Move> moves;            // A_1, B_2, ..., B_{rounds+1}

  GameRecord record() const { return {params, moves}; }
};

struct AdversarySpec {
  AdversaryKind kind;
  std::uint64_t seed;
};

// "adv:leftmost" | "adv:rightmost" | "adv:greedy" | "adv:random[:SEED]";
// without an explicit seed the fallback is used.
AdversarySpec parse_adversary(const std::string& text, std::uint64_t fallback_seed);
std::string adversary_name(const AdversarySpec& spec);

struct GameSetup {
  GameParams params;
  std::vector<Target> targets;  // several targets play round-robin
  std::string adversary = "adv:leftmost";
  std::uint64_t seed = 0;
  std::size_t rounds = 20;
  MoveOptions options;
};

// Throws NoValidInterval, InvariantViolation or MoveError on strategy failure
// and std::invalid_argument for bad setups (alpha > 1/4, zero rounds).
Transcript run_game(const GameSetup& setup);

class TranscriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pretty-printed JSON with a trailing newline; identical games give
// identical bytes.
std::string to_json(const Transcript& t);
// Throws TranscriptError on malformed input. Moves are not validated here.
Transcript transcript_from_json(const std::string& text);
Transcript load_transcript(const std::string& path);
void save_text(const std::string& path, const std::string& text);

struct AuditOptions {
  // Extra informational range above the horizon.
  std::optional<Integer> q_max;
  bool check_moves = true;
  bool badness = true;
  unsigned long t_max = 200;
  OracleOptions oracle;
};

struct MoveWitness {
  std::size_t move;  // index into B_1, A_1, B_2, ...
  DangerousRational witness;
};

struct TargetAudit {
  std::size_t delegate;
  TargetRecord target;
  Rational ratio;                  // R seen by this delegate
  std::size_t local_rounds = 0;    // A moves made by this delegate
  Integer horizon;                 // largest q with q^(1+j) < ratio^(local_rounds-1)
  std::vector<MoveWitness> move_witnesses;
  std::optional<MembershipReport> final_report;
  std::vector<DangerousRational> beyond_horizon;  // informational only
  std::optional<Rational> c_eff;

  bool ok() const {
    return move_witnesses.empty() &&
           (!final_report || final_report->delta_ok());
  }
};

struct AuditReport {
  bool structural_ok = true;
  std::string structural_error;
  std::vector<TargetAudit> targets;

  bool ok() const;
  // First Delta-avoidance witness, if any.
  std::optional<DangerousRational> witness() const;
};

AuditReport audit_transcript(const Transcript& t, const AuditOptions& options = {});
std::string to_json(const AuditReport& report);

}  // namespace mixedbad
