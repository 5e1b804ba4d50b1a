#pragma once

// Schmidt (alpha, beta)-game engine. B opens with B_1; the players then
// alternate nested closed intervals with |A_m| = alpha |B_m| and
// |B_{m+1}| = beta |A_m|. The engine validates moves exactly and knows
// nothing about target sets.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixedbad/exactnum.hpp"

namespace mixedbad {

enum class Player { A, B };

const char* to_string(Player p);

struct GameParams {
  Rational alpha;
  Rational beta;
  RInterval b1;

  GameParams(Rational alpha, Rational beta, RInterval b1);

  // R = 1 / (alpha beta) > 1.
  Rational ratio() const { return 1 / (alpha * beta); }
};

class MoveError : public std::runtime_error {
 public:
  enum class Kind { NotNested, WrongLength };

  MoveError(Kind kind, Player player, std::size_t move_index,
            const std::string& detail);

  Kind kind() const { return kind_; }
  Player player() const { return player_; }
  std::size_t move_index() const { return move_index_; }

 private:
  Kind kind_;
  Player player_;
  std::size_t move_index_;
};

class GameState {
 public:
  explicit GameState(GameParams params);

  const GameParams& params() const { return params_; }
  // B_1, A_1, B_2, A_2, ...
  const std::vector<RInterval>& moves() const { return moves_; }
  const RInterval& current() const { return moves_.back(); }
  Player turn() const { return moves_.size() % 2 == 1 ? Player::A : Player::B; }
  // Number of completed A moves.
  std::size_t a_moves() const { return moves_.size() / 2; }

  // Validates and appends; throws MoveError.
  void apply(const RInterval& interval);

 private:
  GameParams params_;
  std::vector<RInterval> moves_;
};

GameState start(const GameParams& params);
GameState apply_move(GameState state, const RInterval& interval);

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual RInterval propose(const GameState& state) = 0;
};

struct Move {
  Player player;
  RInterval interval;
};

struct GameRecord {
  GameParams params;
  std::vector<Move> moves;  // A_1, B_2, A_2, ..., B_{rounds+1}

  const RInterval& final_interval() const;
  std::vector<RInterval> intervals() const;  // B_1 followed by every move
};

// Runs `rounds` full (A, B) exchanges; the final interval is B_{rounds+1}.
GameRecord play(const GameParams& params, Strategy& a, Strategy& b,
                std::size_t rounds);

// Replays recorded moves through validation.
GameState replay(const GameRecord& record);

}  // namespace mixedbad
