#include "mixedbad/game.hpp"

namespace mixedbad {

const char* to_string(Player p) { return p == Player::A ? "A" : "B"; }

GameParams::GameParams(Rational alpha_, Rational beta_, RInterval b1_)
    : alpha(std::move(alpha_)), beta(std::move(beta_)), b1(std::move(b1_)) {
  if (alpha <= 0 || alpha >= 1) {
    throw std::invalid_argument("alpha must lie in (0,1)");
  }
  if (beta <= 0 || beta >= 1) {
    throw std::invalid_argument("beta must lie in (0,1)");
  }
  if (b1.length() <= 0) {
    throw std::invalid_argument("B_1 must have positive length");
  }
}

MoveError::MoveError(Kind kind, Player player, std::size_t move_index,
                     const std::string& detail)
    : std::runtime_error(std::string("invalid move by player ") +
                         to_string(player) + " at move " +
                         std::to_string(move_index) + ": " + detail),
      kind_(kind),
      player_(player),
      move_index_(move_index) {}

GameState::GameState(GameParams params) : params_(std::move(params)) {
  moves_.push_back(params_.b1);
}

void GameState::apply(const RInterval& interval) {
  const Player mover = turn();
  const RInterval& cur = current();
  if (!cur.contains(interval)) {
    throw MoveError(MoveError::Kind::NotNested, mover, moves_.size(),
                    to_string(interval) + " not contained in " +
                        to_string(cur));
  }
  const Rational& ratio = mover == Player::A ? params_.alpha : params_.beta;
  const Rational want = ratio * cur.length();
  if (interval.length() != want) {
    throw MoveError(MoveError::Kind::WrongLength, mover, moves_.size(),
                    "length " + to_string(interval.length()) + ", expected " +
                        to_string(want));
  }
  moves_.push_back(interval);
}

GameState start(const GameParams& params) { return GameState(params); }

GameState apply_move(GameState state, const RInterval& interval) {
  state.apply(interval);
  return state;
}

const RInterval& GameRecord::final_interval() const {
  return moves.empty() ? params.b1 : moves.back().interval;
}

std::vector<RInterval> GameRecord::intervals() const {
  std::vector<RInterval> out{params.b1};
  for (const auto& m : moves) out.push_back(m.interval);
  return out;
}

GameRecord play(const GameParams& params, Strategy& a, Strategy& b,
                std::size_t rounds) {
  if (rounds == 0) throw std::invalid_argument("rounds must be positive");
  GameState state = start(params);
  GameRecord record{params, {}};
  for (std::size_t round = 0; round < rounds; ++round) {
    for (Player p : {Player::A, Player::B}) {
      RInterval proposal = (p == Player::A ? a : b).propose(state);
      state.apply(proposal);
      record.moves.push_back({p, std::move(proposal)});
    }
  }
  return record;
}

GameState replay(const GameRecord& record) {
  GameState state = start(record.params);
  for (std::size_t k = 0; k < record.moves.size(); ++k) {
    const Move& m = record.moves[k];
    if (m.player != state.turn()) {
      throw MoveError(MoveError::Kind::NotNested, m.player, k + 1,
                      "move out of turn");
    }
    state.apply(m.interval);
  }
  return state;
}

}  // namespace mixedbad
