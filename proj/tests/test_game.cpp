#include "doctest.h"
#include "mixedbad/game.hpp"
#include "mixedbad/strategy.hpp"

using namespace mixedbad;

namespace {

Rational q(long n, long d = 1) {
  Rational out(n, d);
  out.canonicalize();
  return out;
}

RInterval iv(Rational lo, Rational hi) { return RInterval(std::move(lo), std::move(hi)); }

const GameParams standard(q(1, 4), q(1, 2), iv(q(0), q(1)));

class Leftmost : public Strategy {
 public:
  RInterval propose(const GameState& s) override {
    const Rational ratio = s.turn() == Player::A ? s.params().alpha : s.params().beta;
    return iv(s.current().lo(), Rational(s.current().lo() + ratio * s.current().length()));
  }
};

class Escapes : public Strategy {
 public:
  RInterval propose(const GameState& s) override {
    const Rational len = s.params().alpha * s.current().length();
    return iv(Rational(s.current().hi()), Rational(s.current().hi() + len));
  }
};

}  // namespace

TEST_CASE("starting a game") {
  const GameState s = start(standard);
  CHECK(s.moves().size() == 1);
  CHECK(s.turn() == Player::A);
  CHECK(standard.ratio() == 8);
  CHECK_NOTHROW(start(GameParams(q(1, 4), q(1, 2), iv(q(-1), q(3)))));
  CHECK_THROWS_AS(GameParams(q(1, 4), q(1, 2), iv(q(1), q(1))), std::invalid_argument);
  CHECK_THROWS_AS(GameParams(q(0), q(1, 2), iv(q(0), q(1))), std::invalid_argument);
  CHECK_THROWS_AS(GameParams(q(1, 4), q(1), iv(q(0), q(1))), std::invalid_argument);
}

TEST_CASE("move validation") {
  GameState s = apply_move(start(standard), iv(q(0), q(1, 4)));
  CHECK(s.turn() == Player::B);
  CHECK_NOTHROW(apply_move(s, iv(q(0), q(1, 8))));
  CHECK_NOTHROW(apply_move(s, iv(q(1, 8), q(1, 4))));

  try {
    apply_move(start(standard), iv(q(0), q(1, 5)));
    FAIL("expected WrongLength");
  } catch (const MoveError& e) {
    CHECK(e.kind() == MoveError::Kind::WrongLength);
    CHECK(e.player() == Player::A);
  }
  try {
    apply_move(s, iv(q(1, 4), q(3, 8)));
    FAIL("expected NotNested");
  } catch (const MoveError& e) {
    CHECK(e.kind() == MoveError::Kind::NotNested);
    CHECK(e.player() == Player::B);
  }
}

TEST_CASE("playing rounds") {
  Leftmost a, b;
  const GameRecord one = play(standard, a, b, 1);
  CHECK(one.final_interval() == iv(q(0), q(1, 8)));

  const GameRecord three = play(standard, a, b, 3);
  CHECK(three.final_interval().length() == q(1, 512));
  const auto intervals = three.intervals();
  CHECK(intervals.size() == 7);
  // |B_m| R^(m-1) = |B_1| and strict nesting.
  Rational scale = 1;
  for (std::size_t m = 0; m < intervals.size(); m += 2) {
    CHECK(intervals[m].length() * scale == standard.b1.length());
    scale *= standard.ratio();
  }
  for (std::size_t k = 1; k < intervals.size(); ++k) {
    CHECK(intervals[k - 1].contains(intervals[k]));
  }
  CHECK_NOTHROW(replay(three));
  CHECK_THROWS(play(standard, a, b, 0));

  Escapes bad;
  try {
    play(standard, bad, b, 2);
    FAIL("expected a move error");
  } catch (const MoveError& e) {
    CHECK(e.player() == Player::A);
    CHECK(std::string(e.what()).find("A") != std::string::npos);
  }
}

TEST_CASE("adversaries") {
  GameState s = apply_move(start(standard), iv(q(0), q(1, 4)));
  Adversary left(AdversaryKind::Leftmost, 0);
  Adversary right(AdversaryKind::Rightmost, 0);
  CHECK(left.propose(s) == iv(q(0), q(1, 8)));
  CHECK(right.propose(s) == iv(q(1, 8), q(1, 4)));

  Adversary r1(AdversaryKind::Random, 11), r2(AdversaryKind::Random, 11),
      r3(AdversaryKind::Random, 12);
  CHECK(r1.propose(s) == r2.propose(s));
  const RInterval pick = r1.propose(s);
  CHECK(s.current().contains(pick));
  CHECK(pick.length() == q(1, 8));
  (void)r3;

  // Greedy aims at a dangerous rational in reach: 1/8 with q = 8.
  const ApproxParams params(
      Target::single(DigitSequence::constant(2), q(1, 2), q(1, 2)), q(1, 4));
  GameState g = apply_move(start(standard), iv(q(0), q(1, 4)));
  Adversary greedy(AdversaryKind::Greedy, 0, {params}, standard.ratio());
  const RInterval aimed = greedy.propose(g);
  CHECK(aimed.contains(q(1, 8)));
  CHECK(g.current().contains(aimed));
}
