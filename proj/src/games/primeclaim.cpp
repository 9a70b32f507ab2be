#include <sstream>

#include "arena/games.hpp"

namespace arena {
namespace {

const char* kRules = R"RB(# Prime Claim

## Objective

Finish with the higher total score once all 25 numbers have been claimed. If
the totals are equal, the player who made the last pick wins.

## Setup

The integers 1 through 25 start unclaimed. Both players start with a score of
0. Player 1 moves first; since there are 25 numbers, Player 1 also makes the
last pick.

## Game Components

- The pool of integers 1 through 25, each claimable exactly once.
- A running score per player.

## Turns

Players alternate turns. On your turn you must claim exactly one unclaimed
number. The game ends when every number has been claimed.

## Rules and Mechanics

1. Claiming a prime (2, 3, 5, 7, 11, 13, 17, 19, 23) adds its value to your
   own score.
2. Claiming a composite adds its value to your own score AND gifts the sum of
   its proper divisors (every divisor except the number itself, including 1)
   to your rival. For example, claiming 12 adds 12 to you and gifts
   1+2+3+4+6 = 16 to your rival.
3. Claiming 1 is neutral: it adds 1 to your score and gifts nothing.
4. When all numbers are claimed, the higher total score wins. A tie is won by
   the player who made the last pick.

## Scoring

Scores accumulate as described above and are public throughout the game.

## Examples

- You claim 7 (prime): you gain 7, your rival gains nothing.
- You claim 12 (composite): you gain 12, your rival gains 16.
- All numbers are claimed and the scores are tied: the last picker wins.
)RB";

const char* kActions = R"AM(The action space has 25 discrete actions. Action
index i claims the number i+1 from the pool: index 0 claims 1, index 1 claims
2, and so on up to index 24, which claims 25. An action is legal only while
its number is still unclaimed.

- 0: claim 1
- 1: claim 2
- 2: claim 3
- 3: claim 4
- 4: claim 5
- 5: claim 6
- 6: claim 7
- 7: claim 8
- 8: claim 9
- 9: claim 10
- 10: claim 11
- 11: claim 12
- 12: claim 13
- 13: claim 14
- 14: claim 15
- 15: claim 16
- 16: claim 17
- 17: claim 18
- 18: claim 19
- 19: claim 20
- 20: claim 21
- 21: claim 22
- 22: claim 23
- 23: claim 24
- 24: claim 25
)AM";

int proper_divisor_sum(int v) {
  int s = 0;
  for (int d = 1; d < v; ++d)
    if (v % d == 0) s += d;
  return s;
}

bool is_prime(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

class PrimeClaimEnv final : public TurnBasedEnv {
 public:
  const GameSpec& spec() const override { return kSpec; }

  std::vector<ActionIndex> valid_moves() const override {
    if (done_) return {};
    std::vector<ActionIndex> moves;
    for (int i = 0; i < 25; ++i)
      if ((unclaimed_ >> i) & 1) moves.push_back(i);
    return moves;
  }

  Observation observe() const override {
    Observation obs(27);
    for (int i = 0; i < 25; ++i)
      obs[i] = (unclaimed_ >> i) & 1 ? 1.0f : 0.0f;
    obs[25] = static_cast<float>(score(current_)) / 512.0f;
    obs[26] = static_cast<float>(score(other(current_))) / 512.0f;
    return obs;
  }

  std::string render() const override {
    std::ostringstream os;
    os << "Prime Claim\nUnclaimed:";
    for (int i = 0; i < 25; ++i)
      if ((unclaimed_ >> i) & 1) os << ' ' << (i + 1);
    os << "\nScores: P1 = " << p1_score_ << ", P2 = " << p2_score_ << "\n";
    os << "Current player: " << player_name(current_) << "\n";
    return os.str();
  }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<PrimeClaimEnv>(*this);
  }

  static const GameSpec kSpec;

 protected:
  void reset_state(SplitMix64&) override {
    unclaimed_ = (1 << 25) - 1;
    p1_score_ = p2_score_ = 0;
  }

  Transition apply(ActionIndex action) override {
    int v = action + 1;
    unclaimed_ &= ~(1 << action);
    score(current_) += v;
    if (v > 1 && !is_prime(v)) score(other(current_)) += proper_divisor_sum(v);
    if (unclaimed_ != 0) return continue_with(other(current_));
    // All claimed; the mover made the last pick and wins ties.
    if (score(current_) >= score(other(current_))) return win();
    return lose();
  }

 private:
  int& score(Player p) { return p == Player::P1 ? p1_score_ : p2_score_; }
  int score(Player p) const { return p == Player::P1 ? p1_score_ : p2_score_; }

  int unclaimed_ = 0;
  int p1_score_ = 0, p2_score_ = 0;
};

const GameSpec PrimeClaimEnv::kSpec = {
    "primeclaim", "Prime Claim", kRules, kActions,
    /*action_space_size=*/25, /*observation_dim=*/27,
    /*move_cap=*/100, /*stochastic_setup=*/false};

}  // namespace

std::unique_ptr<Environment> make_primeclaim(std::optional<uint64_t> seed) {
  auto env = std::make_unique<PrimeClaimEnv>();
  env->reset(seed.value_or(0));
  return env;
}

}  // namespace arena
