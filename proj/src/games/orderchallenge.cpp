#include <sstream>

#include "arena/games.hpp"

namespace arena {
namespace {

const char* kRules = R"RB(# Order Challenge

## Objective

Build a strictly increasing sequence longer than your opponent can sustain.
The first player unable to make a legal pick loses.

## Setup

A shared pool holds the numbers 1 through 9, each available exactly once.
Both players start with an empty personal sequence. Player 1 moves first.

## Game Components

- A shared pool of the numbers 1-9. A number picked by either player leaves
  the pool permanently.
- One personal sequence per player, recording that player's picks in order.

## Turns

Players alternate turns. On your turn you must pick one number that is still
in the shared pool and is strictly greater than the last number of your own
sequence (any pool number is allowed for your first pick). The pick is
appended to your sequence.

## Rules and Mechanics

1. Picks come from the single shared pool; a number used by your opponent is
   gone for you too.
2. Each pick must strictly exceed your own previous pick. Your opponent's
   sequence does not constrain your picks.
3. If, after your pick, your opponent has no legal pick, you win immediately.

## Scoring

No points are tracked. The loser is the first player left without a legal
pick.

## Examples

- You open with 9. Your next pick would have to exceed 9, which is
  impossible, so you will lose as soon as the turn comes back to you.
- Your sequence ends with 4 and the pool is {2, 6, 7}. You may pick 6 or 7
  but not 2.
)RB";

const char* kActions = R"AM(The action space has 9 discrete actions. Action
index i picks the number i+1 from the shared pool: index 0 picks 1, up to
index 8, which picks 9. An action is legal only while its number remains in
the pool and is strictly greater than the last number of your own sequence.

- 0: pick 1
- 1: pick 2
- 2: pick 3
- 3: pick 4
- 4: pick 5
- 5: pick 6
- 6: pick 7
- 7: pick 8
- 8: pick 9
)AM";

class OrderChallengeEnv final : public TurnBasedEnv {
 public:
  const GameSpec& spec() const override { return kSpec; }

  std::vector<ActionIndex> valid_moves() const override {
    if (done_) return {};
    return picks_for(last(current_));
  }

  Observation observe() const override {
    Observation obs(11);
    for (int i = 0; i < 9; ++i)
      obs[i] = (pool_ >> i) & 1 ? 1.0f : 0.0f;
    obs[9] = static_cast<float>(last(current_)) / 9.0f;
    obs[10] = static_cast<float>(last(other(current_))) / 9.0f;
    return obs;
  }

  std::string render() const override {
    std::ostringstream os;
    os << "Order Challenge\nPool:";
    for (int i = 0; i < 9; ++i)
      if ((pool_ >> i) & 1) os << ' ' << (i + 1);
    os << "\nP1 last pick: " << p1_last_ << "\nP2 last pick: " << p2_last_
       << "\n";
    os << "Current player: " << player_name(current_) << "\n";
    return os.str();
  }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<OrderChallengeEnv>(*this);
  }

  static const GameSpec kSpec;

 protected:
  void reset_state(SplitMix64&) override {
    pool_ = (1 << 9) - 1;
    p1_last_ = p2_last_ = 0;
  }

  Transition apply(ActionIndex action) override {
    pool_ &= ~(1 << action);
    last(current_) = action + 1;
    if (picks_for(last(other(current_))).empty()) return win();
    return continue_with(other(current_));
  }

 private:
  int& last(Player p) { return p == Player::P1 ? p1_last_ : p2_last_; }
  int last(Player p) const { return p == Player::P1 ? p1_last_ : p2_last_; }

  std::vector<ActionIndex> picks_for(int own_last) const {
    std::vector<ActionIndex> moves;
    for (int i = 0; i < 9; ++i)
      if (((pool_ >> i) & 1) && i + 1 > own_last) moves.push_back(i);
    return moves;
  }

  int pool_ = 0;
  int p1_last_ = 0, p2_last_ = 0;
};

const GameSpec OrderChallengeEnv::kSpec = {
    "orderchallenge", "Order Challenge", kRules, kActions,
    /*action_space_size=*/9, /*observation_dim=*/11,
    /*move_cap=*/100, /*stochastic_setup=*/false};

}  // namespace

std::unique_ptr<Environment> make_orderchallenge(std::optional<uint64_t> seed) {
  auto env = std::make_unique<OrderChallengeEnv>();
  env->reset(seed.value_or(0));
  return env;
}

}  // namespace arena
