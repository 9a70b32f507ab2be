#include <sstream>

#include "arena/games.hpp"

namespace arena {
namespace {

const char* kRules = R"RB(# Reach 27

## Objective

Be the player whose addition brings the running total to exactly 27. If your
addition pushes the total past 27, you lose immediately.

## Setup

The game begins with a shared running total of 0. Player 1 moves first.

## Game Components

- A single shared running total, starting at 0.
- The numbers 1 through 9, available to both players on every turn.

## Turns

Players alternate turns. On your turn you must add one number between 1 and 9
(inclusive) to the running total. There is no passing.

## Rules and Mechanics

1. On each turn the mover picks a number from 1 to 9 and adds it to the total.
2. If the new total is exactly 27, the mover wins immediately.
3. If the new total exceeds 27, the mover loses immediately.
4. Otherwise play passes to the other player.

## Scoring

There is no point tracking. The winner is the player who makes the total
exactly 27, or the opponent of a player who overshoots it.

## Examples

- Total is 18. You add 9. The total is 27: you win.
- Total is 25. You add 3. The total is 28: you lose.
- Total is 10. You add 7. The total is 17 and your opponent moves next.
)RB";

const char* kActions = R"AM(The action space has 9 discrete actions. Action
index i corresponds to adding the number i+1 to the running total: index 0
adds 1, index 1 adds 2, and so on up to index 8, which adds 9. Every action is
legal on every turn while the game is running.

- 0: add 1
- 1: add 2
- 2: add 3
- 3: add 4
- 4: add 5
- 5: add 6
- 6: add 7
- 7: add 8
- 8: add 9
)AM";

class Reach27Env final : public TurnBasedEnv {
 public:
  const GameSpec& spec() const override { return kSpec; }

  std::vector<ActionIndex> valid_moves() const override {
    if (done_) return {};
    std::vector<ActionIndex> moves(9);
    for (int i = 0; i < 9; ++i) moves[i] = i;
    return moves;
  }

  Observation observe() const override {
    Observation obs(29, 0.0f);
    obs[std::min(total_, 28 - 1)] = 1.0f;
    obs[28] = static_cast<float>(total_) / 27.0f;
    return obs;
  }

  std::string render() const override {
    std::ostringstream os;
    os << "Reach 27\n";
    os << "Total: " << total_ << "\n";
    os << "Current player: " << player_name(current_) << "\n";
    return os.str();
  }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<Reach27Env>(*this);
  }

  static const GameSpec kSpec;

 protected:
  void reset_state(SplitMix64&) override { total_ = 0; }

  Transition apply(ActionIndex action) override {
    total_ += action + 1;
    if (total_ == 27) return win();
    if (total_ > 27) return lose();
    return continue_with(other(current_));
  }

 private:
  int total_ = 0;
};

const GameSpec Reach27Env::kSpec = {
    "reach27", "Reach 27", kRules, kActions,
    /*action_space_size=*/9, /*observation_dim=*/29,
    /*move_cap=*/100, /*stochastic_setup=*/false};

}  // namespace

std::unique_ptr<Environment> make_reach27(std::optional<uint64_t> seed) {
  auto env = std::make_unique<Reach27Env>();
  env->reset(seed.value_or(0));
  return env;
}

}  // namespace arena
