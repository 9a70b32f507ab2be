#include <sstream>

#include "arena/games.hpp"

namespace arena {
namespace {

const char* kRules = R"RB(# Isolation

## Objective

Leave your opponent without a valid move. The first player whose opponent
cannot claim any square wins.

## Setup

The board is a line of 13 squares numbered 1 through 13, all unclaimed.
Player 1 moves first.

## Game Components

- A line of 13 squares, each either unclaimed or claimed.

## Turns

Players alternate turns. On your turn you must claim one unclaimed square
that is not adjacent to any claimed square, regardless of who claimed the
neighbor. There is no passing.

## Rules and Mechanics

1. A square is claimable only if it is unclaimed and neither of its immediate
   neighbors (distance 1 on the line) has been claimed by either player.
2. Claimed squares stay claimed for the rest of the game.
3. If, after your claim, your opponent has no claimable square, you win
   immediately.

## Scoring

No points are tracked. The winner is the player who makes the final claim.

## Examples

- The line is empty and you claim square 7: squares 6 and 8 become
  unclaimable for the rest of the game.
- Only square 4 is claimable and it is your turn: claiming it leaves your
  opponent with no move, so you win.
)RB";

const char* kActions = R"AM(The action space has 13 discrete actions. Action
index i claims square i+1 on the line: index 0 claims square 1, up to index
12, which claims square 13. An action is legal only when the square is
unclaimed and neither neighbor has been claimed.

- 0: claim square 1
- 1: claim square 2
- 2: claim square 3
- 3: claim square 4
- 4: claim square 5
- 5: claim square 6
- 6: claim square 7
- 7: claim square 8
- 8: claim square 9
- 9: claim square 10
- 10: claim square 11
- 11: claim square 12
- 12: claim square 13
)AM";

class IsolationEnv final : public TurnBasedEnv {
 public:
  const GameSpec& spec() const override { return kSpec; }

  std::vector<ActionIndex> valid_moves() const override {
    if (done_) return {};
    return claimable();
  }

  Observation observe() const override {
    Observation obs(13);
    for (int i = 0; i < 13; ++i)
      obs[i] = (claimed_ >> i) & 1 ? 1.0f : 0.0f;
    return obs;
  }

  std::string render() const override {
    std::ostringstream os;
    os << "Isolation\nLine:";
    for (int i = 0; i < 13; ++i) os << ' ' << (((claimed_ >> i) & 1) ? 'X' : '.');
    os << "\n      1 2 3 4 5 6 7 8 9 ...\n";
    os << "Current player: " << player_name(current_) << "\n";
    return os.str();
  }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<IsolationEnv>(*this);
  }

  static const GameSpec kSpec;

 protected:
  void reset_state(SplitMix64&) override { claimed_ = 0; }

  Transition apply(ActionIndex action) override {
    claimed_ |= 1 << action;
    if (claimable().empty()) return win();  // opponent has no move
    return continue_with(other(current_));
  }

 private:
  std::vector<ActionIndex> claimable() const {
    std::vector<ActionIndex> moves;
    for (int i = 0; i < 13; ++i) {
      if ((claimed_ >> i) & 1) continue;
      if (i > 0 && ((claimed_ >> (i - 1)) & 1)) continue;
      if (i < 12 && ((claimed_ >> (i + 1)) & 1)) continue;
      moves.push_back(i);
    }
    return moves;
  }

  int claimed_ = 0;
};

const GameSpec IsolationEnv::kSpec = {
    "isolation", "Isolation", kRules, kActions,
    /*action_space_size=*/13, /*observation_dim=*/13,
    /*move_cap=*/100, /*stochastic_setup=*/false};

}  // namespace

std::unique_ptr<Environment> make_isolation(std::optional<uint64_t> seed) {
  auto env = std::make_unique<IsolationEnv>();
  env->reset(seed.value_or(0));
  return env;
}

}  // namespace arena
