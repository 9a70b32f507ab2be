#include <sstream>

#include "arena/games.hpp"

namespace arena {
namespace {

const char* kRules = R"RB(# Light Out Duel

## Objective

Switch off the last remaining light. The player who flips off the final light
wins the game.

## Setup

Seven lights, numbered 1 through 7, are arranged in a row. All seven start
switched on. Player 1 moves first.

## Game Components

- Seven lights in a fixed row, each either on or off.

## Turns

Players alternate turns. On your turn you must switch off either exactly one
light that is on, or exactly two lights that are on and occupy adjacent
positions in the row (positions i and i+1). There is no passing.

## Rules and Mechanics

1. A single-light move may target any light that is currently on.
2. A two-light move may target positions i and i+1 only if both lights are
   currently on. The lights between two on lights do not matter; adjacency is
   by position in the row, not by runs of on lights.
3. Lights that are off stay off for the rest of the game.
4. The player who switches off the last remaining light wins immediately.

## Scoring

No points are tracked. Victory goes to whoever turns off the final light.

## Examples

- Lights 2 and 3 are the only ones on. Switching off the pair (2,3) wins.
- Only light 5 is on. Switching off light 5 wins.
- Lights 1, 3, 5 are on. No pair move is available because no two on lights
  are positionally adjacent; you must switch off a single light.
)RB";

const char* kActions = R"AM(The action space has 13 discrete actions. Indices
0 through 6 switch off a single light: index i switches off light i+1.
Indices 7 through 12 switch off a pair of positionally adjacent lights: index
7+i switches off lights i+1 and i+2. A single-light action is legal when that
light is on; a pair action is legal when both of its lights are on.

- 0: switch off light 1
- 1: switch off light 2
- 2: switch off light 3
- 3: switch off light 4
- 4: switch off light 5
- 5: switch off light 6
- 6: switch off light 7
- 7: switch off lights 1 and 2
- 8: switch off lights 2 and 3
- 9: switch off lights 3 and 4
- 10: switch off lights 4 and 5
- 11: switch off lights 5 and 6
- 12: switch off lights 6 and 7
)AM";

class LightOutEnv final : public TurnBasedEnv {
 public:
  const GameSpec& spec() const override { return kSpec; }

  std::vector<ActionIndex> valid_moves() const override {
    if (done_) return {};
    std::vector<ActionIndex> moves;
    for (int i = 0; i < 7; ++i)
      if (on(i)) moves.push_back(i);
    for (int i = 0; i < 6; ++i)
      if (on(i) && on(i + 1)) moves.push_back(7 + i);
    return moves;
  }

  Observation observe() const override {
    Observation obs(7);
    for (int i = 0; i < 7; ++i) obs[i] = on(i) ? 1.0f : 0.0f;
    return obs;
  }

  std::string render() const override {
    std::ostringstream os;
    os << "Light Out Duel\nLights:";
    for (int i = 0; i < 7; ++i) os << ' ' << (on(i) ? '#' : '.');
    os << "\n        1 2 3 4 5 6 7\n";
    os << "Current player: " << player_name(current_) << "\n";
    return os.str();
  }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<LightOutEnv>(*this);
  }

  static const GameSpec kSpec;

 protected:
  void reset_state(SplitMix64&) override { lights_ = 0x7f; }

  Transition apply(ActionIndex action) override {
    if (action < 7) {
      lights_ &= ~(1 << action);
    } else {
      int i = action - 7;
      lights_ &= ~(3 << i);
    }
    if (lights_ == 0) return win();
    return continue_with(other(current_));
  }

 private:
  bool on(int i) const { return (lights_ >> i) & 1; }
  int lights_ = 0x7f;
};

const GameSpec LightOutEnv::kSpec = {
    "lightout", "Light Out Duel", kRules, kActions,
    /*action_space_size=*/13, /*observation_dim=*/7,
    /*move_cap=*/100, /*stochastic_setup=*/false};

}  // namespace

std::unique_ptr<Environment> make_lightout(std::optional<uint64_t> seed) {
  auto env = std::make_unique<LightOutEnv>();
  env->reset(seed.value_or(0));
  return env;
}

}  // namespace arena
