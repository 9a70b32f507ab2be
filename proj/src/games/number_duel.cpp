#include <sstream>

#include "arena/games.hpp"

namespace arena {
namespace {

const char* kRules = R"RB(# Number Duel

## Objective

Capture all of your opponent's numbers. You win the moment your opponent has
no numbers remaining in their set.

## Setup

1. Each player receives a set of unique numbers from 1 to N inclusive, with
   N = 10.
2. Player 1 is the first Attacker; Player 2 is the first Defender. The roles
   swap after every round.

## Game Components

- Two private number sets, one per player, each starting as {1, ..., 10}.
- A role marker indicating the current Attacker and Defender.

## Turns

Each round has two moves. First the Attacker secretly commits one number from
their own remaining set. Then the Defender, knowing only the roles and the
visible sets but not the committed number, picks one number from their own
remaining set. The two numbers are then revealed and the round is resolved.

## Rules and Mechanics

1. You may only pick numbers still present in your own set.
2. Resolution: if the Attacker's number is strictly greater than the
   Defender's, the attack succeeds - the Defender's chosen number is captured
   (removed from the Defender's set) and the Attacker keeps theirs.
3. Otherwise (the Defender's number is greater than or equal to the
   Attacker's), the Attacker's chosen number is captured and the Defender
   keeps theirs. Ties therefore go against the Attacker.
4. Exactly one number is captured each round. After resolution the roles
   swap: the previous Defender attacks next.
5. The game ends immediately when a player's set becomes empty; that player
   loses.

## Scoring

No points are tracked. The winner is the player whose opponent first runs out
of numbers.

## Examples

- Attacker plays 3, Defender plays 2. 3 > 2, so the attack succeeds and the
  Defender's 2 is captured. The Attacker's 3 stays in their set.
- Attacker plays 2, Defender plays 2. The tie fails the attack, so the
  Attacker's 2 is captured.
- Both players hold only {1}. The Attacker must play 1 and the Defender must
  play 1; the tie captures the Attacker's last number, so the Defender wins.
)RB";

const char* kActions = R"AM(The action space indices range from 0 to 9,
corresponding directly to the numbers a player can use for their turn: index
i maps to the number i+1 from the mover's remaining set. The same mapping is
used for attacking and defending. An action is legal only while the number
i+1 is still present in the mover's own set.

- 0: play number 1
- 1: play number 2
- 2: play number 3
- 3: play number 4
- 4: play number 5
- 5: play number 6
- 6: play number 7
- 7: play number 8
- 8: play number 9
- 9: play number 10
)AM";

class NumberDuelEnv final : public TurnBasedEnv {
 public:
  explicit NumberDuelEnv(int n = 10) : n_(n) {
    spec_ = kSpecTemplate;
    spec_.action_space_size = n_;
    spec_.observation_dim = 2 * n_ + 1;
  }

  const GameSpec& spec() const override { return spec_; }

  std::vector<ActionIndex> valid_moves() const override {
    if (done_) return {};
    std::vector<ActionIndex> moves;
    int mine = set_of(current_);
    for (int i = 0; i < n_; ++i)
      if ((mine >> i) & 1) moves.push_back(i);
    return moves;
  }

  Observation observe() const override {
    Observation obs(2 * n_ + 1, 0.0f);
    int mine = set_of(current_);
    int theirs = set_of(other(current_));
    for (int i = 0; i < n_; ++i) {
      obs[i] = (mine >> i) & 1 ? 1.0f : 0.0f;
      obs[n_ + i] = (theirs >> i) & 1 ? 1.0f : 0.0f;
    }
    obs[2 * n_] = current_ == attacker_ ? 1.0f : 0.0f;
    return obs;
  }

  std::string render() const override {
    std::ostringstream os;
    os << "Number Duel\n";
    os << "Current role: " << (current_ == attacker_ ? "Attacker" : "Defender")
       << "\n";
    os << "P1 numbers: " << set_string(p1_set_) << "\n";
    os << "P2 numbers: " << set_string(p2_set_) << "\n";
    os << "Current player: " << player_name(current_) << "\n";
    return os.str();
  }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<NumberDuelEnv>(*this);
  }

 protected:
  void reset_state(SplitMix64&) override {
    p1_set_ = p2_set_ = (1 << n_) - 1;
    attacker_ = Player::P1;
    pending_attack_ = -1;
  }

  Transition apply(ActionIndex action) override {
    if (current_ == attacker_) {
      pending_attack_ = action;
      return continue_with(other(current_));  // defender responds
    }
    // Defender moved; resolve the round. Strict attack succeeds, otherwise
    // the attacker's number is captured.
    Player defender = current_;
    if (pending_attack_ > action) {
      set_of(defender) &= ~(1 << action);
    } else {
      set_of(attacker_) &= ~(1 << pending_attack_);
    }
    pending_attack_ = -1;
    if (set_of(attacker_) == 0) return win();      // defender captured the last
    if (set_of(defender) == 0) return lose();      // defender lost its last
    attacker_ = defender;                          // roles swap each round
    return continue_with(attacker_);
  }

 private:
  int& set_of(Player p) { return p == Player::P1 ? p1_set_ : p2_set_; }
  int set_of(Player p) const { return p == Player::P1 ? p1_set_ : p2_set_; }

  std::string set_string(int mask) const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int i = 0; i < n_; ++i)
      if ((mask >> i) & 1) {
        if (!first) os << ", ";
        os << (i + 1);
        first = false;
      }
    os << "}";
    return os.str();
  }

  static const GameSpec kSpecTemplate;

  int n_;
  GameSpec spec_;
  int p1_set_ = 0, p2_set_ = 0;
  Player attacker_ = Player::P1;
  int pending_attack_ = -1;
};

const GameSpec NumberDuelEnv::kSpecTemplate = {
    "number-duel", "Number Duel", kRules, kActions,
    /*action_space_size=*/10, /*observation_dim=*/21,
    /*move_cap=*/100, /*stochastic_setup=*/false};

}  // namespace

std::unique_ptr<Environment> make_number_duel(std::optional<uint64_t> seed) {
  auto env = std::make_unique<NumberDuelEnv>();
  env->reset(seed.value_or(0));
  return env;
}

std::unique_ptr<Environment> make_number_duel_n(int n) {
  if (n < 1 || n > 25) throw ContractError("number-duel: N out of range");
  auto env = std::make_unique<NumberDuelEnv>(n);
  env->reset(0);
  return env;
}

}  // namespace arena
