#include <array>
#include <sstream>

#include "arena/games.hpp"

namespace arena {
namespace {

// All primes <= 50; the action space indexes into this fixed list.
constexpr std::array<int, 15> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                         23, 29, 31, 37, 41, 43, 47};

const char* kRules = R"RB(# Divide and Conquer

## Objective

Be the player who reduces the shared number exactly to 1. The player whose
division leaves the number at 1 wins immediately.

## Setup

A starting integer N is dealt at the beginning of the game. N is a product of
three to six prime factors, each drawn from {2, 3, 5, 7, 11, 13}, so it is
always fully reducible. Player 1 moves first.

## Game Components

- A single shared integer N.
- A fixed list of usable primes: all primes up to 50, namely 2, 3, 5, 7, 11,
  13, 17, 19, 23, 29, 31, 37, 41, 43, 47. Only primes from this list may be
  chosen, and only when they divide N exactly.

## Turns

Players alternate turns. On your turn you must pick one prime from the list
that divides the current N exactly, and divide N by it. There is no passing.

## Rules and Mechanics

1. A division is legal only if the chosen prime divides N with no remainder.
2. The division replaces N by N / p.
3. The player whose division makes N equal to 1 wins immediately.

## Scoring

No points are tracked. The winner is the player who reduces N to exactly 1.

## Examples

- N = 12. Dividing by 3 leaves N = 4, and your opponent moves next.
- N = 2. Dividing by 2 leaves N = 1: you win.
- N = 9. Dividing by 2 is illegal because 2 does not divide 9.
)RB";

const char* kActions = R"AM(The action space has 15 discrete actions, one per
prime in the hard-coded list of all primes up to 50, in ascending order.
Action index i divides the shared number by the i-th prime of that list. An
action is legal only when its prime divides the current number exactly.

- 0: divide by 2
- 1: divide by 3
- 2: divide by 5
- 3: divide by 7
- 4: divide by 11
- 5: divide by 13
- 6: divide by 17
- 7: divide by 19
- 8: divide by 23
- 9: divide by 29
- 10: divide by 31
- 11: divide by 37
- 12: divide by 41
- 13: divide by 43
- 14: divide by 47
)AM";

class DivideEnv final : public TurnBasedEnv {
 public:
  DivideEnv() = default;
  explicit DivideEnv(long long forced_n) : forced_n_(forced_n) {}

  const GameSpec& spec() const override { return kSpec; }

  std::vector<ActionIndex> valid_moves() const override {
    if (done_) return {};
    std::vector<ActionIndex> moves;
    for (int i = 0; i < static_cast<int>(kPrimes.size()); ++i)
      if (n_ % kPrimes[i] == 0) moves.push_back(i);
    return moves;
  }

  Observation observe() const override {
    Observation obs(kPrimes.size());
    long long m = n_;
    for (size_t i = 0; i < kPrimes.size(); ++i) {
      int e = 0;
      while (m % kPrimes[i] == 0) {
        m /= kPrimes[i];
        ++e;
      }
      obs[i] = static_cast<float>(e) / 6.0f;
    }
    return obs;
  }

  std::string render() const override {
    std::ostringstream os;
    os << "Divide and Conquer\n";
    os << "N: " << n_ << "\n";
    os << "Current player: " << player_name(current_) << "\n";
    return os.str();
  }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<DivideEnv>(*this);
  }

  static const GameSpec kSpec;

 protected:
  void reset_state(SplitMix64& rng) override {
    if (forced_n_ > 0) {
      n_ = forced_n_;
      return;
    }
    int count = 3 + static_cast<int>(rng.next_below(4));
    n_ = 1;
    for (int i = 0; i < count; ++i)
      n_ *= kPrimes[rng.next_below(6)];  // factors from {2,3,5,7,11,13}
  }

  Transition apply(ActionIndex action) override {
    n_ /= kPrimes[action];
    if (n_ == 1) return win();
    return continue_with(other(current_));
  }

 private:
  long long n_ = 1;
  long long forced_n_ = 0;
};

const GameSpec DivideEnv::kSpec = {
    "divide", "Divide and Conquer", kRules, kActions,
    /*action_space_size=*/15, /*observation_dim=*/15,
    /*move_cap=*/100, /*stochastic_setup=*/true};

}  // namespace

std::unique_ptr<Environment> make_divide(std::optional<uint64_t> seed) {
  auto env = std::make_unique<DivideEnv>();
  env->reset(seed.value_or(0));
  return env;
}

std::unique_ptr<Environment> make_divide_at(long long n) {
  if (n < 2) throw ContractError("divide: starting number must be >= 2");
  long long m = n;
  for (int p : kPrimes)
    while (m % p == 0) m /= p;
  if (m != 1)
    throw ContractError("divide: starting number has a prime factor > 50");
  auto env = std::make_unique<DivideEnv>(n);
  env->reset(0);
  return env;
}

}  // namespace arena
