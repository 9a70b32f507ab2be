#include <sstream>

#include "arena/games.hpp"

namespace arena {
namespace {

const char* kRules = R"RB(# Palindrome Duel

## Objective

Avoid forming palindromes. A player whose placement creates a palindromic
substring of length 3 or more loses immediately. A player who legally places
the 11th symbol wins.

## Setup

The game starts with an empty sequence. Player 1 moves first.

## Game Components

- A shared sequence of symbols, each either X or O, built up from both ends.

## Turns

Players alternate turns. On your turn you must add one symbol, X or O, to
either the left or the right end of the sequence. All four combinations are
always available; there is no passing.

## Rules and Mechanics

1. After your placement, every contiguous substring of length 3 or more that
   contains the newly placed symbol is checked. If any such substring is a
   palindrome (reads the same forwards and backwards), you lose immediately.
2. Substrings of length 1 or 2 never count as palindromes here.
3. If your placement is safe and brings the sequence to 11 symbols, you win.

## Scoring

No points are tracked. The game is decided by the first palindrome or by the
11th symbol.

## Examples

- The sequence is XO and you add X on the right, making XOX. XOX is a
  palindrome of length 3 containing your symbol: you lose.
- The sequence is XXOO and you add O on the left, making OXXOO. No substring
  of length 3 or more containing the new leftmost O is a palindrome, so play
  continues.
)RB";

const char* kActions = R"AM(The action space has 4 discrete actions combining
the symbol to place (X or O) with the end of the sequence to place it on
(left or right). Every action is legal on every turn while the game is
running.

- 0: place X on the left end
- 1: place X on the right end
- 2: place O on the left end
- 3: place O on the right end
)AM";

class PalindromeDuelEnv final : public TurnBasedEnv {
 public:
  const GameSpec& spec() const override { return kSpec; }

  std::vector<ActionIndex> valid_moves() const override {
    if (done_) return {};
    return {0, 1, 2, 3};
  }

  Observation observe() const override {
    Observation obs(22, 0.0f);
    for (size_t i = 0; i < seq_.size(); ++i) {
      if (seq_[i] == 'X')
        obs[2 * i] = 1.0f;
      else
        obs[2 * i + 1] = 1.0f;
    }
    return obs;
  }

  std::string render() const override {
    std::ostringstream os;
    os << "Palindrome Duel\n";
    os << "Sequence: " << (seq_.empty() ? "(empty)" : seq_) << "\n";
    os << "Length: " << seq_.size() << " of 11\n";
    os << "Current player: " << player_name(current_) << "\n";
    return os.str();
  }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<PalindromeDuelEnv>(*this);
  }

  static const GameSpec kSpec;

 protected:
  void reset_state(SplitMix64&) override { seq_.clear(); }

  Transition apply(ActionIndex action) override {
    char symbol = action < 2 ? 'X' : 'O';
    bool left = action % 2 == 0;
    size_t new_index;
    if (left) {
      seq_.insert(seq_.begin(), symbol);
      new_index = 0;
    } else {
      seq_.push_back(symbol);
      new_index = seq_.size() - 1;
    }
    if (creates_palindrome(new_index)) return lose();
    if (seq_.size() == 11) return win();
    return continue_with(other(current_));
  }

 private:
  bool creates_palindrome(size_t idx) const {
    size_t n = seq_.size();
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 3; j <= n; ++j) {
        if (idx < i || idx >= j) continue;
        bool pal = true;
        for (size_t a = i, b = j - 1; a < b; ++a, --b)
          if (seq_[a] != seq_[b]) {
            pal = false;
            break;
          }
        if (pal) return true;
      }
    }
    return false;
  }

  std::string seq_;
};

const GameSpec PalindromeDuelEnv::kSpec = {
    "palindrome", "Palindrome Duel", kRules, kActions,
    /*action_space_size=*/4, /*observation_dim=*/22,
    /*move_cap=*/100, /*stochastic_setup=*/false};

}  // namespace

std::unique_ptr<Environment> make_palindrome(std::optional<uint64_t> seed) {
  auto env = std::make_unique<PalindromeDuelEnv>();
  env->reset(seed.value_or(0));
  return env;
}

}  // namespace arena
