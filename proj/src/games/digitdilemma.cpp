#include <sstream>

#include "arena/games.hpp"

namespace arena {
namespace {

const char* kRules = R"RB(# Digit Dilemma

## Objective

Assemble the higher 10-digit number. When the shared digit line is exhausted,
the player whose assembled number is larger wins; a tie goes to the second
mover (Player 2).

## Setup

A line of 20 random digits (0-9, leading zeros allowed) is dealt face up at
the start of the game. Both players start with an empty number. Player 1
moves first.

## Game Components

- A shared line of 20 digits, shrinking from both ends as the game proceeds.
- One growing digit string per player; each ends at exactly 10 digits.

## Turns

Players alternate turns. On your turn you must take exactly one digit from
either the left end or the right end of the remaining line and append it to
the right of your own number. There is no passing.

## Rules and Mechanics

1. Only the two end digits of the remaining line are available each turn.
2. Taken digits are appended in the order acquired: your first digit is the
   most significant digit of your number, your last the least significant.
3. The game ends when the line is empty. Both numbers then have 10 digits
   and are compared as numbers (equivalently, as equal-length digit strings;
   leading zeros are allowed and compare normally).
4. The higher number wins. If the numbers are equal, the second mover
   (Player 2) wins.

## Scoring

No points beyond the assembled numbers; the comparison above decides the
game.

## Examples

- The line is 3...7 and you take the right end: the digit 7 becomes your next
  digit, and the line shrinks by one from the right.
- Both numbers turn out equal: Player 2 wins.
)RB";

const char* kActions = R"AM(The action space has 2 discrete actions. Action
index 0 takes the digit at the left end of the remaining line; action index 1
takes the digit at the right end. Both actions are legal whenever the line is
non-empty (with a single digit left, both ends refer to the same digit).

- 0: take the leftmost remaining digit
- 1: take the rightmost remaining digit
)AM";

class DigitDilemmaEnv final : public TurnBasedEnv {
 public:
  DigitDilemmaEnv() = default;
  explicit DigitDilemmaEnv(std::string line) : forced_line_(std::move(line)) {}

  const GameSpec& spec() const override { return kSpec; }

  std::vector<ActionIndex> valid_moves() const override {
    if (done_) return {};
    return {0, 1};
  }

  Observation observe() const override {
    Observation obs(40, 0.0f);
    for (int i = left_; i <= right_; ++i)
      obs[i] = static_cast<float>(line_[i] - '0' + 1) / 10.0f;
    const std::string& own = digits(current_);
    const std::string& opp = digits(other(current_));
    for (size_t i = 0; i < own.size(); ++i)
      obs[20 + i] = static_cast<float>(own[i] - '0' + 1) / 10.0f;
    for (size_t i = 0; i < opp.size(); ++i)
      obs[30 + i] = static_cast<float>(opp[i] - '0' + 1) / 10.0f;
    return obs;
  }

  std::string render() const override {
    std::ostringstream os;
    os << "Digit Dilemma\n";
    os << "Line: "
       << (left_ > right_ ? std::string("(empty)")
                          : line_.substr(left_, right_ - left_ + 1))
       << "\n";
    os << "P1 number: " << (p1_digits_.empty() ? "-" : p1_digits_) << "\n";
    os << "P2 number: " << (p2_digits_.empty() ? "-" : p2_digits_) << "\n";
    os << "Current player: " << player_name(current_) << "\n";
    return os.str();
  }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<DigitDilemmaEnv>(*this);
  }

  static const GameSpec kSpec;

 protected:
  void reset_state(SplitMix64& rng) override {
    if (!forced_line_.empty()) {
      line_ = forced_line_;
    } else {
      line_.clear();
      for (int i = 0; i < 20; ++i)
        line_.push_back(static_cast<char>('0' + rng.next_below(10)));
    }
    left_ = 0;
    right_ = static_cast<int>(line_.size()) - 1;
    p1_digits_.clear();
    p2_digits_.clear();
  }

  Transition apply(ActionIndex action) override {
    char d = action == 0 ? line_[left_++] : line_[right_--];
    digits(current_).push_back(d);
    if (left_ <= right_) return continue_with(other(current_));
    // Line exhausted; the mover (always the second mover) resolves the game.
    const std::string& own = digits(current_);
    const std::string& opp = digits(other(current_));
    if (own > opp) return win();
    if (own < opp) return lose();
    return current_ == Player::P2 ? win() : lose();  // tie: second mover
  }

 private:
  std::string& digits(Player p) {
    return p == Player::P1 ? p1_digits_ : p2_digits_;
  }
  const std::string& digits(Player p) const {
    return p == Player::P1 ? p1_digits_ : p2_digits_;
  }

  std::string forced_line_;
  std::string line_;
  int left_ = 0, right_ = -1;
  std::string p1_digits_, p2_digits_;
};

const GameSpec DigitDilemmaEnv::kSpec = {
    "digitdilemma", "Digit Dilemma", kRules, kActions,
    /*action_space_size=*/2, /*observation_dim=*/40,
    /*move_cap=*/100, /*stochastic_setup=*/true};

}  // namespace

std::unique_ptr<Environment> make_digitdilemma(std::optional<uint64_t> seed) {
  auto env = std::make_unique<DigitDilemmaEnv>();
  env->reset(seed.value_or(0));
  return env;
}

std::unique_ptr<Environment> make_digitdilemma_line(const std::string& line) {
  if (line.empty() || line.size() % 2 != 0 || line.size() > 20)
    throw ContractError("digitdilemma: line must have even length <= 20");
  for (char c : line)
    if (c < '0' || c > '9')
      throw ContractError("digitdilemma: line must contain digits only");
  auto env = std::make_unique<DigitDilemmaEnv>(line);
  env->reset(0);
  return env;
}

}  // namespace arena
