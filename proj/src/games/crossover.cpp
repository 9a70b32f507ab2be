#include <array>
#include <sstream>

#include "arena/games.hpp"

namespace arena {
namespace {

const char* kRules = R"RB(# Cross Over

## Objective

Invade the opponent's territory or eliminate all opposing pieces. You win the
moment one of your pieces ends a move inside the opponent's home squares, or
when your opponent has no pieces left on the track.

## Setup

The board is a linear track of 11 squares numbered 0 through 10. Squares 0-2
are Player 1's territory, squares 8-10 are Player 2's territory, and squares
3-7 are neutral. Player 1's pieces A, B, C start on squares 0, 1 and 2.
Player 2's pieces A, B, C start on squares 10, 9 and 8. Player 1 moves first.

## Game Components

- A track of 11 squares with two home zones and a neutral middle.
- Three labeled pieces (A, B, C) per player.

## Turns

Players alternate turns. On your turn you must move exactly one of your own
pieces either one or two steps along the track, always toward the opponent's
side: Player 1 moves toward square 10, Player 2 moves toward square 0.

## Rules and Mechanics

1. A move may not leave the track and may not end on a square occupied by one
   of your own pieces.
2. A two-step move may pass over any occupied square; only the destination
   matters.
3. Ending a move on a square occupied by an opponent piece captures that
   piece and removes it from the game.
4. Ending a move inside the opponent's territory (squares 8-10 for Player 1,
   squares 0-2 for Player 2) wins the game immediately.
5. Capturing the opponent's last piece wins the game immediately.
6. A player who has no legal move on their turn loses.

## Scoring

No points are tracked. Victory is by invasion, elimination, or the opponent
running out of moves.

## Examples

- A Player 2 piece on square 8 moves two steps onto a Player 1 piece on
  square 6: the Player 1 piece is captured.
- A Player 2 piece on square 4 moves two steps to square 2, inside Player
  1's territory: Player 2 wins.
)RB";

const char* kActions = R"AM(The action space has 6 discrete actions combining
which of your pieces to move (A, B or C) with how far to move it (one or two
steps). Movement direction is fixed: always toward the opponent's side of the
track. An action is legal when the piece is still on the board and its
destination is on the track and not occupied by one of your own pieces.

- 0: move your piece A one step
- 1: move your piece A two steps
- 2: move your piece B one step
- 3: move your piece B two steps
- 4: move your piece C one step
- 5: move your piece C two steps
)AM";

class CrossOverEnv final : public TurnBasedEnv {
 public:
  const GameSpec& spec() const override { return kSpec; }

  std::vector<ActionIndex> valid_moves() const override {
    if (done_) return {};
    return moves_for(current_);
  }

  Observation observe() const override {
    // Track from the mover's perspective: +1 own piece, -1 opponent piece,
    // mirrored so the mover always advances toward index 10.
    Observation obs(11, 0.0f);
    bool flip = current_ == Player::P2;
    for (int pos : pieces(current_))
      if (pos >= 0) obs[flip ? 10 - pos : pos] = 1.0f;
    for (int pos : pieces(other(current_)))
      if (pos >= 0) obs[flip ? 10 - pos : pos] = -1.0f;
    return obs;
  }

  std::string render() const override {
    std::ostringstream os;
    os << "Cross Over\n";
    os << "Track (P1 territory 0-2, P2 territory 8-10):\n";
    for (int sq = 0; sq <= 10; ++sq) {
      std::string label = "..  ";
      for (int k = 0; k < 3; ++k) {
        if (p1_[k] == sq) label = std::string("P1-") + char('A' + k);
        if (p2_[k] == sq) label = std::string("P2-") + char('A' + k);
      }
      os << "  " << sq << ": " << label << "\n";
    }
    os << "Current player: " << player_name(current_) << "\n";
    return os.str();
  }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<CrossOverEnv>(*this);
  }

  static const GameSpec kSpec;

 protected:
  void reset_state(SplitMix64&) override {
    p1_ = {0, 1, 2};
    p2_ = {10, 9, 8};
  }

  Transition apply(ActionIndex action) override {
    int piece = action / 2;
    int steps = action % 2 + 1;
    auto& own = pieces(current_);
    auto& opp = pieces(other(current_));
    int dest = own[piece] + (current_ == Player::P1 ? steps : -steps);
    for (int& pos : opp)
      if (pos == dest) pos = -1;  // capture
    own[piece] = dest;
    if (in_territory(dest, other(current_))) return win();
    bool opp_alive = false;
    for (int pos : opp) opp_alive = opp_alive || pos >= 0;
    if (!opp_alive) return win();
    if (moves_for(other(current_)).empty()) return win();  // opponent stuck
    return continue_with(other(current_));
  }

 private:
  std::array<int, 3>& pieces(Player p) { return p == Player::P1 ? p1_ : p2_; }
  const std::array<int, 3>& pieces(Player p) const {
    return p == Player::P1 ? p1_ : p2_;
  }

  static bool in_territory(int sq, Player owner) {
    return owner == Player::P1 ? sq <= 2 : sq >= 8;
  }

  std::vector<ActionIndex> moves_for(Player p) const {
    std::vector<ActionIndex> moves;
    const auto& own = pieces(p);
    for (int piece = 0; piece < 3; ++piece) {
      if (own[piece] < 0) continue;
      for (int steps = 1; steps <= 2; ++steps) {
        int dest = own[piece] + (p == Player::P1 ? steps : -steps);
        if (dest < 0 || dest > 10) continue;
        bool own_occupied = false;
        for (int k = 0; k < 3; ++k)
          own_occupied = own_occupied || (k != piece && own[k] == dest);
        if (!own_occupied) moves.push_back(piece * 2 + steps - 1);
      }
    }
    return moves;
  }

  std::array<int, 3> p1_ = {0, 1, 2};
  std::array<int, 3> p2_ = {10, 9, 8};
};

const GameSpec CrossOverEnv::kSpec = {
    "crossover", "Cross Over", kRules, kActions,
    /*action_space_size=*/6, /*observation_dim=*/11,
    /*move_cap=*/100, /*stochastic_setup=*/false};

}  // namespace

std::unique_ptr<Environment> make_crossover(std::optional<uint64_t> seed) {
  auto env = std::make_unique<CrossOverEnv>();
  env->reset(seed.value_or(0));
  return env;
}

}  // namespace arena
