#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arena/rng.hpp"

namespace arena {

using ActionIndex = int;
using Observation = std::vector<float>;

enum class Player { P1, P2 };

inline Player other(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }
inline const char* player_name(Player p) { return p == Player::P1 ? "P1" : "P2"; }

// Precondition violation in engine API usage (not a game-play event).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct StepOutcome {
  Observation observation;
  float reward = 0.0f;     // mover's reward: +1 win, -1 loss, 0 otherwise,
                           // -10 invalid action (mover recorded as loser)
  bool terminated = false;
  bool truncated = false;
};

struct GameSpec {
  std::string id;
  std::string title;
  std::string rulebook_text;
  std::string action_map_text;
  int action_space_size = 0;
  int observation_dim = 0;
  int move_cap = 100;
  bool stochastic_setup = false;
};

// The contract every game implements: reset / step / render / valid_moves,
// plus clone() so searches and solvers can branch without replaying.
// Observations are always encoded from the current mover's perspective.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const GameSpec& spec() const = 0;
  virtual Observation reset(std::optional<uint64_t> seed = std::nullopt) = 0;
  virtual StepOutcome step(ActionIndex action) = 0;
  virtual std::string render() const = 0;
  virtual std::vector<ActionIndex> valid_moves() const = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;

  virtual Player current_player() const = 0;
  virtual int move_count() const = 0;
  virtual bool done() const = 0;
  virtual Observation observe() const = 0;
};

// Shared bookkeeping for two-player alternating games. Subclasses implement
// the four hooks; step() handles the invalid-action path (-10, terminated,
// mover recorded as loser), move counting and seat switching.
class TurnBasedEnv : public Environment {
 public:
  Observation reset(std::optional<uint64_t> seed = std::nullopt) override {
    uint64_t s = seed.value_or(default_seed_);
    default_seed_ = s;
    SplitMix64 rng(SplitMix64::mix(s, 0x67616d65));
    current_ = Player::P1;
    move_count_ = 0;
    done_ = false;
    reset_state(rng);
    return observe();
  }

  StepOutcome step(ActionIndex action) override {
    if (done_) throw ContractError("step() on a finished episode");
    if (!is_valid(action)) {
      done_ = true;
      return {observe(), -10.0f, true, false};
    }
    Transition t = apply(action);
    ++move_count_;
    done_ = t.terminated;
    if (!t.terminated) current_ = t.next_player;
    return {observe(), t.reward, t.terminated, false};
  }

  Player current_player() const override { return current_; }
  int move_count() const override { return move_count_; }
  bool done() const override { return done_; }

 protected:
  struct Transition {
    float reward = 0.0f;
    bool terminated = false;
    Player next_player;  // ignored when terminated
  };

  virtual void reset_state(SplitMix64& rng) = 0;
  virtual Transition apply(ActionIndex action) = 0;

  bool is_valid(ActionIndex action) const {
    if (action < 0 || action >= spec().action_space_size) return false;
    for (ActionIndex a : valid_moves())
      if (a == action) return true;
    return false;
  }

  Transition continue_with(Player next) const { return {0.0f, false, next}; }
  Transition win() const { return {1.0f, true, current_}; }
  Transition lose() const { return {-1.0f, true, current_}; }

  Player current_ = Player::P1;
  int move_count_ = 0;
  bool done_ = false;
  uint64_t default_seed_ = 0;
};

// Truncates at `cap` moves with reward 0; the harness records such episodes
// as draws.
class MoveCapEnv : public Environment {
 public:
  MoveCapEnv(std::unique_ptr<Environment> inner, int cap)
      : inner_(std::move(inner)), cap_(cap) {
    if (cap < 1) throw ContractError("move cap must be >= 1");
  }

  const GameSpec& spec() const override { return inner_->spec(); }
  Observation reset(std::optional<uint64_t> seed = std::nullopt) override {
    truncated_ = false;
    return inner_->reset(seed);
  }

  StepOutcome step(ActionIndex action) override {
    if (truncated_) throw ContractError("step() on a truncated episode");
    StepOutcome out = inner_->step(action);
    if (!out.terminated && inner_->move_count() >= cap_) {
      out.truncated = true;
      out.reward = 0.0f;
      truncated_ = true;
    }
    return out;
  }

  std::string render() const override { return inner_->render(); }
  std::vector<ActionIndex> valid_moves() const override {
    return inner_->valid_moves();
  }
  std::unique_ptr<Environment> clone() const override {
    auto copy = std::make_unique<MoveCapEnv>(inner_->clone(), cap_);
    copy->truncated_ = truncated_;
    return copy;
  }
  Player current_player() const override { return inner_->current_player(); }
  int move_count() const override { return inner_->move_count(); }
  bool done() const override { return inner_->done() || truncated_; }
  Observation observe() const override { return inner_->observe(); }

 private:
  std::unique_ptr<Environment> inner_;
  int cap_;
  bool truncated_ = false;
};

inline std::unique_ptr<Environment> wrap_move_cap(
    std::unique_ptr<Environment> env, int cap) {
  return std::make_unique<MoveCapEnv>(std::move(env), cap);
}

}  // namespace arena
