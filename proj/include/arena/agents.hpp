#pragma once

#include <chrono>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "arena/env.hpp"
#include "arena/mcts.hpp"
#include "arena/net.hpp"
#include "arena/subprocess.hpp"

namespace arena {

struct MoveRequest {
  std::string render_text;
  std::vector<int> legal_moves;
  int reprompt_count = 0;
};

// Uniform draw over the valid set.
ActionIndex choose_random(const std::vector<ActionIndex>& valid,
                          SplitMix64& rng);

// Masked-policy choice: greedy takes the argmax probability (ties to the
// lowest index), otherwise samples.
ActionIndex choose_policy(const PolicyNet<float>& net, const Observation& obs,
                          const std::vector<ActionIndex>& valid,
                          SplitMix64& rng, bool greedy);

class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string describe() const = 0;
  virtual void reseed(uint64_t /*seed*/) {}

  // Init exchange before the first move of a match (external agents send the
  // rulebook and action map here). Returns false when the agent is unusable;
  // the match is then scored as a fault against it.
  virtual bool begin_game(const GameSpec& /*spec*/) { return true; }

  struct Choice {
    bool fault = false;
    ActionIndex action = -1;
    std::string fault_reason;
  };
  virtual Choice choose(const Environment& env) = 0;
};

class RandomAgent : public Agent {
 public:
  explicit RandomAgent(uint64_t seed) : rng_(seed) {}
  std::string describe() const override { return "random"; }
  void reseed(uint64_t seed) override { rng_ = SplitMix64(seed); }
  Choice choose(const Environment& env) override {
    return {false, choose_random(env.valid_moves(), rng_), {}};
  }

 private:
  SplitMix64 rng_;
};

class PolicyAgent : public Agent {
 public:
  PolicyAgent(PolicyNet<float> net, bool greedy, uint64_t seed,
              std::string label = "policy")
      : net_(std::move(net)), greedy_(greedy), rng_(seed),
        label_(std::move(label)) {}
  std::string describe() const override { return label_; }
  void reseed(uint64_t seed) override { rng_ = SplitMix64(seed); }
  Choice choose(const Environment& env) override {
    return {false,
            choose_policy(net_, env.observe(), env.valid_moves(), rng_,
                          greedy_),
            {}};
  }
  const PolicyNet<float>& net() const { return net_; }

 private:
  PolicyNet<float> net_;
  bool greedy_;
  SplitMix64 rng_;
  std::string label_;
};

class MctsAgent : public Agent {
 public:
  MctsAgent(PolicyNet<float> net, int n_rollouts, uint64_t seed,
            std::string label = "mcts")
      : net_(std::move(net)), n_rollouts_(n_rollouts), rng_(seed),
        label_(std::move(label)) {}
  std::string describe() const override { return label_; }
  void reseed(uint64_t seed) override { rng_ = SplitMix64(seed); }
  Choice choose(const Environment& env) override {
    ActionIndex a =
        select_action(net_, env, n_rollouts_, rng_.next_u64(), &last_tally_);
    return {false, a, {}};
  }
  const RolloutTally& last_tally() const { return last_tally_; }

 private:
  PolicyNet<float> net_;
  int n_rollouts_;
  SplitMix64 rng_;
  RolloutTally last_tally_;
  std::string label_;
};

// Console player for the interactive verification mode. Re-prompts on
// illegal input indefinitely; end-of-input aborts the match.
class HumanAgent : public Agent {
 public:
  HumanAgent(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::string describe() const override { return "human"; }
  bool begin_game(const GameSpec& spec) override;
  Choice choose(const Environment& env) override;

 private:
  std::istream& in_;
  std::ostream& out_;
  std::vector<std::string> action_labels_;
};

// Child-process agent speaking the line protocol:
//   {"type":"init","game_description":...,"action_description":...}
//     -> {"type":"ready"}
//   {"type":"move_request","board":...,"legal_moves":[...],"reprompt":k}
//     -> {"type":"move","action":n}
// Replies outside the legal list are re-prompted up to max_reprompts, after
// which the move is a fault. Transport timeouts fault immediately.
class ExternalAgent : public Agent {
 public:
  struct Transcript {
    std::vector<std::string> sent;
    std::vector<std::string> received;
  };

  ExternalAgent(std::string command, int max_reprompts = 3,
                std::chrono::milliseconds move_timeout =
                    std::chrono::milliseconds(120000));

  std::string describe() const override { return "external:" + command_; }
  bool begin_game(const GameSpec& spec) override;
  Choice choose(const Environment& env) override;

  void set_transcript(Transcript* t) { transcript_ = t; }

 private:
  bool send(const std::string& line);
  ChildProcess::ReadStatus receive(std::string& line);

  std::string command_;
  int max_reprompts_;
  std::chrono::milliseconds move_timeout_;
  std::unique_ptr<ChildProcess> child_;
  bool broken_ = false;
  Transcript* transcript_ = nullptr;
};

// Per-index annotations pulled from an action map's "- <idx>: ..." lines;
// used by the console menu. Missing indices get empty strings.
std::vector<std::string> action_annotations(const std::string& action_map_text,
                                            int action_space_size);

}  // namespace arena
