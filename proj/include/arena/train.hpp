#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "arena/env.hpp"
#include "arena/games.hpp"
#include "arena/ppo.hpp"

namespace arena {

struct TrainingSchedule {
  int64_t total_timesteps = 1'000'000;
  int64_t checkpoint_interval = 250'000;
  double epsilon_start = 1.0;
  double epsilon_end = 0.1;
};

// Linear decay of the exploration rate over the whole run.
double epsilon_at(int64_t t, const TrainingSchedule& schedule);

struct Checkpoint {
  int64_t timestep = 0;
  PolicyNet<float> params;
};

struct CheckpointPool {
  std::vector<Checkpoint> entries;
};

struct OpponentChoice {
  bool random_agent = false;
  int checkpoint_index = -1;  // into pool.entries when !random_agent
};

// Random-move opponent before the first checkpoint interval, then a uniform
// draw from the pool.
OpponentChoice sample_opponent(const CheckpointPool& pool, int64_t t,
                               const TrainingSchedule& schedule,
                               SplitMix64& rng);

struct TrainOptions {
  TrainingSchedule schedule;
  PPOConfig ppo;
  uint64_t seed = 0;
  // With masking on (the default), the learner samples only from
  // valid_moves(). Off reproduces the raw contract: sampling over the full
  // action space, where an invalid pick ends the episode at -10.
  bool mask_invalid = true;
  // Called right when a checkpoint is taken (exactly at k * interval).
  std::function<void(const Checkpoint&)> on_checkpoint;
  // Called after every PPO update: (timestep, mean episode reward over the
  // last 100 completed episodes, epsilon).
  std::function<void(int64_t, double, double)> on_log;
  double truncation_flag_threshold = 0.2;
};

struct TrainResult {
  CheckpointPool pool;
  int64_t episodes = 0;
  int64_t truncated_episodes = 0;
  int64_t invalid_action_episodes = 0;  // only with mask_invalid off
  bool truncation_flagged = false;      // > threshold of episodes hit the cap
  int64_t updates = 0;
};

// Self-play PPO. The learner takes a uniformly random seat each episode;
// the frozen opponent's moves are folded into the learner's transitions.
// Fully deterministic in (spec, options.seed).
TrainResult train(const GameSpec& spec, const EnvFactory& factory,
                  const TrainOptions& options);

}  // namespace arena
