#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "arena/ppo.hpp"
#include "arena/train.hpp"

namespace arena {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Whole-run configuration. The `paper` profile carries the published
// training constants; `desk` is the small profile used by CI and the
// acceptance suite.
struct RunConfig {
  std::string suite_path = "games";
  std::string output_dir = "out";
  uint64_t seed = 0;
  std::string profile = "paper";  // paper | desk
  PPOConfig ppo;
  TrainingSchedule schedule;      // derived from profile unless overridden
  int move_cap = 100;
  bool mask_invalid = true;
  int mcts_rollouts = 100;
  int n_eval_matches = 30;
  int max_reprompts = 3;
  int parallelism = 1;
  bool use_mcts_selection = true;
  int selection_matches = 6;
  int filter_random_games = 100;
  double wall_budget_seconds = 60.0;
  double move_timeout_seconds = 120.0;
  std::string run_name;           // runs/<run_name>; default: UTC timestamp

  void apply_profile();           // sets schedule from `profile`
};

// Flat `key = value` config file; '#' starts a comment line. Unknown keys
// are an error so typos do not silently fall back to defaults.
RunConfig load_config_file(const std::filesystem::path& path,
                           RunConfig base = {});
void set_config_key(RunConfig& cfg, const std::string& key,
                    const std::string& value);

// The effective configuration echoed into each run directory.
std::string config_to_text(const RunConfig& cfg);

}  // namespace arena
