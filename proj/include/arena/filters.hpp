#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "arena/env.hpp"
#include "arena/games.hpp"
#include "arena/match.hpp"
#include "arena/train.hpp"

namespace arena {

struct FilterReport {
  std::string game_id;
  std::string stage;  // keyword | execution | timeout | upper_bound
  bool passed = false;
  std::map<std::string, double> details;
  std::string detail_text;  // first captured error, if any
};

std::string filter_report_to_json(const FilterReport& r);

// Fails on a literal "**" anywhere in the action-space description (the
// marker for exponential action spaces in generated suites).
bool keyword_filter(const std::string& action_map_text);

// Instantiation, observation-dimension, render and random-play smoke checks.
FilterReport execution_filter(const GameSpec& spec, const EnvFactory& factory,
                              int n_random_games, uint64_t seed);

// Random-probe games against the move cap, a wall-clock budget, and a 20%
// exception-rate ceiling. The measured wall time is printed by callers, not
// persisted; the report stores only whether the budget was exceeded so that
// reruns are byte-identical.
FilterReport timeout_filter(const GameSpec& spec, const EnvFactory& factory,
                            int n_games, int move_cap,
                            double wall_budget_seconds, uint64_t seed,
                            double* wall_seconds_out = nullptr);

struct OpponentSelection {
  std::string game_id;
  int64_t opponent_checkpoint = 0;    // timestep of the selected (losing) agent
  int64_t dominating_checkpoint = 0;  // timestep of the winning agent
  double disparity = 0.0;             // higher side's winrate within the pair
};

std::string opponent_selection_to_json(const OpponentSelection& r);

// Plays one pair match: checkpoint `i` sits seat A, `j` seat B.
using PairMatchFn =
    std::function<Outcome(int i, int j, int match_idx, uint64_t seed)>;

struct SelectionResult {
  FilterReport report;                      // stage = upper_bound
  std::optional<OpponentSelection> selection;
};

// The upper-bound procedure over exactly four checkpoints: every unordered
// pair plays n_matches games with seats split evenly; the pair with the
// highest one-sided winrate decides the outcome. Below a 0.8 winrate the
// game is rejected; otherwise the pair's loser becomes the benchmark
// opponent. Draws count as wins for neither side.
SelectionResult select_benchmark_opponent(const std::string& game_id,
                                          const CheckpointPool& pool,
                                          int n_matches, uint64_t seed,
                                          const PairMatchFn& play_pair);

// Production wiring: pair matches between MCTS (or raw sampling) agents
// built from the checkpoints.
PairMatchFn checkpoint_match_runner(const GameSpec& spec,
                                    const EnvFactory& factory,
                                    const CheckpointPool& pool, bool use_mcts,
                                    int mcts_rollouts);

}  // namespace arena
