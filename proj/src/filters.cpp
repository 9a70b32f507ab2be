#include "arena/filters.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

namespace arena {

using nlohmann::json;

std::string filter_report_to_json(const FilterReport& r) {
  json j = {{"game_id", r.game_id},
            {"stage", r.stage},
            {"passed", r.passed},
            {"details", r.details}};
  if (!r.detail_text.empty()) j["detail_text"] = r.detail_text;
  return j.dump();
}

std::string opponent_selection_to_json(const OpponentSelection& r) {
  json j = {{"game_id", r.game_id},
            {"opponent_checkpoint", r.opponent_checkpoint},
            {"dominating_checkpoint", r.dominating_checkpoint},
            {"disparity", r.disparity}};
  return j.dump();
}

bool keyword_filter(const std::string& action_map_text) {
  return action_map_text.find("**") == std::string::npos;
}

FilterReport execution_filter(const GameSpec& spec, const EnvFactory& factory,
                              int n_random_games, uint64_t seed) {
  FilterReport report;
  report.game_id = spec.id;
  report.stage = "execution";
  report.passed = false;
  SplitMix64 rng(SplitMix64::mix(seed, 0xe8ec));
  try {
    auto env = factory(rng.next_u64());
    Observation obs = env->reset(rng.next_u64());
    report.details["observation_len"] = static_cast<double>(obs.size());
    if (static_cast<int>(obs.size()) != spec.observation_dim) {
      report.detail_text = "observation length " + std::to_string(obs.size()) +
                           " does not match declared observation_dim " +
                           std::to_string(spec.observation_dim);
      return report;
    }
    if (env->render().empty()) {
      report.detail_text = "render() returned empty text";
      return report;
    }
  } catch (const std::exception& e) {
    report.detail_text = std::string("instantiation failed: ") + e.what();
    return report;
  }

  int errors = 0;
  for (int g = 0; g < n_random_games; ++g) {
    try {
      auto env = wrap_move_cap(factory(rng.next_u64()), spec.move_cap);
      while (!env->done()) {
        std::vector<ActionIndex> valid = env->valid_moves();
        if (valid.empty())
          throw std::runtime_error("empty valid_moves in a running game");
        StepOutcome out = env->step(valid[rng.next_below(valid.size())]);
        if (out.reward == -10.0f)
          throw std::runtime_error("valid move hit the invalid-action path");
        if (out.terminated || out.truncated) break;
      }
    } catch (const std::exception& e) {
      ++errors;
      if (report.detail_text.empty())
        report.detail_text = std::string("random play raised: ") + e.what();
    }
  }
  report.details["random_games"] = n_random_games;
  report.details["exceptions"] = errors;
  report.passed = errors == 0;
  return report;
}

FilterReport timeout_filter(const GameSpec& spec, const EnvFactory& factory,
                            int n_games, int move_cap,
                            double wall_budget_seconds, uint64_t seed,
                            double* wall_seconds_out) {
  FilterReport report;
  report.game_id = spec.id;
  report.stage = "timeout";
  SplitMix64 rng(SplitMix64::mix(seed, 0x7100));
  int max_moves = 0;
  int errors = 0;
  bool over_cap = false;
  auto start = std::chrono::steady_clock::now();
  for (int g = 0; g < n_games; ++g) {
    try {
      // Probe with an uncapped env: a game that only ever stops because of
      // the wrapper is exactly what this stage is meant to reject.
      auto env = factory(rng.next_u64());
      int moves = 0;
      while (!env->done() && moves < move_cap + 1) {
        std::vector<ActionIndex> valid = env->valid_moves();
        if (valid.empty())
          throw std::runtime_error("empty valid_moves in a running game");
        env->step(valid[rng.next_below(valid.size())]);
        ++moves;
      }
      max_moves = std::max(max_moves, moves);
      if (moves > move_cap) over_cap = true;
    } catch (const std::exception& e) {
      ++errors;
      if (report.detail_text.empty())
        report.detail_text = std::string("probe game raised: ") + e.what();
    }
  }
  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  if (wall_seconds_out) *wall_seconds_out = wall;
  bool over_budget = wall > wall_budget_seconds;
  double exception_rate =
      n_games > 0 ? static_cast<double>(errors) / n_games : 0.0;
  report.details["max_moves"] = max_moves;
  report.details["exception_rate"] = exception_rate;
  report.details["wall_budget_exceeded"] = over_budget ? 1.0 : 0.0;
  report.passed = !over_cap && !over_budget && exception_rate <= 0.2;
  if (over_cap && report.detail_text.empty())
    report.detail_text = "a probe game exceeded the move cap";
  return report;
}

SelectionResult select_benchmark_opponent(const std::string& game_id,
                                          const CheckpointPool& pool,
                                          int n_matches, uint64_t seed,
                                          const PairMatchFn& play_pair) {
  if (pool.entries.size() != 4)
    throw ContractError("upper-bound selection expects exactly 4 checkpoints");

  SelectionResult result;
  FilterReport& report = result.report;
  report.game_id = game_id;
  report.stage = "upper_bound";

  double best_rate = -1.0;
  int best_winner = -1, best_loser = -1;
  int pair_idx = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j, ++pair_idx) {
      int wins_i = 0, wins_j = 0;
      for (int m = 0; m < n_matches; ++m) {
        // Even match indices seat i first, odd seat j first.
        uint64_t match_seed =
            SplitMix64::mix(seed, static_cast<uint64_t>(pair_idx * 1000 + m));
        Outcome out = m % 2 == 0 ? play_pair(i, j, m, match_seed)
                                 : play_pair(j, i, m, match_seed);
        bool first_won = out == Outcome::WinA || out == Outcome::FaultB;
        bool second_won = out == Outcome::WinB || out == Outcome::FaultA;
        if (m % 2 == 0) {
          wins_i += first_won;
          wins_j += second_won;
        } else {
          wins_j += first_won;
          wins_i += second_won;
        }
      }
      std::string key = "wins_" + std::to_string(i) + "_" + std::to_string(j);
      report.details[key] = wins_i;
      report.details["wins_" + std::to_string(j) + "_" + std::to_string(i)] =
          wins_j;
      double high = static_cast<double>(std::max(wins_i, wins_j)) / n_matches;
      if (high > best_rate) {
        best_rate = high;
        best_winner = wins_i >= wins_j ? i : j;
        best_loser = wins_i >= wins_j ? j : i;
      }
    }
  }

  report.details["best_disparity"] = best_rate;
  report.passed = best_rate >= 0.8;
  if (report.passed) {
    OpponentSelection sel;
    sel.game_id = game_id;
    sel.opponent_checkpoint = pool.entries[best_loser].timestep;
    sel.dominating_checkpoint = pool.entries[best_winner].timestep;
    sel.disparity = best_rate;
    result.selection = sel;
  } else {
    report.detail_text = "no checkpoint pair reached a 0.8 winrate";
  }
  return result;
}

PairMatchFn checkpoint_match_runner(const GameSpec& spec,
                                    const EnvFactory& factory,
                                    const CheckpointPool& pool, bool use_mcts,
                                    int mcts_rollouts) {
  return [&spec, &factory, &pool, use_mcts, mcts_rollouts](
             int i, int j, int, uint64_t seed) -> Outcome {
    auto make_agent = [&](int idx) -> std::unique_ptr<Agent> {
      const Checkpoint& c = pool.entries[idx];
      std::string label = "ckpt:" + std::to_string(c.timestep);
      if (use_mcts)
        return std::make_unique<MctsAgent>(c.params, mcts_rollouts, 0, label);
      return std::make_unique<PolicyAgent>(c.params, /*greedy=*/false, 0,
                                           label);
    };
    auto a = make_agent(i);
    auto b = make_agent(j);
    MatchRecord r = play_match(*a, *b, spec, factory, seed, 'A');
    return r.outcome;
  };
}

}  // namespace arena
