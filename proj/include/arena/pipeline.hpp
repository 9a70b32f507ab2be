#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arena/config.hpp"
#include "arena/filters.hpp"
#include "arena/suite.hpp"

namespace arena {

// Trains one game (execution filter first, per the training contract) and
// writes checkpoints plus train.log under
// <out>/checkpoints/<game_id>/ckpt_<timestep>.ggckpt. Returns the pool.
// Throws FilterFailure when the execution filter rejects the game.
struct FilterFailure : std::runtime_error {
  FilterReport report;
  explicit FilterFailure(FilterReport r)
      : std::runtime_error("filter stage '" + r.stage + "' rejected " +
                           r.game_id + (r.detail_text.empty()
                                            ? ""
                                            : ": " + r.detail_text)),
        report(std::move(r)) {}
};

CheckpointPool train_game(const GameSpec& spec, const EnvFactory& factory,
                          const RunConfig& cfg, std::ostream* log);

// Loads a previously trained pool from <out>/checkpoints/<game_id>/; empty
// pool when no files exist.
CheckpointPool load_checkpoint_pool(const std::filesystem::path& out_dir,
                                    const std::string& game_id);

std::filesystem::path checkpoint_path(const std::filesystem::path& out_dir,
                                      const std::string& game_id,
                                      int64_t timestep);

struct GamePipelineResult {
  std::string game_id;
  std::vector<FilterReport> reports;  // in stage order, stops at first fail
  std::optional<OpponentSelection> selection;
  bool eligible = false;
};

struct PipelineResult {
  std::vector<GamePipelineResult> games;
  int total = 0;
  int survived = 0;
};

// The full chain for one game: keyword -> execution -> timeout ->
// train (reusing existing checkpoints unless retrain) -> upper_bound.
GamePipelineResult run_game_pipeline(const GameSpec& spec,
                                     const EnvFactory& factory,
                                     const RunConfig& cfg, bool retrain,
                                     std::ostream* log);

// Runs the chain for every registered game in the suite (parallel at
// whole-game granularity per cfg.parallelism) and appends every
// FilterReport and OpponentSelection to <out>/pipeline/report.jsonl in
// suite order.
PipelineResult run_pipeline(const std::vector<GameSpec>& suite,
                            const RunConfig& cfg, bool retrain,
                            std::ostream* log);

// Reads pipeline/report.jsonl back into game_id -> selection.
std::map<std::string, OpponentSelection> load_selections(
    const std::filesystem::path& out_dir);

}  // namespace arena
