#include "arena/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "arena/checkpoint.hpp"

namespace arena {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path checkpoint_path(const fs::path& out_dir, const std::string& game_id,
                         int64_t timestep) {
  std::ostringstream name;
  name << "ckpt_" << std::setw(9) << std::setfill('0') << timestep
       << ".ggckpt";
  return out_dir / "checkpoints" / game_id / name.str();
}

CheckpointPool train_game(const GameSpec& spec, const EnvFactory& factory,
                          const RunConfig& cfg, std::ostream* log) {
  FilterReport exec = execution_filter(spec, factory, cfg.filter_random_games,
                                       cfg.seed);
  if (!exec.passed) throw FilterFailure(exec);

  fs::path dir = fs::path(cfg.output_dir) / "checkpoints" / spec.id;
  fs::create_directories(dir);
  std::ofstream train_log(dir / "train.log", std::ios::trunc);

  TrainOptions options;
  options.schedule = cfg.schedule;
  options.ppo = cfg.ppo;
  options.seed = SplitMix64::mix(cfg.seed, std::hash<std::string>{}(spec.id));
  options.mask_invalid = cfg.mask_invalid;
  options.on_checkpoint = [&](const Checkpoint& ckpt) {
    CheckpointMeta meta{spec.id, ckpt.params.obs_dim, ckpt.params.n_actions,
                        ckpt.timestep, options.seed};
    save_checkpoint(checkpoint_path(cfg.output_dir, spec.id, ckpt.timestep),
                    ckpt.params, meta);
  };
  options.on_log = [&](int64_t t, double mean_reward, double eps) {
    train_log << "timestep " << t << "  mean_episode_reward " << std::fixed
              << std::setprecision(4) << mean_reward << "  epsilon "
              << std::setprecision(4) << eps << "\n";
  };

  TrainResult result = train(spec, factory, options);
  train_log << "episodes " << result.episodes << "  truncated "
            << result.truncated_episodes
            << (result.truncation_flagged ? "  FLAGGED: cap-heavy game" : "")
            << "\n";
  if (log)
    *log << "[train] " << spec.id << ": " << result.pool.entries.size()
         << " checkpoints, " << result.episodes << " episodes"
         << (result.truncation_flagged ? " (truncation flagged)" : "") << "\n";
  return result.pool;
}

CheckpointPool load_checkpoint_pool(const fs::path& out_dir,
                                    const std::string& game_id) {
  CheckpointPool pool;
  fs::path dir = out_dir / "checkpoints" / game_id;
  if (!fs::is_directory(dir)) return pool;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".ggckpt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) {
    CheckpointMeta meta;
    PolicyNet<float> net = load_checkpoint(f, &meta);
    pool.entries.push_back({meta.timestep, std::move(net)});
  }
  return pool;
}

GamePipelineResult run_game_pipeline(const GameSpec& spec,
                                     const EnvFactory& factory,
                                     const RunConfig& cfg, bool retrain,
                                     std::ostream* log) {
  GamePipelineResult result;
  result.game_id = spec.id;

  FilterReport keyword;
  keyword.game_id = spec.id;
  keyword.stage = "keyword";
  keyword.passed = keyword_filter(spec.action_map_text);
  if (!keyword.passed)
    keyword.detail_text = "action-space description contains '**'";
  result.reports.push_back(keyword);
  if (!keyword.passed) return result;

  FilterReport exec =
      execution_filter(spec, factory, cfg.filter_random_games, cfg.seed);
  result.reports.push_back(exec);
  if (!exec.passed) return result;

  double wall = 0.0;
  FilterReport timeout =
      timeout_filter(spec, factory, cfg.filter_random_games, cfg.move_cap,
                     cfg.wall_budget_seconds, cfg.seed, &wall);
  result.reports.push_back(timeout);
  if (log)
    *log << "[timeout] " << spec.id << ": " << std::fixed
         << std::setprecision(2) << wall << "s wall\n";
  if (!timeout.passed) return result;

  CheckpointPool pool;
  if (!retrain) pool = load_checkpoint_pool(cfg.output_dir, spec.id);
  if (pool.entries.size() != 4) pool = train_game(spec, factory, cfg, log);

  PairMatchFn runner = checkpoint_match_runner(
      spec, factory, pool, cfg.use_mcts_selection, cfg.mcts_rollouts);
  SelectionResult sel = select_benchmark_opponent(
      spec.id, pool, cfg.selection_matches,
      SplitMix64::mix(cfg.seed, std::hash<std::string>{}(spec.id) ^ 0x5e1e),
      runner);
  result.reports.push_back(sel.report);
  result.selection = sel.selection;
  result.eligible = sel.report.passed;
  return result;
}

PipelineResult run_pipeline(const std::vector<GameSpec>& suite,
                            const RunConfig& cfg, bool retrain,
                            std::ostream* log) {
  PipelineResult result;
  result.total = static_cast<int>(suite.size());
  result.games.resize(suite.size());

  int workers = std::max(1, cfg.parallelism);
  std::vector<std::thread> threads;
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      size_t idx = next.fetch_add(1);
      if (idx >= suite.size()) return;
      const GameSpec& spec = suite[idx];
      const GameEntry& entry = find_game(spec.id);
      // Silence per-game logging under parallel runs to keep output sane.
      std::ostream* game_log = workers == 1 ? log : nullptr;
      result.games[idx] =
          run_game_pipeline(spec, entry.make, cfg, retrain, game_log);
    }
  };
  if (workers == 1) {
    work();
  } else {
    for (int w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& th : threads) th.join();
  }

  fs::path dir = fs::path(cfg.output_dir) / "pipeline";
  fs::create_directories(dir);
  std::ofstream out(dir / "report.jsonl", std::ios::trunc);
  for (const GamePipelineResult& game : result.games) {
    for (const FilterReport& report : game.reports)
      out << filter_report_to_json(report) << "\n";
    if (game.selection)
      out << opponent_selection_to_json(*game.selection) << "\n";
    if (game.eligible) ++result.survived;
  }
  if (log)
    *log << "[pipeline] " << result.survived << " of " << result.total
         << " games survived the chain\n";
  return result;
}

std::map<std::string, OpponentSelection> load_selections(
    const fs::path& out_dir) {
  std::map<std::string, OpponentSelection> selections;
  fs::path file = out_dir / "pipeline" / "report.jsonl";
  std::ifstream in(file);
  if (!in)
    throw std::runtime_error("cannot read " + file.string() +
                             " (run the pipeline first)");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j.contains("opponent_checkpoint")) {
      OpponentSelection sel;
      sel.game_id = j.at("game_id").get<std::string>();
      sel.opponent_checkpoint = j.at("opponent_checkpoint").get<int64_t>();
      sel.dominating_checkpoint = j.at("dominating_checkpoint").get<int64_t>();
      sel.disparity = j.at("disparity").get<double>();
      selections[sel.game_id] = sel;
    }
  }
  return selections;
}

}  // namespace arena
