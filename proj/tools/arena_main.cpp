// arena: self-play game benchmark engine.
//
//   arena games list                 show the suite
//   arena games export               write the built-in suite to disk
//   arena train <id>                 train benchmark checkpoints for a game
//   arena pipeline                   filter chain + opponent selection
//   arena eval <id|all> --agent ...  evaluate an agent vs selected opponents
//   arena play <id> --vs ...         interactive verification mode
//   arena report <dir>               winrate table from a run directory

#include <atomic>
#include <chrono>
#include <map>
#include <ctime>
#include <thread>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "arena/checkpoint.hpp"
#include "arena/config.hpp"
#include "arena/match.hpp"
#include "arena/mcts.hpp"
#include "arena/pipeline.hpp"
#include "arena/suite.hpp"

namespace fs = std::filesystem;
using namespace arena;

namespace {

std::string default_run_name() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", std::gmtime(&t));
  return buf;
}

struct CommonFlags {
  std::string suite;
  std::string out;
  std::string config_file;
  std::string profile;
  std::string run_name;
  int64_t seed = -1;
  int rollouts = -1;
  int matches = -1;
  int parallel = -1;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--suite", suite, "suite directory (default: games)");
    cmd->add_option("--out", out, "output directory (default: out)");
    cmd->add_option("--config", config_file, "key = value config file");
    cmd->add_option("--profile", profile, "paper or desk");
    cmd->add_option("--seed", seed, "64-bit run seed");
    cmd->add_option("--rollouts", rollouts, "MCTS rollouts per move");
    cmd->add_option("--matches", matches, "matches per evaluation");
    cmd->add_option("--parallel", parallel, "worker threads (whole games)");
    cmd->add_option("--run-name", run_name,
                    "run directory name (default: UTC timestamp)");
  }

  RunConfig resolve() const {
    RunConfig cfg;
    cfg.apply_profile();
    if (!config_file.empty()) cfg = load_config_file(config_file, cfg);
    if (!profile.empty()) {
      cfg.profile = profile;
      cfg.apply_profile();
    }
    if (!suite.empty()) cfg.suite_path = suite;
    if (!out.empty()) cfg.output_dir = out;
    if (seed >= 0) cfg.seed = static_cast<uint64_t>(seed);
    if (rollouts > 0) cfg.mcts_rollouts = rollouts;
    if (matches > 0) cfg.n_eval_matches = matches;
    if (parallel > 0) cfg.parallelism = parallel;
    if (!run_name.empty()) cfg.run_name = run_name;
    return cfg;
  }
};

int cmd_games_list(const RunConfig& cfg) {
  std::vector<GameSpec> specs = load_suite(cfg.suite_path);
  std::printf("%-16s %-18s %8s %8s %8s %s\n", "id", "title", "actions",
              "obs_dim", "cap", "stochastic");
  for (const GameSpec& spec : specs)
    std::printf("%-16s %-18s %8d %8d %8d %s\n", spec.id.c_str(),
                spec.title.c_str(), spec.action_space_size,
                spec.observation_dim, spec.move_cap,
                spec.stochastic_setup ? "true" : "false");
  return 0;
}

int cmd_games_export(const std::string& dest, bool force) {
  // Writes the built-in suite; never touches --suite so that no command
  // mutates a live suite directory by accident.
  if (fs::exists(dest) && !fs::is_empty(dest) && !force)
    throw std::runtime_error(dest + " exists and is not empty (use --force)");
  export_suite(dest);
  std::cout << "wrote " << game_registry().size() << " games to " << dest
            << "\n";
  return 0;
}

int cmd_train(const RunConfig& cfg, const std::string& game_id) {
  const GameEntry& entry = find_game(game_id);
  try {
    CheckpointPool pool = train_game(entry.spec, entry.make, cfg, &std::cout);
    std::cout << "trained " << game_id << ": " << pool.entries.size()
              << " checkpoints under " << cfg.output_dir << "/checkpoints/"
              << game_id << "\n";
  } catch (const FilterFailure& f) {
    std::cerr << "execution filter rejected " << game_id << ":\n"
              << filter_report_to_json(f.report) << "\n";
    return 1;
  }
  return 0;
}

int cmd_pipeline(const RunConfig& cfg, bool retrain) {
  std::vector<GameSpec> suite = load_suite(cfg.suite_path);
  PipelineResult result = run_pipeline(suite, cfg, retrain, &std::cout);
  for (const GamePipelineResult& game : result.games) {
    std::cout << game.game_id << ": ";
    if (game.eligible) {
      std::cout << "eligible (opponent ckpt "
                << game.selection->opponent_checkpoint << ", disparity "
                << game.selection->disparity << ")\n";
    } else {
      std::cout << "rejected at stage '" << game.reports.back().stage << "'\n";
    }
  }
  std::map<std::string, int> passed_by_stage;
  for (const GamePipelineResult& game : result.games)
    for (const FilterReport& report : game.reports)
      if (report.passed) ++passed_by_stage[report.stage];
  std::cout << "funnel: " << result.total << " games";
  for (const char* stage : {"keyword", "execution", "timeout", "upper_bound"})
    std::cout << " -> " << stage << " " << passed_by_stage[stage];
  std::cout << "\n";
  std::cout << result.survived << " of " << result.total
            << " games survived; report: " << cfg.output_dir
            << "/pipeline/report.jsonl\n";
  return 0;
}

// agent specs: random | policy:<ckpt-file> | mcts:<ckpt-file> |
// external:<command line>
std::unique_ptr<Agent> make_agent_from_spec(const std::string& spec,
                                            const RunConfig& cfg) {
  if (spec == "random") return std::make_unique<RandomAgent>(0);
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ConfigError("bad agent spec: " + spec);
  std::string kind = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  if (kind == "policy")
    return std::make_unique<PolicyAgent>(load_checkpoint(arg), false, 0,
                                         "policy:" + arg);
  if (kind == "mcts")
    return std::make_unique<MctsAgent>(load_checkpoint(arg),
                                       cfg.mcts_rollouts, 0, "mcts:" + arg);
  if (kind == "external")
    return std::make_unique<ExternalAgent>(
        arg, cfg.max_reprompts,
        std::chrono::milliseconds(
            static_cast<long>(cfg.move_timeout_seconds * 1000)));
  throw ConfigError("bad agent spec: " + spec);
}

std::unique_ptr<Agent> make_opponent(const RunConfig& cfg,
                                     const OpponentSelection& sel) {
  fs::path path = checkpoint_path(cfg.output_dir, sel.game_id,
                                  sel.opponent_checkpoint);
  PolicyNet<float> net = load_checkpoint(path);
  return std::make_unique<MctsAgent>(
      std::move(net), cfg.mcts_rollouts, 0,
      "opponent:" + sel.game_id + ":" +
          std::to_string(sel.opponent_checkpoint));
}

int cmd_eval(const RunConfig& cfg, const std::string& game_arg,
             const std::string& agent_spec) {
  std::vector<GameSpec> suite = load_suite(cfg.suite_path);
  auto selections = load_selections(cfg.output_dir);

  std::vector<GameSpec> targets;
  for (const GameSpec& spec : suite) {
    if (game_arg == "all") {
      if (selections.count(spec.id)) targets.push_back(spec);
    } else if (spec.id == game_arg) {
      if (!selections.count(spec.id))
        throw std::runtime_error("no selected opponent for " + spec.id +
                                 " (game rejected or pipeline not run)");
      targets.push_back(spec);
    }
  }
  if (targets.empty())
    throw std::runtime_error("no eligible games match '" + game_arg + "'");

  std::string run_name =
      cfg.run_name.empty() ? default_run_name() : cfg.run_name;
  fs::path run_dir = fs::path(cfg.output_dir) / "runs" / run_name;
  fs::create_directories(run_dir);
  {
    std::ofstream cfg_out(run_dir / "config.txt");
    cfg_out << config_to_text(cfg);
  }

  // Whole-game parallelism; per-game outputs merge in suite order.
  std::vector<GameEvalReport> reports(targets.size());
  std::vector<std::string> match_lines(targets.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      size_t idx = next.fetch_add(1);
      if (idx >= targets.size()) return;
      const GameSpec& spec = targets[idx];
      const GameEntry& entry = find_game(spec.id);
      GameEvalReport report;
      try {
        auto agent = make_agent_from_spec(agent_spec, cfg);
        // A launch that cannot even reach the init exchange is an engine-side
        // problem for this matchup, not an agent fault.
        if (agent_spec.rfind("external:", 0) == 0 &&
            !agent->begin_game(spec))
          throw std::runtime_error("external agent failed to launch");
        auto opponent = make_opponent(cfg, selections.at(spec.id));
        std::vector<MatchRecord> records;
        uint64_t seed_base = SplitMix64::mix(
            cfg.seed, std::hash<std::string>{}(spec.id) ^ 0xe7a1);
        report = run_eval(*agent, *opponent, spec, entry.make,
                          cfg.n_eval_matches, seed_base, &records);
        for (const MatchRecord& r : records)
          match_lines[idx] += match_record_to_json(r) + "\n";
      } catch (const std::exception& e) {
        std::cerr << spec.id << ": evaluation failed: " << e.what() << "\n";
        report = {};
        report.game_id = spec.id;
        report.n_matches = cfg.n_eval_matches;
        report.env_errors = cfg.n_eval_matches;
        report.winrate = 0.0;
      }
      reports[idx] = report;
    }
  };
  int workers = std::max(1, std::min<int>(cfg.parallelism,
                                          static_cast<int>(targets.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& th : threads) th.join();
  }

  std::ofstream matches_out(run_dir / "matches.jsonl", std::ios::trunc);
  std::ofstream report_out(run_dir / "report.jsonl", std::ios::trunc);
  std::vector<double> winrates;
  for (size_t idx = 0; idx < targets.size(); ++idx) {
    matches_out << match_lines[idx];
    report_out << eval_report_to_json(reports[idx]) << "\n";
    winrates.push_back(reports[idx].winrate);
    const GameEvalReport& r = reports[idx];
    std::cout << r.game_id << ": winrate " << r.winrate << " (" << r.wins
              << "W/" << r.losses << "L/" << r.draws << "D/" << r.faults
              << "F/" << r.env_errors << "E)\n";
  }
  AggregateReport agg = aggregate(winrates);
  nlohmann::json agg_json = {{"aggregate", true},
                             {"mean_winrate", agg.mean}};
  if (agg.ci95_halfwidth) agg_json["ci95_halfwidth"] = *agg.ci95_halfwidth;
  report_out << agg_json.dump() << "\n";

  std::string table = render_report_table(reports);
  {
    std::ofstream table_out(run_dir / "report.txt");
    table_out << table;
  }
  std::cout << "\n" << table;
  std::cout << "run directory: " << run_dir.string() << "\n";
  return 0;
}

int cmd_play(const RunConfig& cfg, const std::string& game_id,
             const std::string& vs_spec) {
  std::vector<GameSpec> suite = load_suite(cfg.suite_path);
  const GameSpec* spec = nullptr;
  for (const GameSpec& s : suite)
    if (s.id == game_id) spec = &s;
  if (!spec) throw SuiteError("unknown game id: " + game_id);
  const GameEntry& entry = find_game(game_id);

  HumanAgent human(std::cin, std::cout);
  auto opponent = make_agent_from_spec(vs_spec, cfg);
  auto* mcts = dynamic_cast<MctsAgent*>(opponent.get());

  uint64_t seed = cfg.seed == 0
                      ? static_cast<uint64_t>(
                            std::chrono::system_clock::now().time_since_epoch().count())
                      : cfg.seed;
  auto env = wrap_move_cap(entry.make(seed), spec->move_cap);
  human.begin_game(*spec);
  if (!opponent->begin_game(*spec)) {
    std::cout << "opponent failed to initialize\n";
    return 1;
  }
  opponent->reseed(SplitMix64::mix(seed, 'O'));

  // Human sits P1.
  for (;;) {
    bool humans_turn = env->current_player() == Player::P1;
    Agent::Choice choice =
        humans_turn ? human.choose(*env) : opponent->choose(*env);
    if (choice.fault) {
      std::cout << (humans_turn ? "match aborted\n"
                                : "opponent faulted; you win by default\n");
      return 0;
    }
    if (!humans_turn) {
      std::cout << "opponent plays " << choice.action;
      if (mcts) {
        const RolloutTally& tally = mcts->last_tally();
        std::cout << "  (winning rollouts " << tally.visits_winning[choice.action]
                  << "/" << tally.visits_total[choice.action] << " of "
                  << tally.n_rollouts << ")";
      }
      std::cout << "\n";
    }
    StepOutcome out = env->step(choice.action);
    if (out.terminated) {
      std::cout << env->render();
      bool mover_human = humans_turn;
      bool mover_won = out.reward > 0;
      std::cout << (mover_human == mover_won ? "You win!\n" : "You lose.\n");
      return 0;
    }
    if (out.truncated) {
      std::cout << env->render() << "Draw: move cap reached.\n";
      return 0;
    }
  }
}

int cmd_report(const std::string& run_dir) {
  fs::path matches_file = fs::path(run_dir) / "matches.jsonl";
  std::ifstream in(matches_file);
  if (!in)
    throw std::runtime_error("missing file: " + matches_file.string());
  std::vector<MatchRecord> records;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) records.push_back(match_record_from_json(line));
  if (records.empty()) {
    std::cout << "no matches in " << matches_file.string() << "\n";
    return 0;
  }
  std::cout << render_report_table(reports_from_matches(records));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arena: self-play game benchmark engine"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* games = app.add_subcommand("games", "suite management");
  games->require_subcommand(1);
  auto* games_list = games->add_subcommand("list", "list suite games");
  flags.add_to(games_list);
  std::string export_dest;
  bool export_force = false;
  auto* games_export =
      games->add_subcommand("export", "write the built-in suite to disk");
  games_export->add_option("dest", export_dest, "destination directory")
      ->required();
  games_export->add_flag("--force", export_force,
                         "overwrite a non-empty destination");

  std::string train_id;
  auto* train_cmd = app.add_subcommand("train", "train one game");
  train_cmd->add_option("game", train_id, "game id")->required();
  flags.add_to(train_cmd);

  bool retrain = false;
  auto* pipeline_cmd =
      app.add_subcommand("pipeline", "filters + opponent selection");
  pipeline_cmd->add_flag("--retrain", retrain,
                         "retrain even when checkpoints exist");
  flags.add_to(pipeline_cmd);

  std::string eval_game, eval_agent;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an agent");
  eval_cmd->add_option("game", eval_game, "game id or 'all'")->required();
  eval_cmd->add_option("--agent", eval_agent,
                       "random | policy:<ckpt> | mcts:<ckpt> | external:<cmd>")
      ->required();
  flags.add_to(eval_cmd);

  std::string play_game, play_vs = "random";
  auto* play_cmd = app.add_subcommand("play", "interactive play");
  play_cmd->add_option("game", play_game, "game id")->required();
  play_cmd->add_option("--vs", play_vs, "opponent agent spec");
  flags.add_to(play_cmd);

  std::string report_dir;
  auto* report_cmd = app.add_subcommand("report", "summarize a run directory");
  report_cmd->add_option("dir", report_dir, "run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = flags.resolve();
    if (games_list->parsed()) return cmd_games_list(cfg);
    if (games_export->parsed()) return cmd_games_export(export_dest, export_force);
    if (train_cmd->parsed()) return cmd_train(cfg, train_id);
    if (pipeline_cmd->parsed()) return cmd_pipeline(cfg, retrain);
    if (eval_cmd->parsed()) return cmd_eval(cfg, eval_game, eval_agent);
    if (play_cmd->parsed()) return cmd_play(cfg, play_game, play_vs);
    if (report_cmd->parsed()) return cmd_report(report_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
