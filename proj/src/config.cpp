#include "arena/config.hpp"

#include <fstream>
#include <sstream>

namespace arena {

void RunConfig::apply_profile() {
  if (profile == "paper") {
    schedule.total_timesteps = 1'000'000;
    schedule.checkpoint_interval = 250'000;
    move_cap = 100;
  } else if (profile == "desk") {
    schedule.total_timesteps = 200'000;
    schedule.checkpoint_interval = 50'000;
    move_cap = 100;
  } else {
    throw ConfigError("unknown profile: " + profile +
                      " (expected paper or desk)");
  }
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_num(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T v{};
  in >> v;
  if (in.fail() || !(in >> std::ws).eof())
    throw ConfigError("config key '" + key + "': bad value '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("config key '" + key + "' must be true or false");
}

}  // namespace

void set_config_key(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "suite") cfg.suite_path = value;
  else if (key == "out") cfg.output_dir = value;
  else if (key == "seed") cfg.seed = parse_num<uint64_t>(key, value);
  else if (key == "profile") { cfg.profile = value; cfg.apply_profile(); }
  else if (key == "total_timesteps")
    cfg.schedule.total_timesteps = parse_num<int64_t>(key, value);
  else if (key == "checkpoint_interval")
    cfg.schedule.checkpoint_interval = parse_num<int64_t>(key, value);
  else if (key == "epsilon_start")
    cfg.schedule.epsilon_start = parse_num<double>(key, value);
  else if (key == "epsilon_end")
    cfg.schedule.epsilon_end = parse_num<double>(key, value);
  else if (key == "learning_rate")
    cfg.ppo.learning_rate = parse_num<float>(key, value);
  else if (key == "gamma") cfg.ppo.gamma = parse_num<float>(key, value);
  else if (key == "gae_lambda")
    cfg.ppo.gae_lambda = parse_num<float>(key, value);
  else if (key == "clip_range")
    cfg.ppo.clip_range = parse_num<float>(key, value);
  else if (key == "batch_size") cfg.ppo.batch_size = parse_num<int>(key, value);
  else if (key == "rollout_length")
    cfg.ppo.rollout_length = parse_num<int>(key, value);
  else if (key == "epochs_per_update")
    cfg.ppo.epochs_per_update = parse_num<int>(key, value);
  else if (key == "value_coef") cfg.ppo.value_coef = parse_num<float>(key, value);
  else if (key == "entropy_coef")
    cfg.ppo.entropy_coef = parse_num<float>(key, value);
  else if (key == "max_grad_norm")
    cfg.ppo.max_grad_norm = parse_num<float>(key, value);
  else if (key == "adam_beta1")
    cfg.ppo.adam_beta1 = parse_num<float>(key, value);
  else if (key == "adam_beta2")
    cfg.ppo.adam_beta2 = parse_num<float>(key, value);
  else if (key == "adam_eps") cfg.ppo.adam_eps = parse_num<float>(key, value);
  else if (key == "mask_invalid")
    cfg.mask_invalid = parse_bool(key, value);
  else if (key == "move_cap") cfg.move_cap = parse_num<int>(key, value);
  else if (key == "mcts_rollouts")
    cfg.mcts_rollouts = parse_num<int>(key, value);
  else if (key == "n_eval_matches")
    cfg.n_eval_matches = parse_num<int>(key, value);
  else if (key == "max_reprompts")
    cfg.max_reprompts = parse_num<int>(key, value);
  else if (key == "parallelism") cfg.parallelism = parse_num<int>(key, value);
  else if (key == "use_mcts_selection")
    cfg.use_mcts_selection = parse_bool(key, value);
  else if (key == "selection_matches")
    cfg.selection_matches = parse_num<int>(key, value);
  else if (key == "filter_random_games")
    cfg.filter_random_games = parse_num<int>(key, value);
  else if (key == "wall_budget_seconds")
    cfg.wall_budget_seconds = parse_num<double>(key, value);
  else if (key == "move_timeout_seconds")
    cfg.move_timeout_seconds = parse_num<double>(key, value);
  else if (key == "run_name") cfg.run_name = value;
  else throw ConfigError("unknown config key: " + key);
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    set_config_key(base, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return base;
}

std::string config_to_text(const RunConfig& cfg) {
  std::ostringstream os;
  os << "suite = " << cfg.suite_path << "\n";
  os << "out = " << cfg.output_dir << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "profile = " << cfg.profile << "\n";
  os << "total_timesteps = " << cfg.schedule.total_timesteps << "\n";
  os << "checkpoint_interval = " << cfg.schedule.checkpoint_interval << "\n";
  os << "epsilon_start = " << cfg.schedule.epsilon_start << "\n";
  os << "epsilon_end = " << cfg.schedule.epsilon_end << "\n";
  os << "learning_rate = " << cfg.ppo.learning_rate << "\n";
  os << "gamma = " << cfg.ppo.gamma << "\n";
  os << "gae_lambda = " << cfg.ppo.gae_lambda << "\n";
  os << "clip_range = " << cfg.ppo.clip_range << "\n";
  os << "batch_size = " << cfg.ppo.batch_size << "\n";
  os << "rollout_length = " << cfg.ppo.rollout_length << "\n";
  os << "epochs_per_update = " << cfg.ppo.epochs_per_update << "\n";
  os << "value_coef = " << cfg.ppo.value_coef << "\n";
  os << "entropy_coef = " << cfg.ppo.entropy_coef << "\n";
  os << "max_grad_norm = " << cfg.ppo.max_grad_norm << "\n";
  os << "adam_beta1 = " << cfg.ppo.adam_beta1 << "\n";
  os << "adam_beta2 = " << cfg.ppo.adam_beta2 << "\n";
  os << "adam_eps = " << cfg.ppo.adam_eps << "\n";
  os << "move_cap = " << cfg.move_cap << "\n";
  os << "mask_invalid = " << (cfg.mask_invalid ? "true" : "false") << "\n";
  os << "mcts_rollouts = " << cfg.mcts_rollouts << "\n";
  os << "n_eval_matches = " << cfg.n_eval_matches << "\n";
  os << "max_reprompts = " << cfg.max_reprompts << "\n";
  os << "parallelism = " << cfg.parallelism << "\n";
  os << "use_mcts_selection = "
     << (cfg.use_mcts_selection ? "true" : "false") << "\n";
  os << "selection_matches = " << cfg.selection_matches << "\n";
  os << "filter_random_games = " << cfg.filter_random_games << "\n";
  os << "wall_budget_seconds = " << cfg.wall_budget_seconds << "\n";
  os << "move_timeout_seconds = " << cfg.move_timeout_seconds << "\n";
  return os.str();
}

}  // namespace arena
