#include "arena/suite.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace arena {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw SuiteError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> parse_meta(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw SuiteError("cannot read " + p.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw SuiteError(p.string() + ":" + std::to_string(lineno) +
                       ": expected 'key = value'");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

int meta_int(const std::map<std::string, std::string>& kv,
             const std::string& key, const fs::path& p) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw SuiteError(p.string() + ": missing key '" + key + "'");
  try {
    size_t pos = 0;
    int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw SuiteError(p.string() + ": key '" + key + "' is not an integer: " +
                     it->second);
  }
}

std::string meta_str(const std::map<std::string, std::string>& kv,
                     const std::string& key, const fs::path& p) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw SuiteError(p.string() + ": missing key '" + key + "'");
  return it->second;
}

bool meta_bool(const std::map<std::string, std::string>& kv,
               const std::string& key, const fs::path& p) {
  std::string v = meta_str(kv, key, p);
  if (v == "true") return true;
  if (v == "false") return false;
  throw SuiteError(p.string() + ": key '" + key + "' must be true or false");
}

}  // namespace

GameSpec load_suite_game(const fs::path& game_dir) {
  GameSpec spec;
  fs::path meta_path = game_dir / "meta";
  auto kv = parse_meta(meta_path);
  spec.id = meta_str(kv, "id", meta_path);
  spec.title = meta_str(kv, "title", meta_path);
  spec.action_space_size = meta_int(kv, "action_space_size", meta_path);
  spec.observation_dim = meta_int(kv, "observation_dim", meta_path);
  spec.move_cap = meta_int(kv, "move_cap", meta_path);
  spec.stochastic_setup = meta_bool(kv, "stochastic_setup", meta_path);
  spec.rulebook_text = read_file(game_dir / "rules.md");
  spec.action_map_text = read_file(game_dir / "actions.md");
  if (spec.rulebook_text.empty())
    throw SuiteError((game_dir / "rules.md").string() + ": empty rulebook");
  if (spec.action_map_text.empty())
    throw SuiteError((game_dir / "actions.md").string() +
                     ": empty action map");
  if (spec.action_space_size < 1 || spec.observation_dim < 1 ||
      spec.move_cap < 1)
    throw SuiteError(meta_path.string() + ": sizes must be positive");
  return spec;
}

std::vector<GameSpec> load_suite(const fs::path& path) {
  if (!fs::is_directory(path))
    throw SuiteError("suite directory not found: " + path.string());
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(path))
    if (entry.is_directory()) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());
  std::vector<GameSpec> specs;
  specs.reserve(dirs.size());
  for (const auto& dir : dirs) specs.push_back(load_suite_game(dir));
  return specs;
}

std::string observation_note(const std::string& game_id) {
  static const std::map<std::string, std::string> notes = {
      {"reach27",
       "one-hot of the running total (28 bins, totals past 27 share the last "
       "bin) plus total/27 as a scalar"},
      {"lightout", "7 on/off flags, one per light"},
      {"divide",
       "per prime in the 15-prime list, its exponent in N divided by 6"},
      {"number-duel",
       "own availability of 1..10, opponent availability of 1..10, "
       "attacker flag (pending attack hidden)"},
      {"crossover",
       "11 track squares mirrored so the mover advances toward index 10: "
       "+1 own piece, -1 opponent piece, 0 empty"},
      {"primeclaim",
       "25 unclaimed flags, own score / 512, opponent score / 512"},
      {"isolation", "13 claimed flags"},
      {"palindrome",
       "11 slots x (X flag, O flag), left-aligned from the sequence start"},
      {"orderchallenge",
       "9 pool flags, own last pick / 9, opponent last pick / 9"},
      {"digitdilemma",
       "20 line slots ((digit+1)/10, 0 when consumed), 10 own digit slots, "
       "10 opponent digit slots"},
  };
  auto it = notes.find(game_id);
  return it == notes.end() ? std::string("see render()") : it->second;
}

void export_suite(const fs::path& path) {
  fs::create_directories(path);
  for (const GameEntry& entry : game_registry()) {
    const GameSpec& spec = entry.spec;
    fs::path dir = path / spec.id;
    fs::create_directories(dir);
    {
      std::ofstream out(dir / "rules.md", std::ios::binary);
      out << spec.rulebook_text;
    }
    {
      std::ofstream out(dir / "actions.md", std::ios::binary);
      out << spec.action_map_text;
    }
    {
      std::ofstream out(dir / "meta", std::ios::binary);
      out << "id = " << spec.id << "\n";
      out << "title = " << spec.title << "\n";
      out << "action_space_size = " << spec.action_space_size << "\n";
      out << "observation_dim = " << spec.observation_dim << "\n";
      out << "move_cap = " << spec.move_cap << "\n";
      out << "stochastic_setup = " << (spec.stochastic_setup ? "true" : "false")
          << "\n";
      out << "observation = " << observation_note(spec.id) << "\n";
    }
  }
}

}  // namespace arena
