#include "arena/match.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

namespace arena {

using nlohmann::json;

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::WinA: return "WinA";
    case Outcome::WinB: return "WinB";
    case Outcome::Draw: return "Draw";
    case Outcome::FaultA: return "FaultA";
    case Outcome::FaultB: return "FaultB";
    case Outcome::EnvError: return "EnvError";
  }
  return "EnvError";
}

std::optional<Outcome> outcome_from_name(const std::string& name) {
  for (Outcome o : {Outcome::WinA, Outcome::WinB, Outcome::Draw,
                    Outcome::FaultA, Outcome::FaultB, Outcome::EnvError})
    if (outcome_name(o) == name) return o;
  return std::nullopt;
}

std::string match_record_to_json(const MatchRecord& r) {
  json moves = json::array();
  for (const auto& [seat, action] : r.moves)
    moves.push_back({std::string(1, seat), action});
  json j = {{"game_id", r.game_id},
            {"agent_a", r.agent_a},
            {"agent_b", r.agent_b},
            {"first_seat", std::string(1, r.first_seat)},
            {"moves", moves},
            {"outcome", outcome_name(r.outcome)},
            {"move_count", r.move_count},
            {"seed", r.seed}};
  if (!r.error_detail.empty()) j["error_detail"] = r.error_detail;
  return j.dump();
}

MatchRecord match_record_from_json(const std::string& line) {
  json j = json::parse(line);
  MatchRecord r;
  r.game_id = j.at("game_id").get<std::string>();
  r.agent_a = j.at("agent_a").get<std::string>();
  r.agent_b = j.at("agent_b").get<std::string>();
  r.first_seat = j.at("first_seat").get<std::string>().at(0);
  for (const auto& m : j.at("moves"))
    r.moves.emplace_back(m.at(0).get<std::string>().at(0), m.at(1).get<int>());
  auto outcome = outcome_from_name(j.at("outcome").get<std::string>());
  if (!outcome) throw std::runtime_error("bad outcome in match record");
  r.outcome = *outcome;
  r.move_count = j.at("move_count").get<int>();
  r.seed = j.at("seed").get<uint64_t>();
  if (j.contains("error_detail"))
    r.error_detail = j.at("error_detail").get<std::string>();
  return r;
}

MatchRecord play_match(Agent& agent_a, Agent& agent_b, const GameSpec& spec,
                       const EnvFactory& factory, uint64_t seed,
                       char first_seat) {
  MatchRecord record;
  record.game_id = spec.id;
  record.agent_a = agent_a.describe();
  record.agent_b = agent_b.describe();
  record.first_seat = first_seat;
  record.seed = seed;

  auto seat_of = [&](Player p) {
    bool a_is_p1 = first_seat == 'A';
    if (p == Player::P1) return a_is_p1 ? 'A' : 'B';
    return a_is_p1 ? 'B' : 'A';
  };
  auto agent_of = [&](char seat) -> Agent& {
    return seat == 'A' ? agent_a : agent_b;
  };

  agent_a.reseed(SplitMix64::mix(seed, 'A'));
  agent_b.reseed(SplitMix64::mix(seed, 'B'));

  try {
    auto env = wrap_move_cap(factory(seed), spec.move_cap);
    if (!agent_a.begin_game(spec)) {
      record.outcome = Outcome::FaultA;
      record.error_detail = "agent A failed the init exchange";
      return record;
    }
    if (!agent_b.begin_game(spec)) {
      record.outcome = Outcome::FaultB;
      record.error_detail = "agent B failed the init exchange";
      return record;
    }

    for (;;) {
      char seat = seat_of(env->current_player());
      Agent::Choice choice = agent_of(seat).choose(*env);
      if (choice.fault) {
        record.outcome = seat == 'A' ? Outcome::FaultA : Outcome::FaultB;
        record.error_detail = choice.fault_reason;
        return record;
      }
      StepOutcome out = env->step(choice.action);
      record.moves.emplace_back(seat, choice.action);
      record.move_count = static_cast<int>(record.moves.size());
      if (out.terminated) {
        bool mover_won = out.reward > 0;
        char winner = mover_won ? seat : (seat == 'A' ? 'B' : 'A');
        record.outcome = winner == 'A' ? Outcome::WinA : Outcome::WinB;
        return record;
      }
      if (out.truncated) {
        record.outcome = Outcome::Draw;
        return record;
      }
    }
  } catch (const std::exception& e) {
    record.outcome = Outcome::EnvError;
    record.error_detail = e.what();
    return record;
  }
}

GameEvalReport run_eval(Agent& agent, Agent& opponent, const GameSpec& spec,
                        const EnvFactory& factory, int n_matches,
                        uint64_t seed_base,
                        std::vector<MatchRecord>* records) {
  GameEvalReport report;
  report.game_id = spec.id;
  report.n_matches = n_matches;
  for (int i = 0; i < n_matches; ++i) {
    char first = i % 2 == 0 ? 'A' : 'B';
    uint64_t seed = SplitMix64::mix(seed_base, static_cast<uint64_t>(i));
    MatchRecord r = play_match(agent, opponent, spec, factory, seed, first);
    switch (r.outcome) {
      case Outcome::WinA: ++report.wins; break;
      case Outcome::WinB: ++report.losses; break;
      case Outcome::Draw: ++report.draws; break;
      case Outcome::FaultA: ++report.faults; break;
      case Outcome::FaultB: ++report.wins; break;  // opponent fault forfeits
      case Outcome::EnvError: ++report.env_errors; break;
    }
    if (records) records->push_back(std::move(r));
  }
  int denom = report.n_matches - report.env_errors;
  report.winrate =
      denom > 0 ? static_cast<double>(report.wins) / denom : 0.0;
  return report;
}

std::string eval_report_to_json(const GameEvalReport& r) {
  json j = {{"game_id", r.game_id},   {"n_matches", r.n_matches},
            {"wins", r.wins},         {"losses", r.losses},
            {"draws", r.draws},       {"faults", r.faults},
            {"env_errors", r.env_errors}, {"winrate", r.winrate}};
  return j.dump();
}

std::pair<double, double> wald_ci(int wins, int n) {
  if (n < 1 || wins < 0 || wins > n)
    throw ContractError("wald_ci: need 0 <= wins <= n, n >= 1");
  double p = static_cast<double>(wins) / n;
  double hw = 1.96 * std::sqrt(p * (1.0 - p) / n);
  return {p, hw};
}

AggregateReport aggregate(const std::vector<double>& per_game_winrates) {
  AggregateReport agg;
  size_t n = per_game_winrates.size();
  if (n == 0) return agg;
  double sum = 0.0;
  for (double w : per_game_winrates) sum += w;
  agg.mean = sum / static_cast<double>(n);
  if (n >= 2) {
    double ss = 0.0;
    for (double w : per_game_winrates) ss += (w - agg.mean) * (w - agg.mean);
    double sd = std::sqrt(ss / static_cast<double>(n - 1));
    agg.ci95_halfwidth = 1.96 * sd / std::sqrt(static_cast<double>(n));
  }
  return agg;
}

FailureSplit failure_split(const std::vector<GameEvalReport>& reports) {
  long total = 0, losses = 0, faults = 0, draws = 0;
  for (const GameEvalReport& r : reports) {
    total += r.n_matches;
    losses += r.losses;
    faults += r.faults;
    draws += r.draws;
  }
  FailureSplit split;
  if (total > 0) {
    split.losses_pct = 100.0 * losses / total;
    split.faults_pct = 100.0 * faults / total;
    split.draws_pct = 100.0 * draws / total;
  }
  return split;
}

std::vector<GameEvalReport> reports_from_matches(
    const std::vector<MatchRecord>& records) {
  std::vector<GameEvalReport> reports;
  std::map<std::string, size_t> index;
  for (const MatchRecord& r : records) {
    auto [it, fresh] = index.try_emplace(r.game_id, reports.size());
    if (fresh) {
      reports.emplace_back();
      reports.back().game_id = r.game_id;
    }
    GameEvalReport& g = reports[it->second];
    ++g.n_matches;
    switch (r.outcome) {
      case Outcome::WinA: ++g.wins; break;
      case Outcome::WinB: ++g.losses; break;
      case Outcome::Draw: ++g.draws; break;
      case Outcome::FaultA: ++g.faults; break;
      case Outcome::FaultB: ++g.wins; break;
      case Outcome::EnvError: ++g.env_errors; break;
    }
  }
  for (GameEvalReport& g : reports) {
    int denom = g.n_matches - g.env_errors;
    g.winrate = denom > 0 ? static_cast<double>(g.wins) / denom : 0.0;
  }
  return reports;
}

std::string render_report_table(const std::vector<GameEvalReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "game" << std::right << std::setw(8)
     << "matches" << std::setw(6) << "wins" << std::setw(8) << "losses"
     << std::setw(7) << "draws" << std::setw(8) << "faults" << std::setw(8)
     << "errors" << std::setw(10) << "winrate" << "\n";
  std::vector<double> winrates;
  for (const GameEvalReport& r : reports) {
    os << std::left << std::setw(16) << r.game_id << std::right << std::setw(8)
       << r.n_matches << std::setw(6) << r.wins << std::setw(8) << r.losses
       << std::setw(7) << r.draws << std::setw(8) << r.faults << std::setw(8)
       << r.env_errors << std::setw(10) << std::fixed << std::setprecision(4)
       << r.winrate << "\n";
    winrates.push_back(r.winrate);
  }
  AggregateReport agg = aggregate(winrates);
  os << "\nMean winrate: " << std::fixed << std::setprecision(2)
     << agg.mean * 100.0;
  if (agg.ci95_halfwidth)
    os << " (+/- " << std::setprecision(2) << *agg.ci95_halfwidth * 100.0
       << ")";
  else
    os << " (CI omitted: fewer than 2 games)";
  os << "\n";
  FailureSplit split = failure_split(reports);
  os << "Failure split over all matches: losses " << std::setprecision(2)
     << split.losses_pct << "%, faults " << split.faults_pct << "%, draws "
     << split.draws_pct << "%\n";
  return os.str();
}

}  // namespace arena
