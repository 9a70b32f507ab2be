#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arena/agents.hpp"
#include "arena/env.hpp"
#include "arena/games.hpp"

namespace arena {

enum class Outcome { WinA, WinB, Draw, FaultA, FaultB, EnvError };

std::string outcome_name(Outcome o);
std::optional<Outcome> outcome_from_name(const std::string& name);

struct MatchRecord {
  std::string game_id;
  std::string agent_a;
  std::string agent_b;
  char first_seat = 'A';                     // who sits P1
  std::vector<std::pair<char, int>> moves;   // (seat, action)
  Outcome outcome = Outcome::EnvError;
  int move_count = 0;
  uint64_t seed = 0;
  std::string error_detail;                  // faults and engine errors
};

std::string match_record_to_json(const MatchRecord& r);
MatchRecord match_record_from_json(const std::string& line);

// Referee loop: alternates turns from first_seat, wraps the env with the
// game's move cap (cap -> Draw), scores agent faults, and turns any engine
// exception into EnvError rather than a loss.
MatchRecord play_match(Agent& agent_a, Agent& agent_b, const GameSpec& spec,
                       const EnvFactory& factory, uint64_t seed,
                       char first_seat);

struct GameEvalReport {
  std::string game_id;
  int n_matches = 0;
  int wins = 0, losses = 0, draws = 0, faults = 0, env_errors = 0;
  double winrate = 0.0;  // wins / (n_matches - env_errors)
};

std::string eval_report_to_json(const GameEvalReport& r);

// Plays n_matches of agent vs opponent with alternating first seat and
// per-match seeds derived from seed_base. The report counts outcomes from
// the evaluated agent's side.
GameEvalReport run_eval(Agent& agent, Agent& opponent, const GameSpec& spec,
                        const EnvFactory& factory, int n_matches,
                        uint64_t seed_base,
                        std::vector<MatchRecord>* records = nullptr);

// Wald interval: p +/- 1.96 * sqrt(p (1-p) / n).
std::pair<double, double> wald_ci(int wins, int n);

struct AggregateReport {
  double mean = 0.0;
  std::optional<double> ci95_halfwidth;  // absent with fewer than 2 games
};

// Mean of per-game winrates with a normal-approximation 95% half-width
// using the n-1 sample standard deviation.
AggregateReport aggregate(const std::vector<double>& per_game_winrates);

struct FailureSplit {
  double losses_pct = 0.0;
  double faults_pct = 0.0;
  double draws_pct = 0.0;
};

// Percentage of all matches (from the evaluated agent's side) that were
// losses, faults, and draws; wins make up the remainder.
FailureSplit failure_split(const std::vector<GameEvalReport>& reports);

// Rebuilds per-game reports from raw match records (first-seen game order),
// counting outcomes from agent A's side.
std::vector<GameEvalReport> reports_from_matches(
    const std::vector<MatchRecord>& records);

// Plain-text table mirroring the published report format: one row per game,
// then "mean (+/- CI)" and the failure split.
std::string render_report_table(const std::vector<GameEvalReport>& reports);

}  // namespace arena
