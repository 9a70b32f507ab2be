#include "arena/agents.hpp"

#include <iostream>
#include <sstream>

#include <json.hpp>

#include "arena/ppo.hpp"

namespace arena {

using nlohmann::json;

ActionIndex choose_random(const std::vector<ActionIndex>& valid,
                          SplitMix64& rng) {
  if (valid.empty()) throw ContractError("choose_random: empty valid set");
  return valid[rng.next_below(valid.size())];
}

ActionIndex choose_policy(const PolicyNet<float>& net, const Observation& obs,
                          const std::vector<ActionIndex>& valid,
                          SplitMix64& rng, bool greedy) {
  if (valid.empty()) throw ContractError("choose_policy: empty valid set");
  NetOutput<float> out;
  NetActivations<float> act;
  net_forward(net, obs, out, act);
  std::vector<float> probs = masked_distribution(out.logits, valid);
  if (greedy) {
    ActionIndex best = valid[0];
    for (ActionIndex a : valid)
      if (probs[a] > probs[best]) best = a;
    return best;
  }
  double u = rng.next_double();
  double cum = 0.0;
  for (ActionIndex a : valid) {
    cum += probs[a];
    if (u < cum) return a;
  }
  return valid.back();
}

std::vector<std::string> action_annotations(const std::string& action_map_text,
                                            int action_space_size) {
  std::vector<std::string> labels(action_space_size);
  std::istringstream in(action_map_text);
  std::string line;
  while (std::getline(in, line)) {
    size_t dash = line.find("- ");
    if (dash == std::string::npos) continue;
    size_t colon = line.find(':', dash);
    if (colon == std::string::npos) continue;
    try {
      size_t pos = 0;
      std::string num = line.substr(dash + 2, colon - dash - 2);
      int idx = std::stoi(num, &pos);
      if (pos != num.size()) continue;
      if (idx >= 0 && idx < action_space_size) {
        std::string text = line.substr(colon + 1);
        size_t b = text.find_first_not_of(' ');
        labels[idx] = b == std::string::npos ? "" : text.substr(b);
      }
    } catch (const std::exception&) {
      continue;
    }
  }
  return labels;
}

bool HumanAgent::begin_game(const GameSpec& spec) {
  action_labels_ = action_annotations(spec.action_map_text, spec.action_space_size);
  out_ << "=== " << spec.title << " ===\n" << spec.rulebook_text << "\n";
  return true;
}

Agent::Choice HumanAgent::choose(const Environment& env) {
  std::vector<ActionIndex> valid = env.valid_moves();
  out_ << env.render() << "\nLegal moves:\n";
  for (ActionIndex a : valid) {
    out_ << "  " << a;
    if (a < static_cast<int>(action_labels_.size()) &&
        !action_labels_[a].empty())
      out_ << "  (" << action_labels_[a] << ")";
    out_ << "\n";
  }
  for (;;) {
    out_ << "Your move: " << std::flush;
    std::string token;
    if (!(in_ >> token))
      return {true, -1, "input stream closed"};
    try {
      size_t pos = 0;
      int a = std::stoi(token, &pos);
      if (pos == token.size())
        for (ActionIndex v : valid)
          if (v == a) return {false, a, {}};
    } catch (const std::exception&) {
    }
    out_ << "Not a legal move, try again.\n";
  }
}

ExternalAgent::ExternalAgent(std::string command, int max_reprompts,
                             std::chrono::milliseconds move_timeout)
    : command_(std::move(command)), max_reprompts_(max_reprompts),
      move_timeout_(move_timeout) {}

bool ExternalAgent::send(const std::string& line) {
  if (transcript_) transcript_->sent.push_back(line);
  return child_->write_line(line);
}

ChildProcess::ReadStatus ExternalAgent::receive(std::string& line) {
  ChildProcess::ReadStatus st = child_->read_line(line, move_timeout_);
  if (st == ChildProcess::ReadStatus::Ok && transcript_)
    transcript_->received.push_back(line);
  return st;
}

bool ExternalAgent::begin_game(const GameSpec& spec) {
  broken_ = false;
  try {
    child_ = std::make_unique<ChildProcess>(command_);
  } catch (const std::exception&) {
    broken_ = true;
    return false;
  }
  json init = {{"type", "init"},
               {"game_description", spec.rulebook_text},
               {"action_description", spec.action_map_text}};
  if (!send(init.dump())) {
    broken_ = true;
    return false;
  }
  std::string reply;
  if (receive(reply) != ChildProcess::ReadStatus::Ok) {
    broken_ = true;
    return false;
  }
  try {
    json j = json::parse(reply);
    if (j.at("type").get<std::string>() != "ready") broken_ = true;
  } catch (const json::exception&) {
    broken_ = true;
  }
  return !broken_;
}

Agent::Choice ExternalAgent::choose(const Environment& env) {
  if (broken_ || !child_)
    return {true, -1, "agent session is not usable"};
  std::vector<ActionIndex> valid = env.valid_moves();
  std::string board = env.render();

  for (int attempt = 0; attempt <= max_reprompts_; ++attempt) {
    json request = {{"type", "move_request"},
                    {"board", board},
                    {"legal_moves", valid},
                    {"reprompt", attempt}};
    if (!send(request.dump())) {
      broken_ = true;
      return {true, -1, "write to agent failed"};
    }
    std::string reply;
    ChildProcess::ReadStatus st = receive(reply);
    if (st == ChildProcess::ReadStatus::Timeout) {
      broken_ = true;
      return {true, -1, "move timeout"};
    }
    if (st == ChildProcess::ReadStatus::Eof) {
      broken_ = true;
      return {true, -1, "agent closed its output"};
    }
    try {
      json j = json::parse(reply);
      if (j.at("type").get<std::string>() == "move") {
        int a = j.at("action").get<int>();
        for (ActionIndex v : valid)
          if (v == a) return {false, a, {}};
      }
    } catch (const json::exception&) {
      // Unparseable replies burn a re-prompt like any illegal move.
    }
  }
  return {true, -1, "re-prompt budget exhausted"};
}

}  // namespace arena
