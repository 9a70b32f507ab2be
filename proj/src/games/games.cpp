#include "arena/games.hpp"

namespace arena {

const std::vector<GameEntry>& game_registry() {
  static const std::vector<GameEntry> registry = [] {
    std::vector<GameEntry> games;
    auto add = [&games](std::unique_ptr<Environment> (*make)(
                   std::optional<uint64_t>)) {
      auto probe = make({});
      games.push_back({probe->spec(), EnvFactory(make)});
    };
    add(&make_reach27);
    add(&make_lightout);
    add(&make_divide);
    add(&make_number_duel);
    add(&make_crossover);
    add(&make_primeclaim);
    add(&make_isolation);
    add(&make_palindrome);
    add(&make_orderchallenge);
    add(&make_digitdilemma);
    return games;
  }();
  return registry;
}

const GameEntry& find_game(const std::string& id) {
  for (const GameEntry& entry : game_registry())
    if (entry.spec.id == id) return entry;
  throw SuiteError("unknown game id: " + id);
}

std::unique_ptr<Environment> build_env(const std::string& id,
                                       std::optional<uint64_t> seed) {
  return find_game(id).make(seed);
}

}  // namespace arena
