#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arena/env.hpp"

namespace arena {

class SuiteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using EnvFactory =
    std::function<std::unique_ptr<Environment>(std::optional<uint64_t>)>;

struct GameEntry {
  GameSpec spec;
  EnvFactory make;
};

// The ten shipped games, in suite order.
const std::vector<GameEntry>& game_registry();

const GameEntry& find_game(const std::string& id);  // throws SuiteError

// Fresh environment, already reset with `seed`.
std::unique_ptr<Environment> build_env(const std::string& id,
                                       std::optional<uint64_t> seed = {});

// Game-specific factories used by tests and solvers.
std::unique_ptr<Environment> make_reach27(std::optional<uint64_t> seed = {});
std::unique_ptr<Environment> make_lightout(std::optional<uint64_t> seed = {});
std::unique_ptr<Environment> make_divide(std::optional<uint64_t> seed = {});
// Forced starting integer; n must be >= 2 with all prime factors <= 50.
std::unique_ptr<Environment> make_divide_at(long long n);
std::unique_ptr<Environment> make_number_duel(std::optional<uint64_t> seed = {});
std::unique_ptr<Environment> make_number_duel_n(int n);
std::unique_ptr<Environment> make_crossover(std::optional<uint64_t> seed = {});
std::unique_ptr<Environment> make_primeclaim(std::optional<uint64_t> seed = {});
std::unique_ptr<Environment> make_isolation(std::optional<uint64_t> seed = {});
std::unique_ptr<Environment> make_palindrome(std::optional<uint64_t> seed = {});
std::unique_ptr<Environment> make_orderchallenge(
    std::optional<uint64_t> seed = {});
std::unique_ptr<Environment> make_digitdilemma(
    std::optional<uint64_t> seed = {});
// Forced digit line (even length, digits only); used by tests.
std::unique_ptr<Environment> make_digitdilemma_line(const std::string& line);

}  // namespace arena
