#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "arena/env.hpp"
#include "arena/games.hpp"

namespace arena {

// On-disk suite layout: one directory per game holding
//   <suite>/<id>/rules.md    rulebook text shown to external agents
//   <suite>/<id>/actions.md  action-space description
//   <suite>/<id>/meta        key = value lines (id, title, action_space_size,
//                            observation_dim, move_cap, stochastic_setup,
//                            observation)

// Loads every game directory under `path`, sorted by id. Throws SuiteError
// naming the offending file on missing or malformed entries.
std::vector<GameSpec> load_suite(const std::filesystem::path& path);

// Loads one game directory.
GameSpec load_suite_game(const std::filesystem::path& game_dir);

// Writes the built-in registry as a suite directory (used to [re]generate
// the shipped games/ tree).
void export_suite(const std::filesystem::path& path);

// One-line summary of how each game encodes its observation; written to the
// meta file for reference.
std::string observation_note(const std::string& game_id);

}  // namespace arena
