#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "arena/net.hpp"

namespace arena {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckpointMeta {
  std::string game_id;
  int obs_dim = 0;
  int n_actions = 0;
  int64_t timestep = 0;
  uint64_t seed = 0;
};

// Checkpoint file format: magic "GGCKPT1\n", one UTF-8 JSON header line
// {game_id, obs_dim, n_actions, hidden:[64,64], timestep, seed}, then raw
// little-endian float32 in fixed order: fc1.w (input-major), fc1.b, fc2.w,
// fc2.b, policy.w, policy.b, value.w, value.b.
//
// Writes are atomic (temp file + rename).
void save_checkpoint(const std::filesystem::path& path,
                     const PolicyNet<float>& net, const CheckpointMeta& meta);

PolicyNet<float> load_checkpoint(const std::filesystem::path& path,
                                 CheckpointMeta* meta_out = nullptr);

}  // namespace arena
