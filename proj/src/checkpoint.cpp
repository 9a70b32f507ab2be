#include "arena/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace arena {

namespace fs = std::filesystem;
using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {
constexpr char kMagic[] = "GGCKPT1\n";

void write_tensor(std::ofstream& out, const std::vector<float>& t) {
  out.write(reinterpret_cast<const char*>(t.data()),
            static_cast<std::streamsize>(t.size() * sizeof(float)));
}

void read_tensor(std::ifstream& in, std::vector<float>& t,
                 const fs::path& path) {
  in.read(reinterpret_cast<char*>(t.data()),
          static_cast<std::streamsize>(t.size() * sizeof(float)));
  if (!in)
    throw CheckpointError("truncated checkpoint: " + path.string());
}
}  // namespace

void save_checkpoint(const fs::path& path, const PolicyNet<float>& net,
                     const CheckpointMeta& meta) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write " + tmp.string());
    out.write(kMagic, 8);
    json header = {{"game_id", meta.game_id},
                   {"obs_dim", net.obs_dim},
                   {"n_actions", net.n_actions},
                   {"hidden", {kHiddenSize, kHiddenSize}},
                   {"timestep", meta.timestep},
                   {"seed", meta.seed}};
    out << header.dump() << "\n";
    write_tensor(out, net.fc1.w);
    write_tensor(out, net.fc1.b);
    write_tensor(out, net.fc2.w);
    write_tensor(out, net.fc2.b);
    write_tensor(out, net.policy.w);
    write_tensor(out, net.policy.b);
    write_tensor(out, net.value.w);
    write_tensor(out, net.value.b);
    if (!out) throw CheckpointError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

PolicyNet<float> load_checkpoint(const fs::path& path,
                                 CheckpointMeta* meta_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot read " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw CheckpointError("bad magic in " + path.string());
  std::string header_line;
  if (!std::getline(in, header_line))
    throw CheckpointError("missing header in " + path.string());
  json header;
  try {
    header = json::parse(header_line);
  } catch (const json::exception& e) {
    throw CheckpointError("bad header in " + path.string() + ": " + e.what());
  }
  CheckpointMeta meta;
  meta.game_id = header.at("game_id").get<std::string>();
  meta.obs_dim = header.at("obs_dim").get<int>();
  meta.n_actions = header.at("n_actions").get<int>();
  meta.timestep = header.at("timestep").get<int64_t>();
  meta.seed = header.at("seed").get<uint64_t>();
  auto hidden = header.at("hidden").get<std::vector<int>>();
  if (hidden != std::vector<int>{kHiddenSize, kHiddenSize})
    throw CheckpointError("unsupported hidden sizes in " + path.string());

  PolicyNet<float> net;
  net.init_shapes(meta.obs_dim, meta.n_actions);
  read_tensor(in, net.fc1.w, path);
  read_tensor(in, net.fc1.b, path);
  read_tensor(in, net.fc2.w, path);
  read_tensor(in, net.fc2.b, path);
  read_tensor(in, net.policy.w, path);
  read_tensor(in, net.policy.b, path);
  read_tensor(in, net.value.w, path);
  read_tensor(in, net.value.b, path);
  if (meta_out) *meta_out = meta;
  return net;
}

}  // namespace arena
