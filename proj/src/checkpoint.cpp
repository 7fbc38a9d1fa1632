#include "slotforge/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace slotforge {

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 4);
  if (!in) throw CheckpointError("truncated checkpoint");
  return v;
}

}  // namespace

void save_checkpoint_file(const std::string& path, const std::string& magic,
                          nlohmann::json header, const nn::ParamSet& params) {
  if (magic.size() != 4) throw CheckpointError("magic must be 4 bytes");
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& [name, m] : params.tensors())
    manifest.push_back({{"name", name}, {"rows", m.rows()}, {"cols", m.cols()}});
  header["tensors"] = std::move(manifest);
  std::string js = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot write " + path);
  out.write(magic.data(), 4);
  put_u32(out, kCheckpointVersion);
  put_u32(out, static_cast<std::uint32_t>(js.size()));
  out.write(js.data(), static_cast<std::streamsize>(js.size()));
  for (const auto& [name, m] : params.tensors()) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      float f = static_cast<float>(m.data()[i]);
      out.write(reinterpret_cast<const char*>(&f), 4);
    }
  }
  if (!out) throw CheckpointError("write failure on " + path);
}

LoadedCheckpoint load_checkpoint_file(const std::string& path, const std::string& magic) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + path);
  char got[4];
  in.read(got, 4);
  if (!in || std::memcmp(got, magic.data(), 4) != 0)
    throw CheckpointError("bad magic in " + path);
  std::uint32_t version = get_u32(in);
  if (version != kCheckpointVersion)
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  std::uint32_t jlen = get_u32(in);
  std::string js(jlen, '\0');
  in.read(js.data(), jlen);
  if (!in) throw CheckpointError("truncated checkpoint header in " + path);

  LoadedCheckpoint ck;
  try {
    ck.header = nlohmann::json::parse(js);
  } catch (const nlohmann::json::parse_error& e) {
    throw CheckpointError(std::string("corrupt checkpoint header: ") + e.what());
  }
  for (const auto& t : ck.header.at("tensors")) {
    nn::Mat& m = ck.params.add(t.at("name").get<std::string>(),
                               t.at("rows").get<int>(), t.at("cols").get<int>());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      float f;
      in.read(reinterpret_cast<char*>(&f), 4);
      if (!in) throw CheckpointError("truncated tensor data in " + path);
      m.data()[i] = static_cast<double>(f);
    }
  }
  return ck;
}

}  // namespace slotforge
