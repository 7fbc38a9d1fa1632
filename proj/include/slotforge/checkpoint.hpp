#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "slotforge/nn/params.hpp"

namespace slotforge {

struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Container layout: 4 magic bytes, u32 version, u32 JSON header length,
// UTF-8 JSON header (caller fields plus a "tensors" manifest of
// name/rows/cols), then raw little-endian float32 data in manifest order.
void save_checkpoint_file(const std::string& path, const std::string& magic,
                          nlohmann::json header, const nn::ParamSet& params);

struct LoadedCheckpoint {
  nlohmann::json header;
  nn::ParamSet params;
};

LoadedCheckpoint load_checkpoint_file(const std::string& path, const std::string& magic);

}  // namespace slotforge
