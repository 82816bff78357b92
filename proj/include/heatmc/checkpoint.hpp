#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "heatmc/chain.hpp"

namespace heatmc {

inline constexpr const char* kCheckpointFormat = "heatmc-checkpoint/1";

/// Full-precision JSON snapshot of a chain: field, cached data, normalizer
/// memory, counters and RNG engine state. `config_hash` ties the snapshot to
/// the run configuration that produced it.
nlohmann::json checkpoint_to_json(const ChainState& s, const std::string& config_hash);

/// Throws InputError on a wrong format tag or malformed content.
ChainState checkpoint_from_json(const nlohmann::json& j);

/// Write-to-temp then rename, so an interrupted run always leaves the last
/// complete checkpoint behind.
void save_checkpoint(const std::filesystem::path& path, const ChainState& s,
                     const std::string& config_hash);

struct LoadedCheckpoint {
  ChainState state;
  std::string config_hash;
};
LoadedCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace heatmc
