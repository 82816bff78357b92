#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "heatmc/chain.hpp"
#include "heatmc/grid.hpp"

namespace heatmc {

/// Parameters of a synthetic ground-truth field.
struct PhantomSpec {
  std::string type = "gaussian_well";  ///< constant | tilted_plane | gaussian_well | file
  double value = 1.0;                  ///< constant
  double base = 1.0;                   ///< tilted_plane, gaussian_well
  double gx = 0.5;
  double gy = 0.5;
  double depth = 0.5;
  double cx = 0.5;
  double cy = 0.5;
  double width = 0.2;
  std::filesystem::path path;  ///< file

  ConductivityField build(std::size_t n, std::size_t m) const;
};

/// Fully resolved run configuration.
struct RunConfig {
  GridSpec grid;
  MisfitDomain domain = MisfitDomain::boundary;
  std::optional<PhantomSpec> truth;
  std::optional<std::filesystem::path> observed_path;
  ChainConfig chain;
  /// The configuration with every default filled in, echoed into run outputs.
  nlohmann::json resolved;
};

/// Parses JSON text, rejecting duplicate keys. Throws InputError.
nlohmann::json parse_json_strict(const std::string& text);

/// Validates and fills defaults. Relative file paths resolve against
/// `base_dir`. Unknown keys, duplicate keys, bad enums and out-of-range values
/// are InputErrors naming the offending key path.
RunConfig load_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

GridSpec grid_from_json(const nlohmann::json& j, const std::string& where = "grid");
nlohmann::json grid_to_json(const GridSpec& g);

/// 16 hex digits of FNV-1a over the canonical (key-sorted) dump.
std::string config_hash(const nlohmann::json& resolved);

}  // namespace heatmc
