#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "heatmc/field.hpp"

namespace heatmc::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(HEATMC_FIXTURE_DIR) / name;
}

inline nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Uniform random positive field in [lo, hi).
inline ConductivityField random_field(std::size_t n, std::size_t m, std::mt19937_64& gen,
                                      double lo = 0.5, double hi = 2.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  ConductivityField k(n, m);
  for (auto& v : k.values()) v = dist(gen);
  return k;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("heatmc_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace heatmc::testing
