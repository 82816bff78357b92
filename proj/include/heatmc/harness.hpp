#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "heatmc/chain.hpp"
#include "heatmc/config.hpp"

namespace heatmc {

/// Observed data from the config: the CSV file if given, otherwise the
/// noise-free forward solution of the ground-truth phantom.
InverseProblem build_problem(const RunConfig& rc);

struct InvertOptions {
  std::filesystem::path out_dir;
  std::size_t chains = 1;
  bool resume = false;
  std::optional<std::uint64_t> seed_override;  ///< from HEATMC_SEED
};

struct ChainRun {
  std::filesystem::path dir;
  RunSummary summary;
};

/// Runs one chain per output directory. With chains > 1 the chains run
/// concurrently in out_dir/chain_NN, each on its own RNG stream, and
/// out_dir/chains.json lists them.
///
/// Each run directory holds config.resolved.json, observed.csv, truth.csv
/// (synthetic runs), trace.csv, metrics.csv, checkpoint.json,
/// reconstruction.csv and manifest.json. With resume = true the chain
/// continues from checkpoint.json and the CSVs are cut back to the
/// checkpoint iteration first, so the finished files match an
/// uninterrupted run byte for byte.
std::vector<ChainRun> run_invert(const RunConfig& rc, const InvertOptions& opts);

/// Reads the manifest (failing if any listed file is missing), writes SVG
/// plots and summary.txt into the run directory and returns the summary text.
/// A directory with chains.json is reported chain by chain.
std::string run_report(const std::filesystem::path& run_dir);

/// Files a report writes next to the run outputs.
std::vector<std::string> report_files(bool has_beta);

}  // namespace heatmc
