// heatmc: conductivity reconstruction from boundary temperatures by MCMC.
//
//   heatmc phantom --type gaussian_well --n 20 --m 20 -o truth.csv
//   heatmc forward --k truth.csv --grid run.json -o boundary.csv
//   heatmc invert  --config run.json --out runs/z2 [--chains 4] [--resume]
//   heatmc report  runs/z2
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "heatmc/config.hpp"
#include "heatmc/csv_io.hpp"
#include "heatmc/forward.hpp"
#include "heatmc/harness.hpp"
#include "heatmc/phantoms.hpp"

namespace fs = std::filesystem;
using namespace heatmc;

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("HEATMC_SEED");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long seed = std::strtoull(v, &end, 10);
  if (errno != 0 || *end != '\0' || *v == '-') throw InputError("HEATMC_SEED must be an unsigned integer");
  return seed;
}

GridSpec load_grid(const std::string& path) {
  if (path.empty()) return GridSpec{};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open grid config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto j = parse_json_strict(ss.str());
  // Either a bare grid object or a run config with a "grid" section.
  if (j.is_object() && j.contains("grid")) return grid_from_json(j.at("grid"));
  return grid_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat-conductivity reconstruction by Metropolis-Hastings MCMC"};
  app.require_subcommand(1);

  PhantomSpec ph;
  std::size_t ph_n = 20, ph_m = 20;
  std::string ph_out;
  auto* phantom = app.add_subcommand("phantom", "Write a ground-truth conductivity field as CSV");
  phantom->add_option("--type", ph.type, "constant | tilted_plane | gaussian_well")->capture_default_str();
  phantom->add_option("--n", ph_n, "rows")->capture_default_str();
  phantom->add_option("--m", ph_m, "columns")->capture_default_str();
  phantom->add_option("--value", ph.value, "constant value")->capture_default_str();
  phantom->add_option("--base", ph.base)->capture_default_str();
  phantom->add_option("--gx", ph.gx)->capture_default_str();
  phantom->add_option("--gy", ph.gy)->capture_default_str();
  phantom->add_option("--depth", ph.depth)->capture_default_str();
  phantom->add_option("--cx", ph.cx)->capture_default_str();
  phantom->add_option("--cy", ph.cy)->capture_default_str();
  phantom->add_option("--width", ph.width)->capture_default_str();
  phantom->add_option("-o,--out", ph_out, "output CSV (default stdout)");

  std::string fw_k, fw_grid, fw_out, fw_field;
  auto* forward = app.add_subcommand("forward", "Solve the fin equation and emit boundary temperatures");
  forward->add_option("--k", fw_k, "conductivity field CSV")->required();
  forward->add_option("--grid", fw_grid, "grid JSON (bare or a run config); defaults otherwise");
  forward->add_option("-o,--out", fw_out, "boundary CSV (default stdout)");
  forward->add_option("--field", fw_field, "also write the full temperature field CSV");

  std::string inv_config, inv_out;
  std::size_t inv_chains = 1;
  bool inv_resume = false;
  auto* invert = app.add_subcommand("invert", "Run the MCMC reconstruction");
  invert->add_option("--config", inv_config, "run configuration JSON")->required();
  invert->add_option("--out", inv_out, "run directory")->required();
  invert->add_option("--chains", inv_chains, "independent chains run concurrently")->capture_default_str();
  invert->add_flag("--resume", inv_resume, "continue from the run directory's checkpoint");

  std::string rep_dir;
  auto* report = app.add_subcommand("report", "Summarize a run directory and write SVG plots");
  report->add_option("run", rep_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*phantom) {
      if (ph.type == "file") throw InputError("phantom --type must be constant, tilted_plane or gaussian_well");
      const ConductivityField k = ph.build(ph_n, ph_m);
      if (ph_out.empty()) csv::write_field(std::cout, k);
      else csv::write_field(fs::path(ph_out), k);
    } else if (*forward) {
      const GridSpec g = load_grid(fw_grid);
      const ConductivityField k = csv::read_conductivity(fw_k);
      const TemperatureField u = solve_forward(k, g);
      const BoundaryVector d = boundary_trace(u);
      if (fw_out.empty()) csv::write_boundary(std::cout, d);
      else csv::write_boundary(fs::path(fw_out), d);
      if (!fw_field.empty()) csv::write_field(fs::path(fw_field), u);
    } else if (*invert) {
      const RunConfig rc = load_config(fs::path(inv_config));
      InvertOptions opts;
      opts.out_dir = inv_out;
      opts.chains = inv_chains;
      opts.resume = inv_resume;
      opts.seed_override = env_seed();
      for (const auto& run : run_invert(rc, opts)) {
        std::cout << run.dir.string() << ": " << run.summary.iterations << " iterations, acceptance rate "
                  << csv::format_double(run.summary.acceptance_rate) << ", final delta "
                  << csv::format_double(run.summary.final_delta);
        if (run.summary.final_beta) std::cout << ", final beta " << csv::format_double(*run.summary.final_beta);
        std::cout << '\n';
      }
    } else if (*report) {
      std::cout << run_report(rep_dir);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
