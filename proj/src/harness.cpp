#include "heatmc/harness.hpp"

#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "heatmc/checkpoint.hpp"
#include "heatmc/csv_io.hpp"
#include "heatmc/metrics.hpp"
#include "heatmc/svg.hpp"

namespace heatmc {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifest = "manifest.json";
constexpr const char* kCheckpoint = "checkpoint.json";
constexpr const char* kTrace = "trace.csv";
constexpr const char* kMetrics = "metrics.csv";

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Keeps the header plus complete rows whose leading iteration is <= last.
void truncate_csv(const fs::path& path, std::uint64_t last) {
  const std::string text = read_text(path);
  std::string kept;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) break;  // torn final line
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (header) {
      kept += line + '\n';
      header = false;
      continue;
    }
    const auto comma = line.find(',');
    const std::uint64_t it = std::stoull(line.substr(0, comma));
    if (it > last) break;
    kept += line + '\n';
  }
  write_text(path, kept);
}

class CsvRunSink : public RunSink {
 public:
  CsvRunSink(const fs::path& dir, bool append, std::string config_hash)
      : dir_(dir), hash_(std::move(config_hash)) {
    const auto mode = std::ios::binary | (append ? std::ios::app : std::ios::trunc);
    trace_.open(dir / kTrace, mode);
    metrics_.open(dir / kMetrics, mode);
    if (!trace_ || !metrics_) throw IoError("cannot open trace/metrics CSV in " + dir.string());
    if (!append) {
      trace_ << csv::kTraceHeader << '\n';
      metrics_ << csv::kMetricsHeader << '\n';
    }
  }

  void record(const TraceRecord& trace, const MetricRow& metrics) override {
    trace_ << csv::trace_row(trace) << '\n';
    metrics_ << csv::metrics_row(metrics) << '\n';
  }

  void checkpoint(const ChainState& state) override {
    trace_.flush();
    metrics_.flush();
    if (!trace_ || !metrics_) throw IoError("failed writing trace/metrics CSV in " + dir_.string());
    save_checkpoint(dir_ / kCheckpoint, state, hash_);
  }

  void close() {
    trace_.close();
    metrics_.close();
    if (trace_.fail() || metrics_.fail()) throw IoError("failed closing CSVs in " + dir_.string());
  }

 private:
  fs::path dir_;
  std::string hash_;
  std::ofstream trace_;
  std::ofstream metrics_;
};

ChainRun run_single(const RunConfig& rc, const InverseProblem& problem, ChainConfig cfg,
                    const fs::path& dir, bool resume, const json& resolved,
                    const std::string& seed_source) {
  fs::create_directories(dir);
  const std::string hash = config_hash(resolved);

  std::vector<std::string> files = {"config.resolved.json", "observed.csv"};
  if (problem.truth) files.push_back("truth.csv");
  files.insert(files.end(), {kTrace, kMetrics, kCheckpoint, "reconstruction.csv"});

  json manifest = {
      {"config_hash", hash},
      {"seed", cfg.seed},
      {"seed_source", seed_source},
      {"stream", cfg.stream},
      {"scheme", to_string(cfg.normalizer.scheme)},
      {"acceptance_rule", to_string(cfg.acceptance_rule)},
      {"iterations", cfg.iterations},
      {"record_stride", cfg.record_stride},
      {"code_version", HEATMC_VERSION},
      {"started", utc_now()},
      {"finished", nullptr},
      {"partial", true},
      {"files", files},
      {"resumed_from", nullptr},
  };

  std::unique_ptr<Chain> chain;
  if (resume) {
    const LoadedCheckpoint ck = load_checkpoint(dir / kCheckpoint);
    if (ck.config_hash != hash) {
      throw InputError("checkpoint in " + dir.string() + " belongs to a different configuration");
    }
    truncate_csv(dir / kTrace, ck.state.iteration);
    truncate_csv(dir / kMetrics, ck.state.iteration);
    manifest["resumed_from"] = ck.state.iteration;
    chain = std::make_unique<Chain>(cfg, problem, ck.state);
  } else {
    write_text(dir / "config.resolved.json", resolved.dump(2) + "\n");
    csv::write_boundary(dir / "observed.csv", problem.observed);
    if (problem.truth) csv::write_field(dir / "truth.csv", *problem.truth);
    chain = std::make_unique<Chain>(cfg, problem);
  }
  write_text(dir / kManifest, manifest.dump(2) + "\n");

  CsvRunSink sink(dir, resume, hash);
  RunSummary summary;
  try {
    summary = chain->run(sink);
    sink.checkpoint(chain->state());
    sink.close();
    csv::write_field(dir / "reconstruction.csv", chain->state().k_current);
  } catch (...) {
    manifest["error"] = "run aborted; outputs are partial";
    write_text(dir / kManifest, manifest.dump(2) + "\n");
    throw;
  }

  manifest["finished"] = utc_now();
  manifest["partial"] = false;
  manifest["acceptance_rate"] = summary.acceptance_rate;
  manifest["accept_count"] = summary.accept_count;
  manifest["final_delta"] = summary.final_delta;
  manifest["final_beta"] = summary.final_beta ? json(*summary.final_beta) : json(nullptr);
  manifest["infeasible_count"] = summary.infeasible_count;
  manifest["solve_failures"] = summary.solve_failures;
  manifest["wall_seconds"] = summary.wall_seconds;
  write_text(dir / kManifest, manifest.dump(2) + "\n");
  (void)rc;
  return {dir, summary};
}

std::string report_one(const fs::path& dir) {
  const fs::path mpath = dir / kManifest;
  if (!fs::exists(mpath)) throw IoError("no manifest.json in " + dir.string());
  json manifest;
  try {
    manifest = json::parse(read_text(mpath));
  } catch (const json::exception& e) {
    throw IoError("manifest " + mpath.string() + " is unreadable: " + e.what());
  }
  std::vector<std::string> missing;
  for (const auto& f : manifest.at("files")) {
    if (!fs::exists(dir / f.get<std::string>())) missing.push_back(f.get<std::string>());
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += " " + m;
    throw IoError("run directory " + dir.string() + " is missing manifest files:" + list);
  }
  if (manifest.value("partial", true)) {
    throw IoError("run in " + dir.string() + " did not finish (manifest marked partial)");
  }

  const csv::MetricsTable t = csv::read_metrics(dir / kMetrics);
  if (t.iteration.empty()) throw IoError("metrics.csv in " + dir.string() + " has no rows");

  svg::PlotOptions o;
  o.title = "Data discrepancy delta";
  o.y_label = "delta";
  write_text(dir / "delta.svg", svg::line_plot(t.iteration, t.delta, o));
  o.title = "Cumulative acceptances Gamma";
  o.y_label = "Gamma";
  write_text(dir / "gamma.svg", svg::line_plot(t.iteration, t.gamma, o));
  o.title = "Acceptance probability alpha";
  o.y_label = "alpha";
  write_text(dir / "alpha.svg", svg::line_plot(t.iteration, t.alpha, o));
  if (!t.beta.empty()) {
    o.title = "Reconstruction error beta";
    o.y_label = "beta";
    write_text(dir / "beta.svg", svg::line_plot(t.iteration, t.beta, o));
  }
  const ConductivityField recon = csv::read_conductivity(dir / "reconstruction.csv");
  write_text(dir / "reconstruction.svg", svg::heatmap(recon, "Reconstructed conductivity"));
  if (fs::exists(dir / "truth.csv")) {
    write_text(dir / "truth.svg", svg::heatmap(csv::read_conductivity(dir / "truth.csv"), "True conductivity"));
  }

  std::ostringstream os;
  os << "run: " << dir.string() << '\n'
     << "rule: " << manifest.value("acceptance_rule", "?") << "  scheme: "
     << manifest.value("scheme", "?") << "  seed: " << manifest.at("seed") << '\n'
     << "iterations: " << manifest.at("iterations") << "  record stride: "
     << manifest.at("record_stride") << '\n'
     << "acceptance rate: " << csv::format_double(manifest.value("acceptance_rate", 0.0)) << '\n';
  if (t.iteration.size() >= 2) {
    os << "fitted Gamma slope: " << csv::format_double(gamma_slope(t.iteration, t.gamma)) << '\n';
  }
  os << "final delta: " << csv::format_double(t.delta.back()) << '\n';
  if (!t.beta.empty()) os << "final beta: " << csv::format_double(t.beta.back()) << '\n';
  const std::string text = os.str();
  write_text(dir / "summary.txt", text);
  return text;
}

}  // namespace

InverseProblem build_problem(const RunConfig& rc) {
  if (!rc.truth && !rc.observed_path) {
    throw InputError("config needs \"truth\" (synthetic data) or \"observed\" (boundary CSV)");
  }
  InverseProblem p;
  p.grid = rc.grid;
  p.domain = rc.domain;
  if (rc.truth) p.truth = rc.truth->build(rc.grid.n, rc.grid.m);
  if (rc.observed_path) {
    p.observed = csv::read_boundary(*rc.observed_path);
  } else {
    p.observed = observe(solve_forward(*p.truth, p.grid), p.domain);
  }
  const std::size_t expected =
      p.domain == MisfitDomain::full ? p.grid.node_count() : p.grid.boundary_count();
  if (p.observed.size() != expected) {
    throw InputError("observed data has " + std::to_string(p.observed.size()) +
                     " values, expected " + std::to_string(expected));
  }
  return p;
}

std::vector<ChainRun> run_invert(const RunConfig& rc, const InvertOptions& opts) {
  if (opts.chains < 1) throw InputError("--chains must be >= 1");
  if (opts.out_dir.empty()) throw InputError("an output directory is required");
  const InverseProblem problem = build_problem(rc);

  ChainConfig base = rc.chain;
  json resolved = rc.resolved;
  std::string seed_source = "config";
  if (opts.seed_override) {
    base.seed = *opts.seed_override;
    resolved["chain"]["seed"] = base.seed;
    seed_source = "env:HEATMC_SEED";
  }

  if (opts.chains == 1) {
    return {run_single(rc, problem, base, opts.out_dir, opts.resume, resolved, seed_source)};
  }

  fs::create_directories(opts.out_dir);
  std::vector<ChainRun> runs(opts.chains);
  std::vector<std::exception_ptr> errors(opts.chains);
  std::vector<std::thread> workers;
  json index = json::array();
  for (std::size_t c = 0; c < opts.chains; ++c) {
    char name[32];
    std::snprintf(name, sizeof name, "chain_%02zu", c);
    index.push_back(name);
    ChainConfig cfg = base;
    cfg.stream = c;
    workers.emplace_back([&, cfg, c, dir = opts.out_dir / name] {
      try {
        runs[c] = run_single(rc, problem, cfg, dir, opts.resume, resolved, seed_source);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  write_text(opts.out_dir / "chains.json", json{{"chains", index}}.dump(2) + "\n");
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return runs;
}

std::string run_report(const fs::path& run_dir) {
  if (!fs::is_directory(run_dir)) throw IoError(run_dir.string() + " is not a directory");
  if (fs::exists(run_dir / "chains.json")) {
    const json index = json::parse(read_text(run_dir / "chains.json"));
    std::string text;
    for (const auto& name : index.at("chains")) text += report_one(run_dir / name.get<std::string>()) + "\n";
    return text;
  }
  return report_one(run_dir);
}

std::vector<std::string> report_files(bool has_beta) {
  std::vector<std::string> f = {"delta.svg", "gamma.svg", "alpha.svg", "reconstruction.svg", "summary.txt"};
  if (has_beta) f.push_back("beta.svg");
  return f;
}

}  // namespace heatmc
