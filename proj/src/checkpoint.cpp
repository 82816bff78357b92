#include "heatmc/checkpoint.hpp"

#include <fstream>

namespace heatmc {
namespace {

using nlohmann::json;

json array3(const std::array<double, 3>& a) { return json::array({a[0], a[1], a[2]}); }

std::array<double, 3> get3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InputError("checkpoint: expected a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

json checkpoint_to_json(const ChainState& s, const std::string& config_hash) {
  const NormalizerState& nz = s.normalizer;
  json j;
  j["format"] = kCheckpointFormat;
  j["config_hash"] = config_hash;
  j["iteration"] = s.iteration;
  j["accept_count"] = s.accept_count;
  j["infeasible_count"] = s.infeasible_count;
  j["solve_failures"] = s.solve_failures;
  j["k_rows"] = s.k_current.rows();
  j["k_cols"] = s.k_current.cols();
  j["k_current"] = s.k_current.raw();
  j["d_current"] = s.d_current.values;
  j["misfit_current"] = s.misfit_current;
  j["prior_current"] = {{"t", s.prior_current.t_value}, {"m", s.prior_current.m_value}};
  j["normalizer"] = {
      {"seeded", nz.seeded},
      {"alpha_h_prev", nz.alpha_h_prev},
      {"alpha_h_max", nz.alpha_h_max},
      {"d_prev", array3(nz.d_prev)},
      {"d_max", array3(nz.d_max)},
      {"d_last_accepted", array3(nz.d_last_accepted)},
      {"has_alpha_history", nz.has_alpha_history},
      {"alpha_history_min", nz.alpha_history_min},
      {"alpha_history_max", nz.alpha_history_max},
  };
  j["rng"] = {{"engine", "mt19937_64"}, {"state", s.rng.state()}};
  return j;
}

ChainState checkpoint_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != kCheckpointFormat) {
      throw InputError("checkpoint: unsupported format " + j.at("format").dump());
    }
    ChainState s;
    s.iteration = j.at("iteration").get<std::uint64_t>();
    s.accept_count = j.at("accept_count").get<std::uint64_t>();
    s.infeasible_count = j.at("infeasible_count").get<std::uint64_t>();
    s.solve_failures = j.at("solve_failures").get<std::uint64_t>();
    s.k_current = ConductivityField(j.at("k_rows").get<std::size_t>(),
                                    j.at("k_cols").get<std::size_t>(),
                                    j.at("k_current").get<std::vector<double>>());
    s.d_current.values = j.at("d_current").get<std::vector<double>>();
    s.misfit_current = j.at("misfit_current").get<double>();
    s.prior_current.t_value = j.at("prior_current").at("t").get<double>();
    s.prior_current.m_value = j.at("prior_current").at("m").get<double>();

    const json& nz = j.at("normalizer");
    s.normalizer.seeded = nz.at("seeded").get<bool>();
    s.normalizer.alpha_h_prev = nz.at("alpha_h_prev").get<double>();
    s.normalizer.alpha_h_max = nz.at("alpha_h_max").get<double>();
    s.normalizer.d_prev = get3(nz.at("d_prev"));
    s.normalizer.d_max = get3(nz.at("d_max"));
    s.normalizer.d_last_accepted = get3(nz.at("d_last_accepted"));
    s.normalizer.has_alpha_history = nz.at("has_alpha_history").get<bool>();
    s.normalizer.alpha_history_min = nz.at("alpha_history_min").get<double>();
    s.normalizer.alpha_history_max = nz.at("alpha_history_max").get<double>();

    if (j.at("rng").at("engine").get<std::string>() != "mt19937_64") {
      throw InputError("checkpoint: unknown rng engine");
    }
    s.rng.restore(j.at("rng").at("state").get<std::string>());
    if (s.accept_count > s.iteration) throw InputError("checkpoint: accept_count exceeds iteration");
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("checkpoint: malformed content: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const ChainState& s,
                     const std::string& config_hash) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << checkpoint_to_json(s, config_hash).dump(1) << '\n';
    out.flush();
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move checkpoint into place: " + ec.message());
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open checkpoint " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("checkpoint " + path.string() + " is not valid JSON: " + e.what());
  }
  LoadedCheckpoint out{checkpoint_from_json(j), j.value("config_hash", std::string{})};
  return out;
}

}  // namespace heatmc
