#include "heatmc/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "heatmc/csv_io.hpp"
#include "heatmc/phantoms.hpp"

namespace heatmc {
namespace {

using nlohmann::json;

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
}

void reject_unknown(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      std::string valid;
      for (const auto& a : allowed) valid += (valid.empty() ? "" : ", ") + a;
      throw InputError("unknown key " + join(where, item.key()) + " (valid: " + valid + ")");
    }
  }
}

double get_number(const json& j, const std::string& key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw InputError(join(where, key) + ": expected a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& j, const std::string& key, std::uint64_t fallback,
                        const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0 && !v.is_number_unsigned())) {
    throw InputError(join(where, key) + ": expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

bool get_bool(const json& j, const std::string& key, bool fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw InputError(join(where, key) + ": expected true or false");
  return j.at(key).get<bool>();
}

std::string get_string(const json& j, const std::string& key, const std::string& fallback,
                       const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw InputError(join(where, key) + ": expected a string");
  return j.at(key).get<std::string>();
}

const json& section(const json& root, const std::string& key) {
  static const json empty = json::object();
  if (!root.contains(key)) return empty;
  require_object(root.at(key), key);
  return root.at(key);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

PhantomSpec phantom_from_json(const json& j, const std::filesystem::path& base) {
  require_object(j, "truth");
  PhantomSpec p;
  p.type = get_string(j, "type", p.type, "truth");
  if (p.type == "constant") {
    reject_unknown(j, "truth", {"type", "value"});
    p.value = get_number(j, "value", p.value, "truth");
  } else if (p.type == "tilted_plane") {
    reject_unknown(j, "truth", {"type", "base", "gx", "gy"});
    p.base = get_number(j, "base", p.base, "truth");
    p.gx = get_number(j, "gx", p.gx, "truth");
    p.gy = get_number(j, "gy", p.gy, "truth");
  } else if (p.type == "gaussian_well") {
    reject_unknown(j, "truth", {"type", "base", "depth", "cx", "cy", "width"});
    p.base = get_number(j, "base", p.base, "truth");
    p.depth = get_number(j, "depth", p.depth, "truth");
    p.cx = get_number(j, "cx", p.cx, "truth");
    p.cy = get_number(j, "cy", p.cy, "truth");
    p.width = get_number(j, "width", p.width, "truth");
  } else if (p.type == "file") {
    reject_unknown(j, "truth", {"type", "path"});
    if (!j.contains("path")) throw InputError("truth.path is required for type \"file\"");
    p.path = resolve(base, get_string(j, "path", "", "truth"));
  } else {
    throw InputError("truth.type: unknown phantom \"" + p.type +
                     "\" (valid: constant, tilted_plane, gaussian_well, file)");
  }
  return p;
}

json phantom_to_json(const PhantomSpec& p) {
  if (p.type == "constant") return {{"type", p.type}, {"value", p.value}};
  if (p.type == "tilted_plane") return {{"type", p.type}, {"base", p.base}, {"gx", p.gx}, {"gy", p.gy}};
  if (p.type == "gaussian_well") {
    return {{"type", p.type}, {"base", p.base}, {"depth", p.depth},
            {"cx", p.cx},     {"cy", p.cy},     {"width", p.width}};
  }
  return {{"type", p.type}, {"path", p.path.string()}};
}

}  // namespace

ConductivityField PhantomSpec::build(std::size_t n, std::size_t m) const {
  ConductivityField k;
  try {
    if (type == "constant") {
      k = phantoms::constant(value, n, m);
    } else if (type == "tilted_plane") {
      k = phantoms::tilted_plane(base, gx, gy, n, m);
    } else if (type == "gaussian_well") {
      k = phantoms::gaussian_well(base, depth, cx, cy, width, n, m);
    } else if (type == "file") {
      k = csv::read_conductivity(path);
    } else {
      throw InputError("unknown phantom type \"" + type + "\"");
    }
  } catch (const InputError& e) {
    throw InputError(std::string("truth: ") + e.what());
  }
  if (!k.same_shape(n, m)) throw InputError("truth field does not match the grid dimensions");
  return k;
}

json parse_json_strict(const std::string& text) {
  std::vector<std::set<std::string>> seen;
  std::vector<std::string> path;
  std::string pending_key;
  json::parser_callback_t cb = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        seen.emplace_back();
        path.push_back(pending_key);
        break;
      case json::parse_event_t::object_end:
        if (!seen.empty()) seen.pop_back();
        if (!path.empty()) path.pop_back();
        break;
      case json::parse_event_t::key: {
        const std::string key = parsed.get<std::string>();
        if (!seen.empty() && !seen.back().insert(key).second) {
          std::string where;
          for (std::size_t i = 1; i < path.size(); ++i) where = join(where, path[i]);
          throw InputError("duplicate key " + join(where, key));
        }
        pending_key = key;
        break;
      }
      case json::parse_event_t::array_start:
        pending_key = "[]";
        break;
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text, cb);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
}

GridSpec grid_from_json(const json& j, const std::string& where) {
  require_object(j, where);
  reject_unknown(j, where, {"n", "m", "lx", "ly", "h_conv", "thickness", "power", "cpu_segment_fraction"});
  GridSpec g;
  g.n = static_cast<std::size_t>(get_count(j, "n", g.n, where));
  g.m = static_cast<std::size_t>(get_count(j, "m", g.m, where));
  g.lx = get_number(j, "lx", g.lx, where);
  g.ly = get_number(j, "ly", g.ly, where);
  g.h_conv = get_number(j, "h_conv", g.h_conv, where);
  g.thickness = get_number(j, "thickness", g.thickness, where);
  g.power = get_number(j, "power", g.power, where);
  g.cpu_segment_fraction = get_number(j, "cpu_segment_fraction", g.cpu_segment_fraction, where);
  try {
    g.validate();
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  return g;
}

json grid_to_json(const GridSpec& g) {
  return {{"n", g.n},
          {"m", g.m},
          {"lx", g.lx},
          {"ly", g.ly},
          {"h_conv", g.h_conv},
          {"thickness", g.thickness},
          {"power", g.power},
          {"cpu_segment_fraction", g.cpu_segment_fraction}};
}

RunConfig load_config(const json& root, const std::filesystem::path& base_dir) {
  require_object(root, "config");
  reject_unknown(root, "", {"grid", "truth", "observed", "misfit_domain", "chain", "sensitivities",
                            "proposal", "normalizer"});
  RunConfig rc;
  rc.grid = grid_from_json(section(root, "grid"));

  const std::string domain = get_string(root, "misfit_domain", "boundary", "");
  if (domain == "boundary") rc.domain = MisfitDomain::boundary;
  else if (domain == "full") rc.domain = MisfitDomain::full;
  else throw InputError("misfit_domain: expected \"boundary\" or \"full\"");

  if (root.contains("truth")) rc.truth = phantom_from_json(root.at("truth"), base_dir);
  if (root.contains("observed")) rc.observed_path = resolve(base_dir, get_string(root, "observed", "", ""));

  ChainConfig& c = rc.chain;
  const json& cj = section(root, "chain");
  reject_unknown(cj, "chain", {"iterations", "seed", "initial_k", "acceptance_rule", "record_stride",
                               "checkpoint_every"});
  c.iterations = get_count(cj, "iterations", c.iterations, "chain");
  c.seed = get_count(cj, "seed", c.seed, "chain");
  c.record_stride = get_count(cj, "record_stride", c.record_stride, "chain");
  c.checkpoint_every = get_count(cj, "checkpoint_every", 1000, "chain");
  c.acceptance_rule = parse_acceptance_rule(get_string(cj, "acceptance_rule", "normalized", "chain"));
  json initial = 1.0;
  if (cj.contains("initial_k")) {
    const json& ik = cj.at("initial_k");
    if (ik.is_number()) {
      c.initial_k = ik.get<double>();
      initial = ik;
    } else if (ik.is_string()) {
      const auto p = resolve(base_dir, ik.get<std::string>());
      c.initial_k = csv::read_conductivity(p);
      initial = p.string();
    } else {
      throw InputError("chain.initial_k: expected a number or a field CSV path");
    }
  }
  if (const auto* f = std::get_if<ConductivityField>(&c.initial_k)) require_shape(*f, rc.grid);

  Sensitivities& s = c.sensitivities;
  const json& sj = section(root, "sensitivities");
  reject_unknown(sj, "sensitivities", {"lambda1", "lambda2", "lambda3", "sigma", "allow_unordered"});
  s.lambda1 = get_number(sj, "lambda1", s.lambda1, "sensitivities");
  s.lambda2 = get_number(sj, "lambda2", s.lambda2, "sensitivities");
  s.lambda3 = get_number(sj, "lambda3", s.lambda3, "sensitivities");
  s.sigma = get_number(sj, "sigma", s.sigma, "sensitivities");
  s.allow_unordered = get_bool(sj, "allow_unordered", false, "sensitivities");

  ProposalConfig& p = c.proposal;
  const json& pj = section(root, "proposal");
  reject_unknown(pj, "proposal", {"omega_max", "k_min", "block_size"});
  p.omega_max = get_number(pj, "omega_max", p.omega_max, "proposal");
  p.k_min = get_number(pj, "k_min", p.k_min, "proposal");
  p.block_size = static_cast<std::size_t>(get_count(pj, "block_size", 2, "proposal"));

  NormalizerConfig& nz = c.normalizer;
  const json& nj = section(root, "normalizer");
  reject_unknown(nj, "normalizer", {"scheme", "w0", "w", "cutoff", "zeta", "eps", "restricted_interval"});
  try {
    nz.scheme = parse_scheme(get_string(nj, "scheme", "z2", "normalizer"));
  } catch (const InputError& e) {
    throw InputError(std::string("normalizer.scheme: ") + e.what());
  }
  nz.w0 = get_number(nj, "w0", nz.w0, "normalizer");
  nz.w = get_number(nj, "w", nz.w, "normalizer");
  nz.cutoff = get_number(nj, "cutoff", nz.cutoff, "normalizer");
  nz.zeta = get_number(nj, "zeta", nz.zeta, "normalizer");
  nz.eps = get_number(nj, "eps", nz.eps, "normalizer");
  if (nj.contains("restricted_interval")) nz.restricted_interval = get_bool(nj, "restricted_interval", false, "normalizer");

  c.validate();
  if (!s.ordered()) {
    std::fprintf(stderr, "warning: lambda ordering lambda1 > lambda2, lambda3 overridden\n");
  }

  rc.resolved = {
      {"grid", grid_to_json(rc.grid)},
      {"misfit_domain", domain},
      {"chain",
       {{"iterations", c.iterations},
        {"seed", c.seed},
        {"initial_k", initial},
        {"acceptance_rule", to_string(c.acceptance_rule)},
        {"record_stride", c.record_stride},
        {"checkpoint_every", c.checkpoint_every}}},
      {"sensitivities",
       {{"lambda1", s.lambda1},
        {"lambda2", s.lambda2},
        {"lambda3", s.lambda3},
        {"sigma", s.sigma},
        {"allow_unordered", s.allow_unordered}}},
      {"proposal", {{"omega_max", p.omega_max}, {"k_min", p.k_min}, {"block_size", p.block_size}}},
      {"normalizer",
       {{"scheme", to_string(nz.scheme)},
        {"w0", nz.w0},
        {"w", nz.w},
        {"cutoff", nz.cutoff},
        {"zeta", nz.zeta},
        {"eps", nz.eps},
        {"restricted_interval", nz.restricted()}}},
  };
  if (rc.truth) {
    rc.truth->build(rc.grid.n, rc.grid.m);  // fail early on a non-positive phantom
    rc.resolved["truth"] = phantom_to_json(*rc.truth);
  }
  if (rc.observed_path) rc.resolved["observed"] = rc.observed_path->string();
  return rc;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config(parse_json_strict(ss.str()), path.parent_path());
}

std::string config_hash(const json& resolved) {
  const std::string text = resolved.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace heatmc
