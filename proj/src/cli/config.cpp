#include "config.hpp"

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace invlab::cli {
namespace {

void check_keys(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError(path + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError("unknown key '" + (path.empty() ? key : path + "." + key) + "'");
  }
}

template <class T>
T get(const YAML::Node& node, const std::string& path) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(path + ": invalid value");
  }
}

template <class T>
void read(const YAML::Node& parent, const char* key, const std::string& path, T& out) {
  if (const YAML::Node n = parent[key]) out = get<T>(n, path + "." + key);
}

Vec3 read_vec3(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence() || n.size() != 3) throw ConfigError(path + ": expected a list of 3 numbers");
  return {get<double>(n[0], path + "[0]"), get<double>(n[1], path + "[1]"), get<double>(n[2], path + "[2]")};
}

Complex read_complex(const YAML::Node& n, const std::string& path) {
  if (n.IsScalar()) return {get<double>(n, path), 0.0};
  if (!n.IsSequence() || n.size() != 2) throw ConfigError(path + ": expected a number or [re, im]");
  return {get<double>(n[0], path + "[0]"), get<double>(n[1], path + "[1]")};
}

std::vector<GaussianBump> read_bumps(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence()) throw ConfigError(path + ": expected a list of bumps");
  std::vector<GaussianBump> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    check_keys(n[i], p, {"center", "width", "amplitude"});
    GaussianBump b;
    if (!n[i]["center"] || !n[i]["width"] || !n[i]["amplitude"]) throw ConfigError(p + ": needs center, width, amplitude");
    b.center = read_vec3(n[i]["center"], p + ".center");
    b.width = get<double>(n[i]["width"], p + ".width");
    b.amplitude = get<double>(n[i]["amplitude"], p + ".amplitude");
    if (!(b.width > 0.0)) throw ConfigError(p + ".width: must be positive");
    out.push_back(b);
  }
  return out;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  RunConfig cfg;
  cfg.hash = sha256_hex(text);
  if (root.IsNull()) return cfg;
  check_keys(root, "", {"seed", "grid", "potential", "source", "reconstruction", "noise", "output", "verify"});
  read(root, "seed", "", cfg.seed);
  ScenarioSpec& sc = cfg.scenario;

  if (const YAML::Node g = root["grid"]) {
    check_keys(g, "grid", {"n", "length", "margin"});
    read(g, "n", "grid", sc.n);
    read(g, "length", "grid", sc.length);
    read(g, "margin", "grid", sc.margin);
  }
  if (const YAML::Node p = root["potential"]) {
    check_keys(p, "potential", {"s", "M", "cutoff", "reference", "bumps", "perturbation"});
    read(p, "s", "potential", sc.params.s);
    read(p, "M", "potential", sc.params.M);
    read(p, "cutoff", "potential", sc.cutoff);
    if (p["reference"]) sc.reference = read_bumps(p["reference"], "potential.reference");
    if (p["bumps"]) cfg.bumps = read_bumps(p["bumps"], "potential.bumps");
    if (const YAML::Node r = p["perturbation"]) {
      check_keys(r, "potential.perturbation",
                 {"count", "amp_min", "amp_max", "width_min", "width_max", "center_min", "center_max"});
      PerturbationSpec& ps = sc.perturbation;
      read(r, "count", "potential.perturbation", ps.count);
      read(r, "amp_min", "potential.perturbation", ps.amp_min);
      read(r, "amp_max", "potential.perturbation", ps.amp_max);
      read(r, "width_min", "potential.perturbation", ps.width_min);
      read(r, "width_max", "potential.perturbation", ps.width_max);
      read(r, "center_min", "potential.perturbation", ps.center_min);
      read(r, "center_max", "potential.perturbation", ps.center_max);
      require(ps.count >= 0, "potential.perturbation.count: must be non-negative");
      require(ps.width_min > 0.0 && ps.width_max >= ps.width_min, "potential.perturbation: need 0 < width_min <= width_max");
      require(ps.amp_max >= ps.amp_min, "potential.perturbation: need amp_min <= amp_max");
      require(ps.center_max >= ps.center_min, "potential.perturbation: need center_min <= center_max");
    }
  }
  if (const YAML::Node s = root["source"]) {
    check_keys(s, "source", {"amplitude", "position", "amp_min", "amp_max", "region_min", "region_max"});
    if (s["amplitude"] || s["position"]) {
      require(s["amplitude"] && s["position"], "source: amplitude and position go together");
      cfg.source = PointSource{read_complex(s["amplitude"], "source.amplitude"), read_vec3(s["position"], "source.position")};
    }
    read(s, "amp_min", "source", sc.source.amp_min);
    read(s, "amp_max", "source", sc.source.amp_max);
    read(s, "region_min", "source", sc.source.region_min);
    read(s, "region_max", "source", sc.source.region_max);
  }
  if (const YAML::Node r = root["reconstruction"]) {
    check_keys(r, "reconstruction", {"mode", "rho", "R", "radius_cap", "C_log", "C1", "probe_scales", "starts_per_axis"});
    ReconstructionParams& p = sc.params;
    if (r["mode"]) {
      const auto m = get<std::string>(r["mode"], "reconstruction.mode");
      require(m == "born" || m == "oracle", "reconstruction.mode: expected born or oracle");
      p.mode = m == "born" ? EstimatorMode::born : EstimatorMode::oracle;
    }
    read(r, "rho", "reconstruction", p.rho);
    read(r, "C_log", "reconstruction", p.C_log);
    read(r, "C1", "reconstruction", p.C1);
    read(r, "radius_cap", "reconstruction", cfg.radius_cap);
    if (const YAML::Node radius = r["R"]) {
      const auto v = get<std::string>(radius, "reconstruction.R");
      if (v == "auto") {
        cfg.radius_mode = RadiusMode::measured;
      } else if (v == "noise") {
        cfg.radius_mode = RadiusMode::data_error;
      } else {
        p.R = get<double>(radius, "reconstruction.R");
        require(p.R > 0.0, "reconstruction.R: must be positive, 'auto' or 'noise'");
        cfg.radius_mode = RadiusMode::fixed;
      }
    }
    if (r["probe_scales"]) cfg.probes.scales = get<std::vector<double>>(r["probe_scales"], "reconstruction.probe_scales");
    read(r, "starts_per_axis", "reconstruction", cfg.probes.starts_per_axis);
    require(cfg.radius_cap > 0.0, "reconstruction.radius_cap: must be positive");
    require(cfg.probes.starts_per_axis >= 1, "reconstruction.starts_per_axis: must be >= 1");
    for (double t : cfg.probes.scales) require(t > 0.0, "reconstruction.probe_scales: entries must be positive");
  }
  if (const YAML::Node n = root["noise"]) {
    check_keys(n, "noise", {"epsilon", "mode", "seed", "epsilons", "scenarios"});
    read(n, "epsilon", "noise", cfg.noise.epsilon);
    if (n["mode"]) {
      try {
        cfg.noise.mode = parse_noise_mode(get<std::string>(n["mode"], "noise.mode"));
      } catch (const ParameterError& e) {
        throw ConfigError(std::string("noise.mode: ") + e.what());
      }
    }
    read(n, "seed", "noise", cfg.noise.seed);
    if (n["epsilons"]) cfg.epsilons = get<std::vector<double>>(n["epsilons"], "noise.epsilons");
    read(n, "scenarios", "noise", cfg.scenarios);
    require(cfg.noise.epsilon >= 0.0 && cfg.noise.epsilon < 1.0, "noise.epsilon: must lie in [0, 1)");
    for (double e : cfg.epsilons) require(e > 0.0 && e < 1.0, "noise.epsilons: entries must lie in (0, 1)");
    require(cfg.scenarios >= 1, "noise.scenarios: must be >= 1");
  }
  if (const YAML::Node o = root["output"]) {
    check_keys(o, "output", {"dir", "prefix"});
    read(o, "dir", "output", cfg.output.dir);
    read(o, "prefix", "output", cfg.output.prefix);
  }
  if (const YAML::Node v = root["verify"]) {
    check_keys(v, "verify", {"decay", "identities", "separation", "consistency", "truncation", "identity_cases",
                             "separation_pairs"});
    read(v, "decay", "verify", cfg.verify.decay);
    read(v, "identities", "verify", cfg.verify.identities);
    read(v, "separation", "verify", cfg.verify.separation);
    read(v, "consistency", "verify", cfg.verify.consistency);
    read(v, "truncation", "verify", cfg.verify.truncation);
    read(v, "identity_cases", "verify", cfg.verify.identity_cases);
    read(v, "separation_pairs", "verify", cfg.verify.separation_pairs);
    require(cfg.verify.identity_cases >= 1, "verify.identity_cases: must be >= 1");
    require(cfg.verify.separation_pairs >= 1, "verify.separation_pairs: must be >= 1");
  }

  // Module preconditions, checked before any compute.
  require(is_power_of_two(sc.n) && sc.n >= 8, "grid.n: must be a power of two >= 8");
  require(sc.length > 0.0, "grid.length: must be positive");
  require(sc.margin >= 1 && 2 * sc.margin < sc.n - 2, "grid.margin: must leave at least three intervals");
  require(sc.cutoff > 0.0, "potential.cutoff: must be positive");
  try {
    validate(sc.params);
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("reconstruction: ") + e.what());
  }
  if (cfg.source) {
    const Domain dom(Grid(3, sc.n, sc.length), sc.margin);
    PointSource src = *cfg.source;
    for (auto& c : src.position) c *= sc.length;
    try {
      validate_source(dom, src, 2.0 * dom.spacing());
    } catch (const GeometryError& e) {
      throw GeometryError(std::string("source.position: ") + e.what());
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("source.amplitude: ") + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string default_config_text() {
  return R"(seed: 101
grid:
  n: 32
  length: 1.0
  margin: 4
potential:
  s: 3
  M: 3.0e5
  cutoff: 0.08
  reference:
    - {center: [0.45, 0.5, 0.55], width: 0.25, amplitude: 3.0}
  perturbation: {count: 1, amp_min: 3.0, amp_max: 5.0, width_min: 0.25, width_max: 0.3, center_min: 0.4, center_max: 0.6}
source:
  amp_min: 0.5
  amp_max: 1.5
  region_min: 0.35
  region_max: 0.65
reconstruction:
  mode: born
  rho: 8
  R: noise
  radius_cap: 24
  C_log: 2.0
  C1: 2.0e-5
noise:
  epsilon: 0.0
  mode: combined
  seed: 5
  epsilons: [1.0e-1, 1.0e-2, 1.0e-3, 1.0e-4, 1.0e-5, 1.0e-6]
  scenarios: 3
output:
  dir: out
  prefix: run
)";
}

Scenario make_scenario(const RunConfig& cfg, std::uint64_t seed) {
  Scenario s = generate_scenario(cfg.scenario, seed);
  const ScenarioSpec& sc = cfg.scenario;
  const double L = sc.length;
  if (!cfg.bumps.empty()) {
    std::vector<GaussianBump> truth;
    for (GaussianBump b : sc.reference) {
      for (auto& c : b.center) c *= L;
      b.width *= L;
      truth.push_back(b);
    }
    for (GaussianBump b : cfg.bumps) {
      for (auto& c : b.center) c *= L;
      b.width *= L;
      truth.push_back(b);
    }
    s.q2 = bump_potential(s.domain, truth, sc.cutoff * L, sc.params.s);
    s.q2.bound_M = sc.params.M;
    validate_potential(s.domain, s.q2);
  }
  if (cfg.source) {
    s.source = *cfg.source;
    for (auto& c : s.source.position) c *= L;
    validate_source(s.domain, s.source, 2.0 * s.domain.spacing());
  }
  return s;
}

}  // namespace invlab::cli
