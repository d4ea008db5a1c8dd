#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "csv.hpp"

using namespace invlab;
using namespace invlab::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kTiny = R"(seed: 3
grid: {n: 16, length: 1.0, margin: 2}
potential:
  s: 3
  M: 3.0e5
  cutoff: 0.1
  reference:
    - {center: [0.5, 0.5, 0.5], width: 0.25, amplitude: 2.0}
  bumps:
    - {center: [0.45, 0.55, 0.5], width: 0.25, amplitude: 3.0}
source: {amplitude: [0.7, 0.2], position: [0.48, 0.52, 0.45]}
reconstruction: {mode: born, rho: 8, R: auto, C_log: 2.0, C1: 2.0e-5}
noise: {epsilon: 1.0e-3, mode: combined, seed: 4}
output: {dir: cli_test_out, prefix: tiny}
)";

}  // namespace

TEST_CASE("SHA-256 test vector") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("CSV number formatting round-trips doubles") {
  CHECK(fmt(0.1) == "0.10000000000000001");
  CHECK(std::stod(fmt(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(fmt(42) == "42");
}

TEST_CASE("default configuration parses and is hashed") {
  const std::string text = default_config_text();
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.hash == sha256_hex(text));
  CHECK(cfg.scenario.params.s == 3);
  CHECK(cfg.radius_mode == RadiusMode::data_error);
}

TEST_CASE("configuration errors carry the key path") {
  try {
    parse_config("grid: {n: 16, bogus: 1}\n");
    FAIL("unknown key accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("grid.bogus") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("grid: {n: 24}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("noise: {epsilon: 1.5}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("reconstruction: {rho: 2, C1: 4, M: 1}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("source: {amplitude: [1, 0], position: [0.13, 0.5, 0.5]}\n"), GeometryError);
}

TEST_CASE("forward output is byte-identical across reruns") {
  const RunConfig cfg = parse_config(kTiny);
  REQUIRE(cmd_forward(cfg) == kPass);
  const std::string dir = cfg.output.dir;
  const std::string csv1 = slurp(dir + "/tiny_forward.csv");
  const std::string dtn1 = slurp(dir + "/tiny_dtn.dtnm");
  REQUIRE(cmd_forward(cfg) == kPass);
  CHECK(slurp(dir + "/tiny_forward.csv") == csv1);
  CHECK(slurp(dir + "/tiny_dtn.dtnm") == dtn1);
  CHECK(csv1.find("# config_sha256: " + sha256_hex(kTiny)) != std::string::npos);

  ReconstructArgs rec{dir + "/tiny_dtnref.dtnm", dir + "/tiny_dtn.dtnm", dir + "/tiny_qref.sfld", "", {}, {}, {}};
  CHECK(cmd_reconstruct(cfg, rec) == kPass);
  CHECK(slurp(dir + "/tiny_reconstruct.csv").find("eta_x,eta_y,eta_z,re_qhat,im_qhat") != std::string::npos);

  // oracle mode needs the true potential
  rec.mode = "oracle";
  CHECK_THROWS_AS(cmd_reconstruct(cfg, rec), ParameterError);

  {
    std::ofstream bad(dir + "/corrupt.dtnm", std::ios::binary);
    bad << "NOPE";
  }
  rec.mode.reset();
  rec.dtn2 = dir + "/corrupt.dtnm";
  CHECK_THROWS_AS(cmd_reconstruct(cfg, rec), FormatError);
  std::filesystem::remove_all(dir);
}
