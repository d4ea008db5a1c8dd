#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "csv.hpp"
#include "invlab/core/parallel.hpp"

using namespace invlab;
using namespace invlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"Joint recovery of a potential and a point source from Dirichlet-to-Neumann data"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path;
  int threads = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  app.add_option("-c,--config", config_path, "YAML configuration (defaults when omitted)")->check(CLI::ExistingFile);
  app.add_option("-t,--threads", threads, "worker threads (default: INVLAB_THREADS or 1)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "override the configured seed");
  app.add_option("-o,--out", out_dir, "output directory");

  auto* forward = app.add_subcommand("forward", "simulate potentials, source and (noisy) DtN data");
  std::string dtn_out;
  forward->add_option("--dtn-out", dtn_out, "path of the measured DtN file");
  ReconstructArgs rec;
  auto* reconstruct = app.add_subcommand("reconstruct", "truncated Fourier reconstruction of q2 - q1");
  reconstruct->add_option("--dtn1", rec.dtn1, "reference DtN map")->required()->check(CLI::ExistingFile);
  reconstruct->add_option("--dtn2", rec.dtn2, "measured DtN map")->required()->check(CLI::ExistingFile);
  reconstruct->add_option("--ref-q", rec.ref_q, "reference potential")->required()->check(CLI::ExistingFile);
  reconstruct->add_option("--q-true", rec.q_true, "true potential (oracle mode)")->check(CLI::ExistingFile);
  reconstruct->add_option("--mode", rec.mode, "born | oracle");
  reconstruct->add_option("--rho", rec.rho, "CGO parameter rho");
  reconstruct->add_option("--radius", rec.radius, "auto | noise | <R>");
  LocalizeArgs loc;
  auto* localize = app.add_subcommand("localize", "recover (a, z) from the offset Phi(0)");
  localize->add_option("--dtn", loc.dtn, "measured DtN map")->required()->check(CLI::ExistingFile);
  localize->add_option("--q", loc.q, "potential estimate")->required()->check(CLI::ExistingFile);
  auto* verify = app.add_subcommand("verify", "numerical verification suites");
  auto* sweep = app.add_subcommand("sweep", "joint stability sweep over noise levels");
  auto* defaults = app.add_subcommand("defaults", "print the default configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  try {
    if (defaults->parsed()) {
      std::cout << default_config_text();
      return kPass;
    }
    RunConfig cfg = config_path.empty() ? parse_config(default_config_text()) : load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.output.dir = *out_dir;
    if (threads > 0) set_thread_count(threads);

    if (forward->parsed()) return cmd_forward(cfg, dtn_out);
    if (reconstruct->parsed()) return cmd_reconstruct(cfg, rec);
    if (localize->parsed()) return cmd_localize(cfg, loc);
    if (verify->parsed()) return cmd_verify(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
