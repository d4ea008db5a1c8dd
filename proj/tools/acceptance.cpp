// Acceptance gates: one PASS/FAIL line per criterion. Tolerances are fixed here.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "invlab/cgo/solutions.hpp"
#include "invlab/core/parallel.hpp"
#include "invlab/forward/dtn.hpp"
#include "invlab/inversion/source.hpp"

using namespace invlab;
using namespace invlab::cli;

namespace {

constexpr double kKernelTol = 1e-12;
constexpr double kKernelSeconds = 5.0;
constexpr double kDecaySeconds = 120.0;
constexpr double kCgoTol = 1e-6;
constexpr double kIdentityTol = 1e-10;
constexpr double kIdentitySeconds = 120.0;
constexpr double kKroneckerTol = 1e-10;
constexpr double kPhiTol = 1e-5;
constexpr double kSlopeTol = 0.2;
constexpr double kRadiusTarget = 7.7, kRadiusTol = 0.05, kRadiusEqTol = 1e-10;
constexpr double kPairingTol = 1e-10;
constexpr double kLocalizeSeconds = 180.0;
constexpr double kSweepSeconds = 900.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Routes std::cout into a buffer for its lifetime.
class MutedConsole {
 public:
  MutedConsole() : saved_(std::cout.rdbuf(sink_.rdbuf())) {}
  ~MutedConsole() { std::cout.rdbuf(saved_); }
  MutedConsole(const MutedConsole&) = delete;
  MutedConsole& operator=(const MutedConsole&) = delete;

 private:
  std::ostringstream sink_;
  std::streambuf* saved_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "48^3" is the 48-interval domain inside a 64-point periodic box.
Domain domain48() { return Domain(Grid(3, 64, 1.0), 8); }
Domain domain24() { return Domain(Grid(3, 32, 1.0), 4); }

Outcome kernel_correctness() {
  const double t = 32.0 / std::sqrt(2.0);
  const KernelCheck k = kernel_check(64, 1.0, {Complex(t, 0), Complex(0, t), 0.0}, 12, 17);
  return {k.residual <= kKernelTol && k.seconds < kKernelSeconds,
          "residual " + num(k.residual) + " in " + num(k.seconds) + " s"};
}

Outcome decay_slopes() {
  const DecayReport r = verify_decay_estimates(DecaySpec{});
  const bool pass = r.pass_k && r.pass_psi && r.pass_psi1 && r.seconds < kDecaySeconds;
  return {pass, "slopes K " + num(r.slope_k) + ", psi H^s " + num(r.slope_psi) + ", psi H^{s+1} " + num(r.slope_psi1) +
                    " (needs >= -0.15) in " + num(r.seconds) + " s"};
}

Outcome cgo_residual() {
  const Domain dom = domain48();
  const Potential q = bump_potential(dom, {{{0.45, 0.5, 0.55}, 0.15, 5.0}}, 0.08);
  const double t = 32.0 / std::sqrt(2.0);
  const CgoSolution u = cgo_solution(q.field, {Complex(t, 0), Complex(0, t), 0.0});
  return {u.residual <= kCgoTol, "||(Delta+q)u||/||u|| = " + num(u.residual) + " after " +
                                     std::to_string(u.series.terms) + " terms"};
}

Outcome identities() {
  const IdentityReport r = identity_residual_suite(50, 2024);
  const bool pass = r.max_alessandrini <= kIdentityTol && r.max_affine <= kIdentityTol && r.seconds < kIdentitySeconds;
  return {pass, "50 cases: Alessandrini " + num(r.max_alessandrini) + ", affine " + num(r.max_affine) + " in " +
                    num(r.seconds) + " s"};
}

Outcome separation() {
  const SeparationSuiteReport r = separation_and_theta_suite(SeparationSpec{});
  const bool pass = r.max_kronecker <= kKroneckerTol && r.max_phi_residual <= kPhiTol && r.violations == 0;
  return {pass, std::to_string(r.rows.size()) + " pairs: Kronecker " + num(r.max_kronecker) + ", phi residual " +
                    num(r.max_phi_residual) + ", min ratio/Re " + num(r.min_ratio_fraction) + ", violations " +
                    std::to_string(r.violations) + ", fitted C " + num(r.fitted_constant)};
}

Outcome consistency() {
  const ConsistencyReport r = estimator_consistency(ConsistencySpec{});
  std::string rms;
  for (double v : r.rms) rms += (rms.empty() ? "" : ", ") + num(v);
  return {std::abs(r.slope + 1.0) <= kSlopeTol, "rho slope " + num(r.slope) + " (rms " + rms + ")"};
}

Outcome truncation() {
  const double r0 = choose_truncation_radius(1e-3, 3, 3, 1.0);
  double worst = 0.0;
  bool dominates = true;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-6, 1e-9}) {
    for (int s : {2, 3, 4}) {
      for (double c : {0.5, 1.0, 2.0}) {
        const double r = choose_truncation_radius(eps, s, 3, c);
        const double rhs = -2.0 * std::log(eps);
        worst = std::max(worst, std::abs((2 * s - 3) * std::log(r) + c * r - rhs) / rhs);
        dominates = dominates && r >= truncation_radius_lower_bound(eps, s, 3, c);
      }
    }
  }
  const bool pass = std::abs(r0 - kRadiusTarget) <= kRadiusTol && worst <= kRadiusEqTol && dominates;
  return {pass, "R0 = " + num(r0) + ", equation residual " + num(worst) + ", lower bound " +
                    (dominates ? "holds" : "violated") + " on 54 (eps, s, C)"};
}

struct PairingAt {
  double closed_form = 0.0;  // relative error against a e^{xi.z/2}
  double reciprocity = 0.0;  // against the discrete Green identity
  double constant = 0.0;     // constant probe against a
};

PairingAt pairing_errors(const Domain& dom) {
  const DirichletSolver solver(dom, ScalarField(dom.grid()));
  const BoundaryBasis basis(dom);
  const PointSource src{{2.0, 0.0}, {0.25, 0.5, 0.5}};
  const Eigen::VectorXcd offset = source_offset(solver, basis, src);
  const CVec3 xi{Complex(4, 0), Complex(0, 4), 0.0};
  auto plane = [&](const Vec3& x) { return std::exp(0.5 * dot(xi, x)); };
  const ComplexTrace v = trace_of<Complex>(dom, plane);
  const Complex p = (offset.transpose() * basis.coefficients(v)).value();
  const Complex exact = 2.0 * std::exp(Complex(0.5, 1.0));
  const ComplexField vh = solver.solve(v);
  const SourceSolution<Complex> u = solver.solve_with_source(src, ComplexTrace(dom));
  const Complex green = src.amplitude * reciprocity_weight(dom, vh, src.position, u.r_min);
  const BoundaryTrace one = trace_of<double>(dom, [](const Vec3&) { return 1.0; });
  const Complex p1 = (offset.transpose() * basis.coefficients(one).cast<Complex>()).value();
  return {std::abs(p - exact) / std::abs(exact), std::abs(p - green) / std::abs(exact),
          std::abs(p1 - src.amplitude) / std::abs(src.amplitude)};
}

Outcome source_recovery() {
  const PairingAt coarse = pairing_errors(domain24());
  const PairingAt fine = pairing_errors(domain48());
  const double order = std::log2(coarse.constant / fine.constant);
  const bool pairing = fine.closed_form <= kPairingTol;
  const bool constant = order >= 1.5;

  const auto t0 = std::chrono::steady_clock::now();
  const Domain dom = domain48();
  const Potential q = bump_potential(dom, {{{0.45, 0.5, 0.55}, 0.2, 5.0}}, 0.08);
  const DirichletSolver solver(dom, q.field);
  const BoundaryBasis basis(dom);
  const PointSource src{{1.5, -0.7}, {0.41, 0.57, 0.48}};
  const SourceEstimate est = recover_source(solver, basis, source_offset(solver, basis, src));
  const double secs = seconds_since(t0);
  double dz = 0.0;
  for (int d = 0; d < 3; ++d) dz = std::max(dz, std::abs(est.z[d] - src.position[d]));
  const double da = std::abs(est.a - src.amplitude) / std::abs(src.amplitude);
  const bool localize = dz <= 2 * dom.spacing() && da <= 1e-2 && secs < kLocalizeSeconds;

  return {pairing && constant && localize,
          "closed-form pairing error " + num(fine.closed_form) + " (24^3: " + num(coarse.closed_form) +
              "; discrete Green identity " + num(fine.reciprocity) + "), constant probe " + num(coarse.constant) +
              " -> " + num(fine.constant) + " (order " + num(order) + "), |dz|/h " + num(dz / dom.spacing()) +
              ", |da|/|a| " + num(da) + " in " + num(secs) + " s"};
}

Outcome joint_stability(const std::string& out_dir) {
  RunConfig cfg = parse_config(default_config_text());
  cfg.output.dir = out_dir;
  cfg.output.prefix = "acceptance";
  const StabilityCurve c = joint_stability_experiment(sweep_scenarios(cfg), sweep_spec(cfg));
  write_sweep_csv(cfg, c);
  const bool pass = c.monotone_potential && c.monotone_source && c.baseline_smallest && c.exponent_potential < 0.0 &&
                    c.exponent_source < 0.0 && c.seconds < kSweepSeconds;
  return {pass, "potential " + num(c.potential.front()) + " -> " + num(c.potential.back()) + " (baseline " +
                    num(c.baseline_potential) + "), source " + num(c.source.front()) + " -> " + num(c.source.back()) +
                    " (baseline " + num(c.baseline_source) + "), exponents " + num(c.exponent_potential) + ", " +
                    num(c.exponent_source) + " in " + num(c.seconds) + " s"};
}

// Runs the CLI pipeline twice, the second time with a different worker count,
// and compares every output file byte for byte.
Outcome reproducibility(const std::string& out_dir) {
  std::vector<std::string> runs;
  std::vector<std::string> names;
  for (int pass = 0; pass < 2; ++pass) {
    RunConfig cfg = parse_config(default_config_text());
    cfg.noise.epsilon = 1e-4;
    cfg.epsilons = {1e-2, 1e-4};
    cfg.scenarios = 1;
    cfg.output.dir = out_dir + "/rerun" + std::to_string(pass);
    cfg.output.prefix = "r";
    const int saved = thread_count();
    set_thread_count(pass == 0 ? 1 : 3);
    const std::string d = cfg.output.dir + "/";
    {
      // the subcommands report their own gates; keep them out of the criterion lines
      const MutedConsole muted;
      cmd_forward(cfg);
      cmd_reconstruct(cfg, {d + "r_dtnref.dtnm", d + "r_dtn.dtnm", d + "r_qref.sfld", "", {}, {}, {}});
      cmd_localize(cfg, {d + "r_dtn.dtnm", d + "r_q.sfld"});
      cmd_sweep(cfg);
    }
    set_thread_count(saved);
    std::string blob;
    names.clear();
    for (const auto& e : std::filesystem::directory_iterator(cfg.output.dir)) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) blob += n + '\0' + slurp(d + n);
    runs.push_back(std::move(blob));
  }
  const bool pass = runs[0] == runs[1] && names.size() >= 9;
  return {pass, std::to_string(names.size()) + " files " + (runs[0] == runs[1] ? "identical" : "DIFFER") +
                    " across reruns with 1 and 3 threads"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out_dir = argc > 1 ? argv[1] : "acceptance_out";
  std::filesystem::create_directories(out_dir);
  std::cout << kVersion << ", " << thread_count() << " worker thread(s)\n";

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"C1 K_xi correctness", kernel_correctness},
      {"C2 decay slopes", decay_slopes},
      {"C3 CGO residual", cgo_residual},
      {"C4 Alessandrini and affine identities", identities},
      {"C5 interpolants and separation", separation},
      {"C6 estimator consistency", consistency},
      {"C7 truncation radius", truncation},
      {"C8 source recovery", source_recovery},
      {"C9 joint stability law", [&] { return joint_stability(out_dir); }},
      {"C10 reproducibility", [&] { return reproducibility(out_dir); }},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << num(seconds_since(t0)) << " s]"
              << std::endl;
  }
  std::cout << (10 - failures) << "/10 criteria pass\n";
  return failures == 0 ? 0 : 1;
}
