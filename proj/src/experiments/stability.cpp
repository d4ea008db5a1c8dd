#include "invlab/experiments/stability.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "invlab/core/cutoff.hpp"
#include "invlab/core/sobolev.hpp"
#include "invlab/experiments/stats.hpp"

namespace invlab {
namespace {

struct RunSetup {
  RadiusMode radius_mode = RadiusMode::data_error;
  double data_error = 0.0;
  double radius_cap = 0.0;
  double fixed_R = 0.0;
  EstimatorMode mode = EstimatorMode::born;
};

class ScenarioRunner {
 public:
  ScenarioRunner(const Scenario& sc, int index, bool with_source, const SourceRecoveryOptions& source)
      : sc_(sc),
        index_(index),
        with_source_(with_source),
        source_opts_(source),
        basis_(std::make_shared<const BoundaryBasis>(sc.domain)),
        dq_(sc.domain.grid()) {
    const DirichletSolver s1(sc.domain, sc.q1.field);
    const DirichletSolver s2(sc.domain, sc.q2.field);
    reference_.emplace(assemble_dtn(s1, basis_));
    clean_.emplace(with_source ? assemble_dtn(s2, basis_, sc.source) : assemble_dtn(s2, basis_));
    for (std::size_t i = 0; i < dq_.size(); ++i) dq_[i] = sc.q2.field[i] - sc.q1.field[i];
  }

  const DtnMap& clean() const { return *clean_; }

  StabilityRow evaluate(const DtnMap& measured, const RunSetup& setup, double eps, const std::string& label,
                        double noise_norm) const {
    const Domain& dom = sc_.domain;
    const Grid& g = dom.grid();
    JointOptions opts;
    opts.params = sc_.params;
    opts.params.mode = setup.mode;
    opts.params.R = setup.fixed_R;
    opts.radius_mode = setup.radius_mode;
    opts.data_error = setup.data_error;
    opts.radius_cap = setup.radius_cap;
    opts.cutoff_margin = sc_.cutoff;
    opts.source = source_opts_;

    StabilityRow row;
    row.scenario = index_;
    row.seed = sc_.seed;
    row.epsilon = eps;
    row.run = label;
    row.measured_noise = noise_norm;
    ScalarField err(g);
    if (with_source_) {
      const JointResult r = joint_recovery(measured, *reference_, sc_.q1, opts, &sc_.q2.field);
      for (std::size_t i = 0; i < g.size(); ++i) err[i] = r.reconstruction.dq[i] - dq_[i];
      row.R = r.reconstruction.R;
      row.frequencies = static_cast<int>(r.reconstruction.samples.size());
      row.source_error =
          source_diff_norm(r.source.a, r.source.z, sc_.source.amplitude, sc_.source.position, opts.params.s);
      for (int d = 0; d < 3; ++d)
        row.position_error = std::max(row.position_error, std::abs(r.source.z[d] - sc_.source.position[d]));
      row.amplitude_error = std::abs(r.source.a - sc_.source.amplitude) / std::abs(sc_.source.amplitude);
      row.source_residual = r.source.residual;
    } else {
      ReconstructionParams p = opts.params;
      p.R = select_radius(opts, dtn_operator_norm(measured, *reference_).linear);
      const Vec3 origin = dom.center();
      Estimator est;
      if (p.mode == EstimatorMode::born) {
        est = [&](const CgoFrame& f) { return estimate_q_hat_born(*reference_, measured, f, origin); };
      } else {
        est = [&](const CgoFrame& f) { return estimate_q_hat_oracle(dom, sc_.q1.field, sc_.q2.field, f).estimate; };
      }
      const ReconstructionResult r = reconstruct_potential_diff(g, est, p);
      const ScalarField chi = cutoff_profile(g, dom.lower(), dom.upper(), sc_.cutoff);
      for (std::size_t i = 0; i < g.size(); ++i) err[i] = r.dq[i] * chi[i] - dq_[i];
      row.R = r.R;
      row.frequencies = static_cast<int>(r.samples.size());
    }
    row.potential_error = negative_sobolev_norm(err, opts.params.s);
    return row;
  }

 private:
  const Scenario& sc_;
  int index_;
  bool with_source_;
  SourceRecoveryOptions source_opts_;
  std::shared_ptr<const BoundaryBasis> basis_;
  std::optional<DtnMap> reference_;
  std::optional<DtnMap> clean_;
  ScalarField dq_;
};

StabilityCurve run(const std::vector<Scenario>& scenarios, const StabilitySpec& spec, bool with_source) {
  const auto t0 = std::chrono::steady_clock::now();
  if (scenarios.empty()) throw ParameterError("stability experiment needs at least one scenario");
  if (spec.epsilons.size() < 2) throw ParameterError("stability experiment needs two or more noise levels");
  for (double e : spec.epsilons)
    if (!(e > 0.0 && e < 1.0)) throw ParameterError("noise levels must lie in (0, 1)");

  StabilityCurve out;
  out.epsilons = spec.epsilons;
  const std::size_t ne = spec.epsilons.size();
  out.potential.assign(ne, 0.0);
  out.source.assign(ne, 0.0);
  const double ns = static_cast<double>(scenarios.size());
  std::vector<double> best_fixed(ne, 0.0);
  bool have_fixed = !spec.fixed_radii.empty();

  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    const Scenario& sc = scenarios[si];
    const ScenarioRunner runner(sc, static_cast<int>(si), with_source, spec.source);
    for (std::size_t k = 0; k < ne; ++k) {
      const double eps = spec.epsilons[k];
      const NoiseMode mode = with_source ? spec.noise : NoiseMode::operator_only;
      NoiseReport rep;
      const DtnMap noisy = inject_noise(runner.clean(), {eps, mode, sc.seed * 1000003ULL + k}, &rep);
      RunSetup setup;
      setup.radius_mode = spec.radius_mode;
      setup.data_error = eps;
      setup.radius_cap = spec.radius_cap;
      const StabilityRow row = runner.evaluate(noisy, setup, eps, "auto", rep.measured.star);
      out.rows.push_back(row);
      out.potential[k] += row.potential_error / ns;
      out.source[k] += row.source_error / ns;
      double best = std::numeric_limits<double>::infinity();
      for (double R : spec.fixed_radii) {
        RunSetup fixed;
        fixed.radius_mode = RadiusMode::fixed;
        fixed.fixed_R = R;
        const StabilityRow fr = runner.evaluate(noisy, fixed, eps, "fixed", rep.measured.star);
        out.rows.push_back(fr);
        best = std::min(best, fr.potential_error);
      }
      if (have_fixed) best_fixed[k] += best / ns;
    }
    if (spec.baseline) {
      RunSetup base;
      base.radius_mode = RadiusMode::data_error;
      base.data_error = 0.0;
      base.radius_cap = spec.radius_cap;
      base.mode = EstimatorMode::oracle;
      const StabilityRow row = runner.evaluate(runner.clean(), base, 0.0, "baseline", 0.0);
      out.rows.push_back(row);
      out.baseline_potential += row.potential_error / ns;
      out.baseline_source += row.source_error / ns;
    }
  }

  // Order noise levels from large to small, i.e. increasing -log eps.
  std::vector<std::size_t> order(ne);
  for (std::size_t k = 0; k < ne; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return spec.epsilons[a] > spec.epsilons[b]; });
  std::vector<double> x, yp, ys;
  for (std::size_t k : order) {
    x.push_back(-std::log(spec.epsilons[k]));
    yp.push_back(out.potential[k]);
    ys.push_back(out.source[k]);
  }
  out.monotone_potential = monotone_non_increasing(yp, spec.jitter);
  out.exponent_potential = loglog_slope(x, yp);
  bool ok = out.monotone_potential && out.exponent_potential < 0.0;
  if (with_source) {
    out.monotone_source = monotone_non_increasing(ys, spec.jitter);
    out.exponent_source = loglog_slope(x, ys);
    ok = ok && out.monotone_source && out.exponent_source < 0.0;
  }
  if (spec.baseline) {
    out.baseline_smallest = true;
    for (std::size_t k = 0; k < ne; ++k) {
      if (!(out.baseline_potential < out.potential[k])) out.baseline_smallest = false;
      if (with_source && !(out.baseline_source < out.source[k])) out.baseline_smallest = false;
    }
    ok = ok && out.baseline_smallest;
  }
  if (have_fixed) {
    for (std::size_t k = 0; k < ne; ++k)
      out.auto_vs_best_fixed = std::max(out.auto_vs_best_fixed, out.potential[k] / best_fixed[k]);
  }
  out.pass = ok;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace

StabilityCurve potential_stability_experiment(const std::vector<Scenario>& scenarios, StabilitySpec spec) {
  spec.noise = NoiseMode::operator_only;
  return run(scenarios, spec, false);
}

StabilityCurve joint_stability_experiment(const std::vector<Scenario>& scenarios, const StabilitySpec& spec) {
  return run(scenarios, spec, true);
}

}  // namespace invlab
