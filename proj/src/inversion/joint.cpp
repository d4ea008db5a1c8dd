#include "invlab/inversion/joint.hpp"

#include <algorithm>

#include "invlab/core/cutoff.hpp"

namespace invlab {

double select_radius(const JointOptions& opts, double measured_norm) {
  const ReconstructionParams& p = opts.params;
  auto capped = [&](double r) { return opts.radius_cap > 0.0 ? std::min(r, opts.radius_cap) : r; };
  switch (opts.radius_mode) {
    case RadiusMode::fixed:
      if (!(p.R > 0.0)) throw ParameterError("fixed radius mode needs R > 0");
      return p.R;
    case RadiusMode::measured:
      if (!(measured_norm < 1.0)) throw ParameterError("measured data norm must be below 1 for an automatic radius");
      if (measured_norm == 0.0) {
        if (!(opts.radius_cap > 0.0)) throw ParameterError("zero data norm needs a radius cap");
        return opts.radius_cap;
      }
      return capped(choose_truncation_radius(measured_norm, p.s, p.d, p.C_log));
    case RadiusMode::data_error:
      if (opts.data_error == 0.0) {
        if (!(opts.radius_cap > 0.0)) throw ParameterError("noiseless data needs a radius cap");
        return opts.radius_cap;
      }
      return capped(choose_truncation_radius(opts.data_error, p.s, p.d, p.C_log));
  }
  throw ParameterError("unknown radius mode");
}

JointResult joint_recovery(const DtnMap& measured, const DtnMap& reference, const Potential& q1,
                           const JointOptions& opts, const ScalarField* q_true) {
  validate(opts.params);
  if (!(measured.domain() == reference.domain())) throw DimensionError("measured and reference maps differ in geometry");
  const Domain& dom = measured.domain();
  if (!(q1.field.grid() == dom.grid())) throw DimensionError("reference potential is on a different grid");
  if (opts.params.mode == EstimatorMode::oracle && !q_true) {
    throw ParameterError("oracle mode needs the true potential");
  }

  JointResult out{Potential{ScalarField(dom.grid()), opts.params.s}, ReconstructionResult{ScalarField(dom.grid()), {}}, {}, {}, 0.0, {}};
  out.symmetry_defect = measured.symmetry_defect();
  if (out.symmetry_defect > opts.symmetry_tolerance) {
    throw NumericalError("measured linear part is not symmetric: defect " + std::to_string(out.symmetry_defect));
  }
  out.data_norm = dtn_operator_norm(measured, reference);

  ReconstructionParams params = opts.params;
  params.R = select_radius(opts, out.data_norm.linear);
  const Vec3 origin = dom.center();
  Estimator estimator;
  if (params.mode == EstimatorMode::born) {
    estimator = [&](const CgoFrame& f) { return estimate_q_hat_born(reference, measured, f, origin); };
  } else {
    estimator = [&](const CgoFrame& f) {
      return estimate_q_hat_oracle(dom, q1.field, *q_true, f).estimate;
    };
  }
  out.reconstruction = reconstruct_potential_diff(dom.grid(), estimator, params);
  if (opts.cutoff_margin > 0.0) {
    const ScalarField chi = cutoff_profile(dom.grid(), dom.lower(), dom.upper(), opts.cutoff_margin);
    for (std::size_t i = 0; i < chi.size(); ++i) out.reconstruction.dq[i] *= chi[i];
  }
  for (std::size_t i = 0; i < out.q_est.field.size(); ++i) {
    out.q_est.field[i] = q1.field[i] + out.reconstruction.dq[i];
  }
  out.q_est.bound_M = params.M;

  if (opts.check_kernel) {
    out.kernel = check_kernel_trivial(dom, out.q_est.field);
    if (!out.kernel.trivial) {
      throw KernelError("estimated potential has a Dirichlet eigenvalue " + std::to_string(out.kernel.smallest_eigenvalue));
    }
  }
  const DirichletSolver solver(dom, out.q_est.field);
  out.source = recover_source(solver, measured.basis(), measured.offset(), opts.source);
  return out;
}

}  // namespace invlab
