#include "invlab/inversion/reconstruction.hpp"

#include <cmath>
#include <numbers>

#include "invlab/core/parallel.hpp"
#include "invlab/core/spectral.hpp"

namespace invlab {

void validate(const ReconstructionParams& p) {
  if (p.d != 3) throw ParameterError("reconstruction is implemented for d = 3");
  if (p.s < 0) throw ParameterError("smoothness order s must be non-negative");
  if (2 * p.s <= p.d) throw ParameterError("reconstruction needs 2s > d");
  if (!(p.M > 0.0)) throw ParameterError("potential bound M must be positive");
  if (!(p.C_log > 0.0)) throw ParameterError("C_log must be positive");
  if (p.R < 0.0) throw ParameterError("frequency cutoff R must be non-negative");
  if (p.rho < p.C1 * p.M + 1.0) {
    throw ParameterError("rho = " + std::to_string(p.rho) + " is below C1 M + 1 = " + std::to_string(p.C1 * p.M + 1.0));
  }
}

namespace {

ComplexTrace exponential_trace(const Domain& domain, const CVec3& xi, const Vec3& origin) {
  return trace_of<Complex>(domain, [&](const Vec3& x) {
    Complex e = 0.0;
    for (int d = 0; d < 3; ++d) e += xi[d] * (x[d] - origin[d]);
    return std::exp(0.5 * e);
  });
}

Complex phase_correction(const Vec3& eta, const Vec3& origin) {
  return std::polar(1.0, -(eta[0] * origin[0] + eta[1] * origin[1] + eta[2] * origin[2]));
}

}  // namespace

Complex estimate_q_hat_born(const DtnMap& reference, const DtnMap& measured, const CgoFrame& frame,
                            const Vec3& origin) {
  if (!(reference.domain() == measured.domain())) throw DimensionError("DtN maps live on different boundaries");
  const Domain& dom = reference.domain();
  const LatticePair xi = lattice_pair(frame, dom.spacing());
  const BoundaryBasis& basis = reference.basis();
  const Eigen::VectorXcd c1 = basis.coefficients(exponential_trace(dom, xi.xi1, origin));
  const Eigen::VectorXcd c2 = basis.coefficients(exponential_trace(dom, xi.xi2, origin));
  const Eigen::MatrixXd& a = reference.linear();
  const Eigen::MatrixXd& b = measured.linear();
  // c2^T (A - B) c1 without forming A - B.
  const Eigen::VectorXd r1 = a * c1.real() - b * c1.real();
  const Eigen::VectorXd i1 = a * c1.imag() - b * c1.imag();
  Eigen::VectorXcd d1(r1.size());
  d1.real() = r1;
  d1.imag() = i1;
  return phase_correction(frame.eta, origin) * (c2.transpose() * d1)(0);
}

OracleEstimate estimate_q_hat_oracle(const Domain& domain, const ScalarField& q1, const ScalarField& q2,
                                     const CgoFrame& frame, const SeriesOptions& series) {
  const LatticePair xi = lattice_pair(frame, domain.spacing());
  CgoOptions opts;
  opts.origin = domain.center();
  opts.lattice = true;
  opts.series = series;
  const CgoSolution s1 = cgo_solution(q1, xi.xi1, opts);
  const CgoSolution s2 = cgo_solution(q2, xi.xi2, opts);
  const Grid& g = domain.grid();
  const double h = domain.spacing();
  Complex pairing = 0.0, exact = 0.0;
  for (std::size_t l = 0; l < domain.interior_size(); ++l) {
    const std::size_t i = domain.interior_node(l);
    const double dq = q2[i] - q1[i];
    if (dq == 0.0) continue;
    const Vec3 x = g.position(i);
    // v1 v2 = e^{-i eta.(x - c)} (1 + psi1)(1 + psi2) exactly, since xi1 + xi2 = -2 i eta.
    const Complex plane = std::polar(1.0, -(frame.eta[0] * x[0] + frame.eta[1] * x[1] + frame.eta[2] * x[2]));
    pairing += dq * plane * (1.0 + s1.psi()[i]) * (1.0 + s2.psi()[i]);
    exact += dq * plane;
  }
  OracleEstimate out;
  out.estimate = pairing * (h * h * h);
  out.exact = exact * (h * h * h);
  out.volume_term = std::abs(out.estimate - out.exact);
  out.terms1 = s1.series.terms;
  out.terms2 = s2.series.terms;
  return out;
}

Complex estimate_q_hat_oracle_boundary(const DirichletSolver& solver_q2, const ScalarField& q1, const CgoFrame& frame,
                                       const SeriesOptions& series) {
  const Domain& dom = solver_q2.domain();
  const LatticePair xi = lattice_pair(frame, dom.spacing());
  CgoOptions opts;
  opts.origin = dom.center();
  opts.lattice = true;
  opts.series = series;
  const CgoSolution s1 = cgo_solution(q1, xi.xi1, opts);
  const CgoSolution s2 = cgo_solution(solver_q2.potential(), xi.xi2, opts);
  const ComplexTrace flux = dtn_difference_action(solver_q2, q1, s1.u());
  const ComplexTrace v2 = restrict_to_boundary(dom, s2.u());
  return phase_correction(frame.eta, dom.center()) * boundary_pairing(flux, v2);
}

double choose_truncation_radius(double epsilon, int s, int d, double C) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw ParameterError("truncation radius needs 0 < eps < 1");
  if (2 * s - d <= 0) throw ParameterError("truncation radius needs 2s - d > 0");
  if (!(C > 0.0)) throw ParameterError("truncation radius needs C > 0");
  const double p = 2 * s - d;
  auto f = [&](double r) { return p * std::log(r) + C * r + 2.0 * std::log(epsilon); };
  double lo = 1e-300, hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  // f is strictly increasing; bisect in log space near zero, then linearly.
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = lo < 1e-3 * hi ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double truncation_radius_lower_bound(double epsilon, int s, int d, double C) {
  return -2.0 * std::log(epsilon) / (C + (2 * s - d) / std::numbers::e);
}

ReconstructionResult reconstruct_potential_diff(const Grid& grid, const Estimator& estimator,
                                                const ReconstructionParams& params) {
  validate(params);
  if (!(params.R > 0.0)) throw ParameterError("reconstruction needs a positive cutoff R");
  ReconstructionResult out{ScalarField(grid), {}};
  out.R = params.R;
  out.rho = params.rho;
  out.tail_estimate = params.M * params.M / std::pow(params.R, 2 * params.s - params.d);
  std::vector<std::size_t> bins;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 k = grid.wavevector(i);
    if (norm(k) < params.R) bins.push_back(i);
  }
  std::vector<Complex> values(bins.size());
  parallel_for(bins.size(), [&](std::size_t j) { values[j] = estimator(make_frame(grid.wavevector(bins[j]), params.rho)); });

  ComplexField spec(grid);
  const double volume = std::pow(grid.length(), 3);
  const int n = grid.n();
  auto mirror = [&](std::size_t i) {
    auto ijk = grid.multi_index(i);
    for (int d = 0; d < 3; ++d) ijk[d] = (n - ijk[d]) % n;
    return grid.index(ijk);
  };
  std::vector<Complex> raw(grid.size(), Complex{});
  std::vector<char> have(grid.size(), 0);
  for (std::size_t j = 0; j < bins.size(); ++j) {
    raw[bins[j]] = values[j];
    have[bins[j]] = 1;
    out.samples.push_back({grid.wavevector(bins[j]), values[j]});
  }
  for (std::size_t i : bins) {
    const std::size_t m = mirror(i);
    // Nyquist bins mirror onto themselves with a different signed frequency; keep them real.
    const Complex partner = have[m] ? std::conj(raw[m]) : std::conj(raw[i]);
    spec[i] = 0.5 * (raw[i] + partner) / volume;
  }
  const ComplexField f = inverse_spectrum(spec);
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    max_re = std::max(max_re, std::abs(f[i].real()));
    max_im = std::max(max_im, std::abs(f[i].imag()));
    out.dq[i] = f[i].real();
  }
  out.imag_residue = max_re == 0.0 ? 0.0 : max_im / max_re;
  return out;
}

}  // namespace invlab
