#include "invlab/cgo/solutions.hpp"

#include <cmath>

#include "invlab/core/cutoff.hpp"
#include "invlab/core/interpolate.hpp"

namespace invlab {
namespace {

ComplexField scaled_product(const ScalarField& q, const ComplexField& f, double sign) {
  ComplexField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = sign * q[i] * f[i];
  return out;
}

}  // namespace

NeumannResult neumann_solve(const ScalarField& q_ext, const XiOperator& op, const ComplexField& rhs,
                            const std::optional<Vec3>& kappa, const SeriesOptions& opts) {
  if (!(q_ext.grid() == rhs.grid())) throw DimensionError("potential and right-hand side use different grids");
  NeumannResult out{ComplexField(rhs.grid())};
  out.kappa = kappa ? *kappa : choose_bloch_shift(rhs.grid(), op);
  ComplexField term = apply_K_xi(rhs, op, out.kappa);
  out.psi = term;
  double term_norm = l2_norm(term);
  out.terms = 1;
  if (term_norm == 0.0) return out;
  int growing = 0;
  while (true) {
    ComplexField next = apply_K_xi(scaled_product(q_ext, term, -1.0), op, out.kappa);
    const double next_norm = l2_norm(next);
    out.psi += next;
    ++out.terms;
    if (next_norm == 0.0) {
      out.last_ratio = 0.0;
      out.tail = 0.0;
      break;
    }
    const double r = next_norm / term_norm;
    out.last_ratio = r;
    out.tail = r < 1.0 ? next_norm * r / (1.0 - r) : std::numeric_limits<double>::infinity();
    const double psi_norm = l2_norm(out.psi);
    if (r < opts.ratio_limit && out.tail < opts.tail_tolerance * psi_norm) break;
    growing = r >= 1.0 ? growing + 1 : 0;
    if (growing >= 3) {
      throw DivergenceError("Neumann series does not contract (term ratio " + std::to_string(r) +
                            " >= 1); increase |xi| relative to ||q||");
    }
    if (out.terms >= opts.max_terms) {
      throw DivergenceError("Neumann series not converged after " + std::to_string(opts.max_terms) +
                            " terms (ratio " + std::to_string(r) + "); increase |xi|");
    }
    term = std::move(next);
    term_norm = next_norm;
  }
  ComplexField fixed = rhs;
  fixed -= scaled_product(q_ext, out.psi, 1.0);
  fixed = apply_K_xi(fixed, op, out.kappa);
  fixed -= out.psi;
  const double pn = l2_norm(out.psi);
  out.fixed_point_residual = pn == 0.0 ? 0.0 : l2_norm(fixed) / pn;
  return out;
}

Complex CgoSolution::exponential(const Vec3& x) const {
  Complex e = 0.0;
  for (int d = 0; d < 3; ++d) e += op.xi[d] * (x[d] - origin[d]);
  return std::exp(0.5 * e);
}

ComplexField CgoSolution::u() const {
  const Grid& g = psi().grid();
  ComplexField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = exponential(g.position(i)) * (1.0 + psi()[i]);
  return out;
}

Complex CgoSolution::value_at(const Vec3& x) const { return exponential(x) * (1.0 + interpolate(psi(), x)); }

CgoSolution cgo_solution(const ScalarField& q, const CVec3& xi, const CgoOptions& opts) {
  const Grid& g = q.grid();
  if (g.dim() != 3) throw DimensionError("CGO solutions are built in three dimensions");
  CgoSolution s{XiOperator{xi, opts.lattice, g.spacing()}, {}, NeumannResult{ComplexField(g)}};
  s.origin = opts.origin ? *opts.origin : g.center();
  const ComplexField rhs = scaled_product(q, to_complex(ScalarField(g, std::vector<double>(g.size(), 1.0))), -1.0);
  s.series = neumann_solve(q, s.op, rhs, opts.kappa, opts.series);
  // (Delta + q) u = e^{xi.(x-c)/2} (L psi + q psi + q) with L the conjugated operator.
  ComplexField r = apply_xi_operator(s.psi(), s.op, s.series.kappa);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex e = s.exponential(g.position(i));
    const Complex res = r[i] + q[i] * (1.0 + s.psi()[i]);
    num += std::norm(e * res);
    den += std::norm(e * (1.0 + s.psi()[i]));
  }
  s.residual = std::sqrt(num / den);
  return s;
}

Complex WSolution::w_at(const Vec3& x) const {
  Complex w = interpolate(psi_w(), x);
  for (int d = 0; d < 3; ++d) w += v.op.xi[d] * (x[d] - v.origin[d]);
  return w;
}

ComplexField WSolution::w() const {
  const Grid& g = psi_w().grid();
  ComplexField out = psi_w();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 x = g.position(i);
    for (int d = 0; d < 3; ++d) out[i] += v.op.xi[d] * (x[d] - v.origin[d]);
  }
  return out;
}

namespace {

// Residual of Delta w + grad log(v^2).grad w on the domain and the matching scale.
struct WResidual {
  std::array<ComplexField, 3> grad_w;
  ComplexField value;
  double relative = 0.0;
};

WResidual w_equation_residual(const Domain& domain, const WSolution& s, const std::array<ComplexField, 3>& g_v) {
  const Grid& grid = s.psi_w().grid();
  const Vec3 kappa = s.series.kappa;
  WResidual out{spectral_gradient(s.psi_w(), kappa), ComplexField(grid)};
  const ComplexField lap = spectral_laplacian(s.psi_w(), kappa);
  const CVec3& xi = s.v.op.xi;
  double num = 0.0, den = 0.0;
  for (std::size_t l = 0; l < domain.interior_size(); ++l) {
    const std::size_t i = domain.interior_node(l);
    Complex r = lap[i];
    double scale = 0.0;
    for (int d = 0; d < 3; ++d) {
      const Complex coef = xi[d] + 2.0 * g_v[d][i];
      const Complex gw = xi[d] + out.grad_w[d][i];
      r += coef * gw;
      scale += std::abs(coef) * std::abs(gw);
    }
    out.value[i] = r;
    num += std::norm(r);
    den += scale * scale;
  }
  out.relative = den == 0.0 ? 0.0 : std::sqrt(num / den);
  return out;
}

}  // namespace

WSolution cgo_w_solution(const Domain& domain, const ScalarField& q, const CVec3& xi, const CgoOptions& opts) {
  const Grid& g = q.grid();
  if (!(g == domain.grid())) throw DimensionError("potential and domain use different grids");
  WSolution s{cgo_solution(q, xi, opts), NeumannResult{ComplexField(g)}};
  const Vec3 kappa = s.v.series.kappa;
  const ComplexField& pv = s.v.psi();
  for (std::size_t l = 0; l < domain.interior_size(); ++l) {
    s.psi_v_max = std::max(s.psi_v_max, std::abs(pv[domain.interior_node(l)]));
  }
  for (const auto& b : domain.boundary_nodes()) s.psi_v_max = std::max(s.psi_v_max, std::abs(pv[b.node]));
  if (s.psi_v_max >= 0.5) {
    throw NumericalError("CGO factor 1 + psi_v may vanish (max |psi_v| = " + std::to_string(s.psi_v_max) +
                         "); increase |xi|");
  }
  // g = chi grad psi_v / (1 + psi_v), chi = 1 on the closed domain, 0 near the box faces.
  const ScalarField chi = cutoff_profile(g, 0.0, g.length(), 0.5 * domain.lower());
  auto grad_v = spectral_gradient(pv, kappa);
  std::array<ComplexField, 3> gt{ComplexField(g), ComplexField(g), ComplexField(g)};
  for (int d = 0; d < 3; ++d)
    for (std::size_t i = 0; i < g.size(); ++i) gt[d][i] = chi[i] * grad_v[d][i] / (1.0 + pv[i]);

  // psi_w = K(-2 g.xi - 2 g.grad psi_w), iterated as a Neumann series.
  ComplexField rhs(g);
  for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = -2.0 * (gt[0][i] * xi[0] + gt[1][i] * xi[1] + gt[2][i] * xi[2]);
  const XiOperator op{xi, false, 0.0};
  ComplexField term = apply_K_xi(rhs, op, kappa);
  ComplexField psi = term;
  double term_norm = l2_norm(term);
  int terms = 1;
  double ratio = 0.0;
  while (term_norm > 0.0) {
    const auto grad_t = spectral_gradient(term, kappa);
    ComplexField f(g);
    for (std::size_t i = 0; i < g.size(); ++i)
      f[i] = -2.0 * (gt[0][i] * grad_t[0][i] + gt[1][i] * grad_t[1][i] + gt[2][i] * grad_t[2][i]);
    ComplexField next = apply_K_xi(f, op, kappa);
    const double nn = l2_norm(next);
    psi += next;
    ++terms;
    ratio = nn / term_norm;
    if (nn == 0.0) break;
    const double tail = ratio < 1.0 ? nn * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
    if (ratio < opts.series.ratio_limit && tail < opts.series.tail_tolerance * l2_norm(psi)) break;
    if (terms >= opts.series.max_terms || (terms > 4 && ratio >= 1.0)) {
      throw DivergenceError("w-series does not contract (ratio " + std::to_string(ratio) + "); increase |xi|");
    }
    term = std::move(next);
    term_norm = nn;
  }
  s.series.psi = std::move(psi);
  s.series.kappa = kappa;
  s.series.terms = terms;
  s.series.last_ratio = ratio;
  std::array<ComplexField, 3> g_v{ComplexField(g), ComplexField(g), ComplexField(g)};
  for (int d = 0; d < 3; ++d)
    for (std::size_t i = 0; i < g.size(); ++i) g_v[d][i] = grad_v[d][i] / (1.0 + pv[i]);
  s.residual = w_equation_residual(domain, s, g_v).relative;
  return s;
}

ComplexField phi_product(const WSolution& s) { return multiply(s.v.u(), s.w()); }

double phi_residual(const Domain& domain, const ScalarField& q, const WSolution& s) {
  const Grid& g = q.grid();
  const Vec3 kappa = s.v.series.kappa;
  const ComplexField& pv = s.v.psi();
  const auto grad_v = spectral_gradient(pv, kappa);
  std::array<ComplexField, 3> g_v{ComplexField(g), ComplexField(g), ComplexField(g)};
  for (int d = 0; d < 3; ++d)
    for (std::size_t i = 0; i < g.size(); ++i) g_v[d][i] = grad_v[d][i] / (1.0 + pv[i]);
  const WResidual rw = w_equation_residual(domain, s, g_v);
  const ComplexField lv = apply_xi_operator(pv, s.v.op, kappa);
  const ComplexField w = s.w();
  double num = 0.0, den = 0.0;
  for (std::size_t l = 0; l < domain.interior_size(); ++l) {
    const std::size_t i = domain.interior_node(l);
    const Complex e = s.v.exponential(g.position(i));
    const Complex v = e * (1.0 + pv[i]);
    const Complex rv = e * (lv[i] + q[i] * (1.0 + pv[i]));
    num += std::norm(v * rw.value[i] + w[i] * rv);
    den += std::norm(v * w[i]);
  }
  return std::sqrt(num / den);
}

ThetaPair::ThetaPair(const WSolution& s, const Vec3& z1, const Vec3& z2) : s_(&s), z_{z1, z2} {
  for (int j = 0; j < 2; ++j) {
    v_[j] = s.v.value_at(z_[j]);
    w_[j] = s.w_at(z_[j]);
    if (v_[j] == Complex{}) throw NumericalError("v vanishes at an interpolation point");
  }
  const double dist = norm(Vec3{z2[0] - z1[0], z2[1] - z1[1], z2[2] - z1[2]});
  if (std::abs(w_[0] - w_[1]) <= 1e-8 * norm(s.v.op.xi) * dist || dist == 0.0) {
    throw SeparationError("w does not separate z1 and z2; increase Re(xi) along z2 - z1");
  }
}

Complex ThetaPair::at(int i, const Vec3& x) const {
  const int j = 1 - i;
  return (s_->v.value_at(x) / v_[i]) * (s_->w_at(x) - w_[j]) / (w_[i] - w_[j]);
}

ComplexField ThetaPair::field(int i) const {
  const int j = 1 - i;
  const ComplexField u = s_->v.u();
  const ComplexField w = s_->w();
  ComplexField out(u.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = (u[k] / v_[i]) * (w[k] - w_[j]) / (w_[i] - w_[j]);
  return out;
}

SeparationReport w_separation(const WSolution& s, const Vec3& z1, const Vec3& z2, double constant, double q_norm) {
  Vec3 e{z2[0] - z1[0], z2[1] - z1[1], z2[2] - z1[2]};
  const double dist = norm(e);
  if (dist == 0.0) throw ParameterError("separation needs z1 != z2");
  for (auto& c : e) c /= dist;
  SeparationReport r;
  r.ratio = std::abs(s.w_at(z2) - s.w_at(z1)) / dist;
  for (int d = 0; d < 3; ++d) r.re_xi_along += s.v.op.xi[d].real() * e[d];
  r.predicted = r.re_xi_along - constant * q_norm;
  r.violated = r.ratio < r.predicted;
  return r;
}

}  // namespace invlab
