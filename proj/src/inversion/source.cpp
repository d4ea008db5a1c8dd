#include "invlab/inversion/source.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <gsl/gsl_multimin.h>

#include "invlab/core/interpolate.hpp"
#include "invlab/core/parallel.hpp"

namespace invlab {
namespace {

struct Minimum {
  Vec3 z{};
  double value = 0.0;
  int evaluations = 0;
};

// GSL Nelder-Mead (nmsimplex2) from one start.
using Objective = std::function<double(const Vec3&)>;

struct SearchContext {
  const Objective* f;
  int evals;
};

Minimum simplex_search(const Objective& f, const Vec3& start, double step, double tol, int max_iter) {
  SearchContext ctx{&f, 0};
  gsl_multimin_function fn;
  fn.n = 3;
  fn.params = &ctx;
  fn.f = [](const gsl_vector* x, void* p) {
    auto* c = static_cast<SearchContext*>(p);
    ++c->evals;
    return (*c->f)(Vec3{gsl_vector_get(x, 0), gsl_vector_get(x, 1), gsl_vector_get(x, 2)});
  };
  gsl_vector* x = gsl_vector_alloc(3);
  gsl_vector* steps = gsl_vector_alloc(3);
  for (int d = 0; d < 3; ++d) {
    gsl_vector_set(x, d, start[d]);
    gsl_vector_set(steps, d, step);
  }
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
  gsl_multimin_fminimizer_set(m, &fn, x, steps);
  for (int it = 0; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), tol) == GSL_SUCCESS) break;
  }
  Minimum out;
  for (int d = 0; d < 3; ++d) out.z[d] = gsl_vector_get(m->x, d);
  out.value = m->fval;
  out.evaluations = ctx.evals;
  gsl_multimin_fminimizer_free(m);
  gsl_vector_free(steps);
  gsl_vector_free(x);
  return out;
}

}  // namespace

std::vector<CVec3> probe_parameters(const std::vector<double>& scales) {
  static constexpr std::array<std::array<int, 2>, 4> pairs{{{0, 1}, {1, 2}, {2, 0}, {1, 0}}};
  std::vector<CVec3> out;
  for (double t : scales) {
    if (!(t > 0.0)) throw ParameterError("probe scales must be positive");
    for (const auto& ij : pairs) {
      CVec3 xi{0.0, 0.0, 0.0};
      xi[ij[0]] += t;
      xi[ij[1]] += Complex(0.0, t);
      out.push_back(xi);
    }
  }
  return out;
}

SourceEstimate recover_source(const DirichletSolver& solver, const BoundaryBasis& basis, const Eigen::VectorXcd& offset,
                              const SourceRecoveryOptions& opts) {
  const Domain& dom = solver.domain();
  if (!(basis.domain() == dom)) throw DimensionError("basis and solver live on different domains");
  if (offset.size() != static_cast<Eigen::Index>(basis.size())) throw DimensionError("offset does not match the basis");
  if (opts.starts_per_axis < 1) throw ParameterError("need at least one start per axis");
  const Vec3 c = dom.center();

  std::vector<ComplexField> probes;
  std::vector<Complex> data;
  auto add_probe = [&](const ComplexTrace& trace) {
    double scale = 0.0;
    for (const Complex& v : trace.values()) scale = std::max(scale, std::abs(v));
    ComplexTrace t = trace;
    t *= 1.0 / scale;
    data.push_back((offset.transpose() * basis.coefficients(t)).value());
    probes.push_back(solver.solve(t));
  };
  for (const CVec3& xi : probe_parameters(opts.scales)) {
    add_probe(trace_of<Complex>(dom, [&](const Vec3& x) {
      Complex e = 0.0;
      for (int d = 0; d < 3; ++d) e += xi[d] * (x[d] - c[d]);
      return std::exp(0.5 * e);
    }));
  }
  if (opts.constant_probe) add_probe(trace_of<Complex>(dom, [](const Vec3&) { return Complex(1.0, 0.0); }));

  double data_norm = 0.0;
  for (const Complex& p : data) data_norm += std::norm(p);
  if (data_norm == 0.0) throw NumericalError("source offset vanishes on every probe");

  // Interpolation needs two nodes on each side, so keep z two cells inside.
  const double lo = dom.lower() + 2.0 * dom.spacing();
  const double hi = dom.upper() - 2.0 * dom.spacing();
  auto fit = [&](const Vec3& z, Complex* a_out) {
    Complex num = 0.0;
    double den = 0.0;
    std::vector<Complex> v(probes.size());
    for (std::size_t m = 0; m < probes.size(); ++m) {
      v[m] = interpolate(probes[m], z);
      num += std::conj(v[m]) * data[m];
      den += std::norm(v[m]);
    }
    const Complex a = den > 0.0 ? num / den : Complex{};
    if (a_out) *a_out = a;
    double j = 0.0;
    for (std::size_t m = 0; m < probes.size(); ++m) j += std::norm(data[m] - a * v[m]);
    return j;
  };
  // Outside the admissible box: the value at the clamped point plus a quadratic
  // wall, so the simplex sees a finite, continuous objective.
  const double h = dom.spacing();
  const Objective objective = [&](const Vec3& z) {
    Vec3 zc = z;
    double out2 = 0.0;
    for (int d = 0; d < 3; ++d) {
      zc[d] = std::clamp(z[d], lo, hi);
      out2 += (z[d] - zc[d]) * (z[d] - zc[d]);
    }
    return fit(zc, nullptr) + data_norm * out2 / (h * h);
  };

  // Multi-start on a k^3 lattice of starts, run in parallel, reduced in start order.
  const int k = opts.starts_per_axis;
  const double width = hi - lo;
  std::vector<Minimum> runs(static_cast<std::size_t>(k * k * k));
  parallel_for(runs.size(), [&](std::size_t s) {
    const int i = static_cast<int>(s) / (k * k), j = static_cast<int>(s) / k % k, l = static_cast<int>(s) % k;
    const Vec3 start{lo + width * (i + 0.5) / k, lo + width * (j + 0.5) / k, lo + width * (l + 0.5) / k};
    runs[s] = simplex_search(objective, start, width / (4.0 * k), opts.tolerance * dom.width(), opts.max_iterations);
  });
  SourceEstimate best;
  double best_j = std::numeric_limits<double>::infinity();
  for (const Minimum& r : runs) {
    best.evaluations += r.evaluations;
    if (r.value < best_j) {
      best_j = r.value;
      best.z = r.z;
    }
  }
  for (int d = 0; d < 3; ++d) best.z[d] = std::clamp(best.z[d], lo, hi);
  best_j = fit(best.z, nullptr);
  fit(best.z, &best.a);
  best.residual = std::sqrt(best_j / data_norm);
  best.probes = static_cast<int>(probes.size());
  const double step = dom.spacing();
  for (int d = 0; d < 3; ++d) {
    Vec3 zp = best.z, zm = best.z;
    zp[d] = std::min(zp[d] + step, hi);
    zm[d] = std::max(zm[d] - step, lo);
    const double curv = (fit(zp, nullptr) - 2.0 * best_j + fit(zm, nullptr)) / (0.25 * (zp[d] - zm[d]) * (zp[d] - zm[d]));
    best.spread[d] = curv > 0.0 ? std::sqrt(2.0 * best_j / curv) : std::numeric_limits<double>::infinity();
  }
  return best;
}

}  // namespace invlab
