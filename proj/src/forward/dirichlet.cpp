#include "invlab/forward/dirichlet.hpp"

#include <fftw3.h>

#include <Eigen/SparseLU>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

#include "invlab/core/spectral.hpp"

namespace invlab {
namespace {

fftw_plan dst_plan(int side) {
  static std::map<int, fftw_plan> cache;
  std::lock_guard lock(fftw_planner_mutex());
  if (auto it = cache.find(side); it != cache.end()) return it->second;
  const std::size_t total = static_cast<std::size_t>(side) * side * side;
  double* buf = fftw_alloc_real(total);
  const fftw_r2r_kind kinds[3] = {FFTW_RODFT00, FFTW_RODFT00, FFTW_RODFT00};
  fftw_plan p = fftw_plan_r2r_3d(side, side, side, buf, buf, kinds[0], kinds[1], kinds[2],
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache.emplace(side, p);
  return p;
}

double conj_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Complex conj_dot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

template <class T>
double norm2(const std::vector<T>& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

template <class T>
T kernel_value(const PointSource& src, double r_min, const Vec3& x) {
  double r2 = 0.0;
  for (int d = 0; d < 3; ++d) r2 += (x[d] - src.position[d]) * (x[d] - src.position[d]);
  const Complex v = src.amplitude * newtonian_kernel(std::max(std::sqrt(r2), r_min));
  if constexpr (std::is_same_v<T, double>) {
    return v.real();
  } else {
    return v;
  }
}

}  // namespace

struct DirichletSolver::Plan {
  fftw_plan dst;
};

DirichletSolver::DirichletSolver(const Domain& domain, const ScalarField& q, SolverOptions opts)
    : domain_(domain), q_(q), opts_(opts) {
  if (!(q.grid() == domain.grid())) throw DimensionError("potential and domain use different grids");
  const int s = domain.side();
  const int N = domain.intervals();
  const double h = domain.spacing();
  q_interior_.resize(domain.interior_size());
  zero_q_ = true;
  for (std::size_t l = 0; l < q_interior_.size(); ++l) {
    q_interior_[l] = q[domain.interior_node(l)];
    if (q_interior_[l] != 0.0) zero_q_ = false;
  }
  std::vector<double> mu(s);
  for (int j = 0; j < s; ++j) {
    const double sj = std::sin(0.5 * std::numbers::pi * (j + 1) / N);
    mu[j] = 4.0 * sj * sj / (h * h);
  }
  const double norm = std::pow(2.0 * N, 3);
  inv_symbol_.resize(q_interior_.size());
  std::size_t l = 0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      for (int k = 0; k < s; ++k) inv_symbol_[l++] = -1.0 / ((mu[i] + mu[j] + mu[k]) * norm);
  plan_ = std::make_unique<Plan>(Plan{dst_plan(s)});
}

DirichletSolver::~DirichletSolver() = default;

std::size_t DirichletSolver::local_index(std::size_t flat) const {
  const auto ijk = domain_.grid().multi_index(flat);
  const auto s = static_cast<std::size_t>(domain_.side());
  const int m1 = domain_.margin() + 1;
  for (int d = 0; d < 3; ++d) {
    if (ijk[d] < m1 || ijk[d] >= m1 + domain_.side()) throw GeometryError("node is not interior to the domain");
  }
  return (static_cast<std::size_t>(ijk[0] - m1) * s + static_cast<std::size_t>(ijk[1] - m1)) * s +
         static_cast<std::size_t>(ijk[2] - m1);
}

template <class T>
void DirichletSolver::apply_laplacian_inverse(std::vector<T>& x) const {
  if constexpr (std::is_same_v<T, double>) {
    fftw_execute_r2r(plan_->dst, x.data(), x.data());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] *= inv_symbol_[i];
    fftw_execute_r2r(plan_->dst, x.data(), x.data());
  } else {
    std::vector<double> re(x.size()), im(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      re[i] = x[i].real();
      im[i] = x[i].imag();
    }
    apply_laplacian_inverse(re);
    apply_laplacian_inverse(im);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = Complex(re[i], im[i]);
  }
}

template <class T>
void DirichletSolver::apply_operator(const std::vector<T>& x, std::vector<T>& y) const {
  const int s = domain_.side();
  const double inv_h2 = 1.0 / (domain_.spacing() * domain_.spacing());
  const std::size_t s1 = static_cast<std::size_t>(s);
  const std::size_t s2 = s1 * s1;
  y.assign(x.size(), T{});
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      for (int k = 0; k < s; ++k) {
        const std::size_t l = static_cast<std::size_t>(i) * s2 + static_cast<std::size_t>(j) * s1 + k;
        T acc = -6.0 * x[l];
        if (i > 0) acc += x[l - s2];
        if (i < s - 1) acc += x[l + s2];
        if (j > 0) acc += x[l - s1];
        if (j < s - 1) acc += x[l + s1];
        if (k > 0) acc += x[l - 1];
        if (k < s - 1) acc += x[l + 1];
        y[l] = inv_h2 * acc + q_interior_[l] * x[l];
      }
    }
  }
}

template <class T>
std::vector<T> DirichletSolver::solve_interior(const std::vector<T>& b) const {
  if (b.size() != q_interior_.size()) throw DimensionError("interior right-hand side has the wrong length");
  std::vector<T> x = b;
  if (zero_q_) {
    apply_laplacian_inverse(x);
    last_iterations_ = 0;
    last_residual_ = 0.0;
    return x;
  }
  const double bnorm = norm2(b);
  std::fill(x.begin(), x.end(), T{});
  if (bnorm == 0.0) {
    last_iterations_ = 0;
    last_residual_ = 0.0;
    return x;
  }
  // Right-preconditioned BiCGSTAB: A M^{-1} y = b, x = M^{-1} y.
  const std::size_t n = b.size();
  std::vector<T> r = b, rhat = b, p(n, T{}), v(n, T{}), y(n), z(n), s(n), t(n);
  T rho = 1.0, alpha = 1.0, omega = 1.0;
  double rel = 1.0;
  int it = 0;
  for (it = 1; it <= opts_.max_iterations; ++it) {
    const T rho_new = conj_dot(rhat, r);
    if (std::abs(rho_new) == 0.0) break;
    const T beta = (rho_new / rho) * (alpha / omega);
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    y = p;
    apply_laplacian_inverse(y);
    apply_operator(y, v);
    alpha = rho_new / conj_dot(rhat, v);
    for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    rel = norm2(s) / bnorm;
    if (rel <= opts_.tolerance) {
      for (std::size_t i = 0; i < n; ++i) x[i] += alpha * y[i];
      break;
    }
    z = s;
    apply_laplacian_inverse(z);
    apply_operator(z, t);
    const double tt = norm2(t);
    omega = conj_dot(t, s) / (tt * tt);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * y[i] + omega * z[i];
      r[i] = s[i] - omega * t[i];
    }
    rho = rho_new;
    rel = norm2(r) / bnorm;
    if (rel <= opts_.tolerance) break;
  }
  // Confirm with the true residual; floating-point drift can stall just above the target.
  std::vector<T> ax;
  apply_operator(x, ax);
  for (std::size_t i = 0; i < n; ++i) ax[i] = b[i] - ax[i];
  last_residual_ = norm2(ax) / bnorm;
  last_iterations_ = it;
  if (!(last_residual_ <= std::max(1e3 * opts_.tolerance, 1e-10))) {
    throw NumericalError("BiCGSTAB did not converge: relative residual " + std::to_string(last_residual_) +
                         " after " + std::to_string(it) + " iterations");
  }
  return x;
}

template <class T>
Field<T> DirichletSolver::solve(const Trace<T>& f, const Field<T>& g) const {
  if (!(f.domain() == domain_)) throw DimensionError("trace does not match the solver domain");
  if (!(g.grid() == domain_.grid())) throw DimensionError("right-hand side does not match the solver grid");
  const double inv_h2 = 1.0 / (domain_.spacing() * domain_.spacing());
  std::vector<T> b(q_interior_.size());
  for (std::size_t l = 0; l < b.size(); ++l) b[l] = g[domain_.interior_node(l)];
  const auto& nodes = domain_.boundary_nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) b[local_index(nodes[k].inner)] -= inv_h2 * f[k];
  const std::vector<T> x = solve_interior(b);
  Field<T> u(domain_.grid());
  for (std::size_t l = 0; l < x.size(); ++l) u[domain_.interior_node(l)] = x[l];
  for (std::size_t k = 0; k < nodes.size(); ++k) u[nodes[k].node] = f[k];
  return u;
}

template <class T>
Field<T> DirichletSolver::solve(const Trace<T>& f) const {
  return solve(f, Field<T>(domain_.grid()));
}

template <class T>
SourceSolution<T> DirichletSolver::solve_with_source(const PointSource& src, const Trace<T>& f,
                                                     double min_distance) const {
  validate_source(domain_, src, std::max(min_distance, 2.0 * domain_.spacing()));
  if constexpr (std::is_same_v<T, double>) {
    if (src.amplitude.imag() != 0.0) throw ParameterError("complex amplitude needs a complex solve");
  }
  const Grid& g = domain_.grid();
  const double r_min = 0.5 * domain_.spacing();
  Trace<T> data = f;
  const auto& nodes = domain_.boundary_nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) data[k] -= kernel_value<T>(src, r_min, g.position(nodes[k].node));
  Field<T> rhs(g);
  for (std::size_t l = 0; l < domain_.interior_size(); ++l) {
    const std::size_t node = domain_.interior_node(l);
    if (q_[node] != 0.0) rhs[node] = -q_[node] * kernel_value<T>(src, r_min, g.position(node));
  }
  return SourceSolution<T>{src, r_min, solve(data, rhs)};
}

template <class T>
Field<T> DirichletSolver::apply(const Field<T>& u) const {
  if (!(u.grid() == domain_.grid())) throw DimensionError("field does not match the solver grid");
  const Grid& g = domain_.grid();
  const double inv_h2 = 1.0 / (domain_.spacing() * domain_.spacing());
  const std::size_t n = static_cast<std::size_t>(g.n());
  const std::size_t strides[3] = {n * n, n, 1};
  Field<T> out(g);
  for (std::size_t l = 0; l < domain_.interior_size(); ++l) {
    const std::size_t c = domain_.interior_node(l);
    T acc = -6.0 * u[c];
    for (auto st : strides) acc += u[c - st] + u[c + st];
    out[c] = inv_h2 * acc + q_[c] * u[c];
  }
  return out;
}

template <class T>
Field<T> SourceSolution<T>::total() const {
  Field<T> out = regular;
  const Grid& g = regular.grid();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += kernel_value<T>(source, r_min, g.position(i));
  return out;
}

template <class T>
Trace<T> neumann_trace(const Domain& domain, const Field<T>& u) {
  Trace<T> out(domain);
  const double inv_h = 1.0 / domain.spacing();
  const auto& nodes = domain.boundary_nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) out[k] = inv_h * (u[nodes[k].node] - u[nodes[k].inner]);
  return out;
}

template <class T>
Trace<T> neumann_trace(const Domain& domain, const SourceSolution<T>& u) {
  Trace<T> out = neumann_trace(domain, u.regular);
  const Grid& g = domain.grid();
  const double inv_h = 1.0 / domain.spacing();
  const auto& nodes = domain.boundary_nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    out[k] += inv_h * (kernel_value<T>(u.source, u.r_min, g.position(nodes[k].node)) -
                       kernel_value<T>(u.source, u.r_min, g.position(nodes[k].inner)));
  }
  return out;
}

template <class T>
Trace<T> neumann_trace_high_order(const Domain& domain, const Field<T>& u) {
  Trace<T> out(domain);
  const std::size_t n = static_cast<std::size_t>(domain.grid().n());
  const std::size_t strides[3] = {n * n, n, 1};
  const double c[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
  const double scale = 1.0 / (12.0 * domain.spacing());
  const auto& nodes = domain.boundary_nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& b = nodes[k];
    const auto step = static_cast<std::ptrdiff_t>(strides[b.axis]) * (-b.sign);
    T d{};
    for (int j = 0; j < 5; ++j) d += c[j] * u[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(b.node) + j * step)];
    out[k] = -scale * d;
  }
  return out;
}

template <class T>
Trace<T> neumann_trace_high_order(const Domain& domain, const SourceSolution<T>& u) {
  Trace<T> out = neumann_trace_high_order(domain, u.regular);
  const Grid& g = domain.grid();
  const auto& nodes = domain.boundary_nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Vec3 x = g.position(nodes[k].node);
    Vec3 r{};
    double r2 = 0.0;
    for (int d = 0; d < 3; ++d) {
      r[d] = x[d] - u.source.position[d];
      r2 += r[d] * r[d];
    }
    const Complex v = u.source.amplitude * (nodes[k].sign * r[nodes[k].axis]) / (4.0 * std::numbers::pi * r2 * std::sqrt(r2));
    if constexpr (std::is_same_v<T, double>) {
      out[k] += v.real();
    } else {
      out[k] += v;
    }
  }
  return out;
}

template <class T>
T reciprocity_weight(const Domain& domain, const Field<T>& v, const Vec3& z, double r_min) {
  const Grid& g = domain.grid();
  const PointSource unit{1.0, z};
  const std::size_t n = static_cast<std::size_t>(g.n());
  const std::size_t strides[3] = {n * n, n, 1};
  const double h = domain.spacing();
  T acc{};
  for (std::size_t l = 0; l < domain.interior_size(); ++l) {
    const std::size_t c = domain.interior_node(l);
    double lap = -6.0 * kernel_value<double>(unit, r_min, g.position(c));
    for (auto st : strides) {
      lap += kernel_value<double>(unit, r_min, g.position(c - st)) + kernel_value<double>(unit, r_min, g.position(c + st));
    }
    acc += (lap / (h * h)) * v[c];
  }
  return acc * (h * h * h);
}

KernelReport check_kernel_trivial(const Domain& domain, const ScalarField& q, double threshold) {
  const double h = domain.spacing();
  KernelReport rep;
  rep.threshold = threshold > 0.0 ? threshold : 1e-8 / (h * h);
  DirichletSolver solver(domain, q);
  const std::size_t n = domain.interior_size();

  std::function<std::vector<double>(const std::vector<double>&)> inverse;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  if (n <= 40000) {
    const int s = domain.side();
    const double inv_h2 = 1.0 / (h * h);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(7 * n);
    const std::size_t s1 = static_cast<std::size_t>(s), s2 = s1 * s1;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        for (int k = 0; k < s; ++k) {
          const auto l = static_cast<int>(i * s2 + j * s1 + k);
          trip.emplace_back(l, l, -6.0 * inv_h2 + q[domain.interior_node(l)]);
          if (i > 0) trip.emplace_back(l, l - static_cast<int>(s2), inv_h2);
          if (i < s - 1) trip.emplace_back(l, l + static_cast<int>(s2), inv_h2);
          if (j > 0) trip.emplace_back(l, l - s, inv_h2);
          if (j < s - 1) trip.emplace_back(l, l + s, inv_h2);
          if (k > 0) trip.emplace_back(l, l - 1, inv_h2);
          if (k < s - 1) trip.emplace_back(l, l + 1, inv_h2);
        }
    Eigen::SparseMatrix<double> A(static_cast<int>(n), static_cast<int>(n));
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    lu.compute(A);
    if (lu.info() != Eigen::Success) {
      rep.smallest_eigenvalue = 0.0;
      rep.trivial = false;
      return rep;
    }
    inverse = [&](const std::vector<double>& b) {
      Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
      const Eigen::VectorXd x = lu.solve(bv);
      return std::vector<double>(x.data(), x.data() + x.size());
    };
  } else {
    inverse = [&](const std::vector<double>& b) { return solver.solve_interior(b); };
  }

  std::mt19937_64 rng(12345);
  std::normal_distribution<double> normal;
  std::vector<double> x(n), ax;
  for (auto& v : x) v = normal(rng);
  double nx = norm2(x);
  for (auto& v : x) v /= nx;
  double mu_prev = 0.0;
  for (int it = 1; it <= 1000; ++it) {
    std::vector<double> y;
    try {
      y = inverse(x);
    } catch (const NumericalError&) {
      rep.smallest_eigenvalue = mu_prev;
      rep.iterations = it;
      rep.trivial = false;
      return rep;
    }
    const double ny = norm2(y);
    if (!std::isfinite(ny)) {
      rep.smallest_eigenvalue = 0.0;
      rep.iterations = it;
      return rep;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
    solver.apply_operator(x, ax);
    const double mu = conj_dot(x, ax);
    rep.iterations = it;
    if (it > 1 && std::abs(mu - mu_prev) <= 1e-13 * std::max(std::abs(mu), 1.0)) {
      rep.smallest_eigenvalue = mu;
      rep.trivial = std::abs(mu) > rep.threshold;
      return rep;
    }
    if (std::abs(mu) <= 1e-3 * rep.threshold) {
      rep.smallest_eigenvalue = mu;
      rep.trivial = false;
      return rep;
    }
    mu_prev = mu;
  }
  throw NumericalError("kernel check: inverse iteration did not converge after 1000 iterations");
}

#define INVLAB_INSTANTIATE(T)                                                                                 \
  template Field<T> DirichletSolver::solve(const Trace<T>&) const;                                            \
  template Field<T> DirichletSolver::solve(const Trace<T>&, const Field<T>&) const;                          \
  template SourceSolution<T> DirichletSolver::solve_with_source(const PointSource&, const Trace<T>&, double) \
      const;                                                                                                  \
  template std::vector<T> DirichletSolver::solve_interior(const std::vector<T>&) const;                      \
  template Field<T> DirichletSolver::apply(const Field<T>&) const;                                            \
  template void DirichletSolver::apply_laplacian_inverse(std::vector<T>&) const;                              \
  template void DirichletSolver::apply_operator(const std::vector<T>&, std::vector<T>&) const;               \
  template struct SourceSolution<T>;                                                                          \
  template Trace<T> neumann_trace(const Domain&, const Field<T>&);                                            \
  template Trace<T> neumann_trace(const Domain&, const SourceSolution<T>&);                                   \
  template Trace<T> neumann_trace_high_order(const Domain&, const Field<T>&);                                 \
  template Trace<T> neumann_trace_high_order(const Domain&, const SourceSolution<T>&);                        \
  template T reciprocity_weight(const Domain&, const Field<T>&, const Vec3&, double);

INVLAB_INSTANTIATE(double)
INVLAB_INSTANTIATE(Complex)

}  // namespace invlab
