#include "invlab/forward/dtn.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "invlab/core/parallel.hpp"

namespace invlab {
namespace {

// Real matrix times complex vector without materializing a complex matrix.
Eigen::VectorXcd mul(const Eigen::MatrixXd& m, const Eigen::VectorXcd& v) {
  const Eigen::VectorXd re = m * v.real();
  const Eigen::VectorXd im = m * v.imag();
  Eigen::VectorXcd out(re.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

}  // namespace

DtnMap::DtnMap(std::shared_ptr<const BoundaryBasis> basis, Eigen::VectorXcd offset, Eigen::MatrixXd linear)
    : basis_(std::move(basis)), offset_(std::move(offset)), linear_(std::move(linear)) {
  const auto n = static_cast<Eigen::Index>(basis_->size());
  if (offset_.size() != n || linear_.rows() != n || linear_.cols() != n) {
    throw DimensionError("DtN map blocks do not match the boundary basis size " + std::to_string(n));
  }
}

ComplexTrace DtnMap::apply(const ComplexTrace& f) const {
  const Eigen::VectorXcd c = basis_->coefficients(f);
  return basis_->synthesize(Eigen::VectorXcd(offset_ + mul(linear_, c)));
}

ComplexTrace DtnMap::apply_linear(const ComplexTrace& f) const {
  const Eigen::VectorXcd c = basis_->coefficients(f);
  return basis_->synthesize(mul(linear_, c));
}

double DtnMap::symmetry_defect() const {
  const double scale = linear_.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (linear_ - linear_.transpose()).cwiseAbs().maxCoeff() / scale;
}

ComplexTrace SolverDtn::apply_linear(const ComplexTrace& f) const {
  return neumann_trace(solver_->domain(), solver_->solve(f));
}

Eigen::VectorXcd source_offset(const DirichletSolver& solver, const BoundaryBasis& basis, const PointSource& src) {
  const auto sol = solver.solve_with_source(src, ComplexTrace(solver.domain()));
  return basis.coefficients(neumann_trace(solver.domain(), sol));
}

DtnMap assemble_dtn(const DirichletSolver& solver, std::shared_ptr<const BoundaryBasis> basis,
                    const std::optional<PointSource>& src) {
  if (!(basis->domain() == solver.domain())) throw DimensionError("basis and solver use different domains");
  const auto n = static_cast<Eigen::Index>(basis->size());
  Eigen::MatrixXd linear(n, n);
  parallel_for(basis->size(), [&](std::size_t k) {
    const BoundaryTrace f = basis->mode(k);
    linear.col(static_cast<Eigen::Index>(k)) = basis->coefficients(neumann_trace(solver.domain(), solver.solve(f)));
  });
  Eigen::VectorXcd offset = Eigen::VectorXcd::Zero(n);
  if (src) offset = source_offset(solver, *basis, *src);
  return DtnMap(std::move(basis), std::move(offset), std::move(linear));
}

double weighted_operator_norm(const BoundaryBasis& basis, const Eigen::MatrixXd& m) {
  // W_{-1/2} M W_{+1/2}^{-1} = D M D with D = (1 + lambda)^{-1/4}, symmetric when M is.
  const Eigen::VectorXd d = basis.weights(-0.5);
  const Eigen::MatrixXd w = d.asDiagonal() * m * d.asDiagonal();
  // Power iteration on the Gram matrix; deterministic start.
  Eigen::VectorXd x = Eigen::VectorXd::Ones(w.cols());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] *= u(rng);
  x.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 2000; ++it) {
    const Eigen::VectorXd wx = w * x;
    Eigen::VectorXd y = w.transpose() * wx;
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    const double next = x.dot(y);
    x = y / ny;
    if (it > 3 && std::abs(next - lambda) <= 1e-12 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

DtnNorm dtn_operator_norm(const DtnMap& a, const DtnMap& b) {
  if (!(a.domain() == b.domain())) throw DimensionError("DtN maps live on different boundaries");
  const BoundaryBasis& basis = a.basis();
  const Eigen::VectorXcd doff = a.offset() - b.offset();
  const Eigen::MatrixXd dl = a.linear() - b.linear();
  const Eigen::VectorXd wm = basis.weights(-0.5);
  DtnNorm out;
  out.offset = (wm.cast<Complex>().array() * doff.array()).matrix().norm();
  out.linear = weighted_operator_norm(basis, dl);
  out.star = out.offset + out.linear;
  // Ball supremum: maximize ||o + M g|| over ||g|| <= 1 in weighted coordinates by
  // fixed-point ascent from the dominant singular direction.
  const Eigen::VectorXcd o = wm.cast<Complex>().array() * doff.array();
  const Eigen::MatrixXd m = wm.asDiagonal() * dl * wm.asDiagonal();
  const Eigen::MatrixXd mt = m.transpose();
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(o.size());
  if (out.linear > 0.0) {
    g = mul(mt, o);
    if (g.norm() == 0.0) g = Eigen::VectorXcd::Ones(o.size());
    g.normalize();
    for (int it = 0; it < 200; ++it) {
      const Eigen::VectorXcd r = o + mul(m, g);
      Eigen::VectorXcd next = mul(mt, r);
      if (next.norm() == 0.0) break;
      next.normalize();
      if ((next - g).norm() < 1e-12) break;
      g = next;
    }
  }
  out.ball_sup = std::max((o + mul(m, g)).norm(), std::max(out.offset, out.linear));
  return out;
}

Complex alessandrini_pairing(const DtnOperator& a, const DtnOperator& b, const ComplexTrace& v1,
                             const ComplexTrace& v2) {
  if (!(a.domain() == b.domain())) throw DimensionError("DtN operators live on different boundaries");
  ComplexTrace d = a.apply_linear(v1);
  d -= b.apply_linear(v1);
  return boundary_pairing(d, v2);
}

Complex alessandrini_volume(const Domain& domain, const ScalarField& q1, const ScalarField& q2, const ComplexField& v1,
                            const ComplexField& v2) {
  Complex acc = 0.0;
  for (std::size_t l = 0; l < domain.interior_size(); ++l) {
    const std::size_t c = domain.interior_node(l);
    const double dq = q2[c] - q1[c];
    if (dq != 0.0) acc += dq * v1[c] * v2[c];
  }
  const double h = domain.spacing();
  return acc * (h * h * h);
}

ComplexTrace dtn_difference_action(const DirichletSolver& solver_q2, const ScalarField& q1, const ComplexField& v1) {
  const Domain& dom = solver_q2.domain();
  ComplexField rhs(dom.grid());
  const ScalarField& q2 = solver_q2.potential();
  for (std::size_t l = 0; l < dom.interior_size(); ++l) {
    const std::size_t c = dom.interior_node(l);
    rhs[c] = (q2[c] - q1[c]) * v1[c];
  }
  return neumann_trace(dom, solver_q2.solve(ComplexTrace(dom), rhs));
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");
constexpr char kMagic[4] = {'D', 'T', 'N', 'M'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw FormatError("DtN file truncated");
  return v;
}

}  // namespace

void write_dtn(const std::string& path, const DtnMap& map) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  const Domain& dom = map.domain();
  os.write(kMagic, 4);
  put(os, kVersion);
  put(os, static_cast<std::uint32_t>(map.size()));
  put(os, static_cast<std::uint32_t>(dom.grid().n()));
  put(os, static_cast<std::uint32_t>(dom.margin()));
  put(os, dom.grid().length());
  os.write(reinterpret_cast<const char*>(map.offset().data()),
           static_cast<std::streamsize>(map.offset().size() * sizeof(Complex)));
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = map.linear();
  os.write(reinterpret_cast<const char*>(rm.data()), static_cast<std::streamsize>(rm.size() * sizeof(double)));
  if (!os) throw Error("write to " + path + " failed");
}

DtnMap read_dtn(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  char magic[4];
  if (!is.read(magic, 4)) throw FormatError("DtN file truncated");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("bad DtN magic in " + path + ": expected DTNM, found '" + std::string(magic, 4) + "'");
  }
  const auto version = get<std::uint32_t>(is);
  if (version != kVersion) throw FormatError("unsupported DtN version " + std::to_string(version));
  const auto nb = get<std::uint32_t>(is);
  const auto n = get<std::uint32_t>(is);
  const auto margin = get<std::uint32_t>(is);
  const auto length = get<double>(is);
  const Domain dom(Grid(3, static_cast<int>(n), length), static_cast<int>(margin));
  if (dom.boundary_size() != nb) {
    throw FormatError("DtN header mismatch: n_boundary " + std::to_string(nb) + ", grid implies " +
                      std::to_string(dom.boundary_size()));
  }
  Eigen::VectorXcd offset(nb);
  if (!is.read(reinterpret_cast<char*>(offset.data()), static_cast<std::streamsize>(nb * sizeof(Complex)))) {
    throw FormatError("DtN file truncated in offset block");
  }
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(nb, nb);
  if (!is.read(reinterpret_cast<char*>(rm.data()), static_cast<std::streamsize>(rm.size() * sizeof(double)))) {
    throw FormatError("DtN file truncated in matrix block");
  }
  return DtnMap(std::make_shared<const BoundaryBasis>(dom), std::move(offset), Eigen::MatrixXd(rm));
}

}  // namespace invlab
