#include "invlab/cgo/frame.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace invlab {

Complex dot(const CVec3& a, const CVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Complex dot(const CVec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const CVec3& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2])); }
double norm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }
CVec3 real_to_complex(const Vec3& v) { return {v[0], v[1], v[2]}; }

namespace {

double rdot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

}  // namespace

CgoFrame make_frame(const Vec3& eta, double rho, int dim) {
  if (dim != 3) throw DimensionError("the CGO frame needs three orthogonal directions (dim = 3)");
  if (!(rho > 0.0)) throw ParameterError("frame radius rho must be positive");
  CgoFrame f;
  f.eta = eta;
  f.rho = rho;
  const double ne = norm(eta);
  Vec3 a_dir{0, 1, 0};
  Vec3 z_dir{0, 0, 1};
  if (ne > 0.0) {
    const Vec3 eh = scaled(eta, 1.0 / ne);
    for (int d = 0; d < 3; ++d) {
      Vec3 p{0, 0, 0};
      p[d] = 1.0;
      if (std::abs(eh[d]) >= 1.0 - 1e-12) continue;
      Vec3 a = p;
      for (int e = 0; e < 3; ++e) a[e] -= eh[d] * eh[e];
      a_dir = scaled(a, 1.0 / norm(a));
      break;
    }
    z_dir = cross(eh, a_dir);
  }
  f.alpha = scaled(a_dir, rho);
  f.zeta = scaled(z_dir, std::sqrt(ne * ne + rho * rho));
  for (int d = 0; d < 3; ++d) {
    f.xi1[d] = Complex(f.zeta[d], f.alpha[d] - eta[d]);
    f.xi2[d] = Complex(-f.zeta[d], -f.alpha[d] - eta[d]);
  }
  return f;
}

double frame_defect(const CgoFrame& f) {
  const double scale = std::max(rdot(f.zeta, f.zeta), 1.0);
  double d = 0.0;
  d = std::max(d, std::abs(rdot(f.alpha, f.eta)));
  d = std::max(d, std::abs(rdot(f.alpha, f.zeta)));
  d = std::max(d, std::abs(rdot(f.eta, f.zeta)));
  d = std::max(d, std::abs(rdot(f.alpha, f.alpha) - f.rho * f.rho));
  d = std::max(d, std::abs(rdot(f.zeta, f.zeta) - rdot(f.eta, f.eta) - f.rho * f.rho));
  for (int k = 0; k < 3; ++k) d = std::max(d, std::abs(f.xi1[k] + f.xi2[k] - Complex(0.0, -2.0 * f.eta[k])));
  d = std::max(d, std::abs(norm(f.xi1) * norm(f.xi1) - 2.0 * rdot(f.zeta, f.zeta)));
  d = std::max(d, std::abs(norm(f.xi2) * norm(f.xi2) - 2.0 * rdot(f.zeta, f.zeta)));
  d = std::max(d, std::abs(dot(f.xi1, f.xi1)));
  d = std::max(d, std::abs(dot(f.xi2, f.xi2)));
  return d / scale;
}

Complex lattice_null_defect(const CVec3& xi, double h) {
  Complex s = 0.0;
  for (int d = 0; d < 3; ++d) s += 2.0 * std::cosh(0.5 * h * xi[d]) - 2.0;
  return s;
}

LatticePair lattice_pair(const CgoFrame& frame, double h) {
  // Unknowns A = Re xi1 and B = Im xi1; xi2 = -A + i(-2 eta - B), so xi1 + xi2 = -2 i eta.
  Eigen::Matrix<double, 6, 1> x;
  for (int d = 0; d < 3; ++d) {
    x[d] = frame.xi1[d].real();
    x[3 + d] = frame.xi1[d].imag();
  }
  auto unpack = [&](const Eigen::Matrix<double, 6, 1>& v) {
    LatticePair p;
    for (int d = 0; d < 3; ++d) {
      p.xi1[d] = Complex(v[d], v[3 + d]);
      p.xi2[d] = Complex(-v[d], -2.0 * frame.eta[d] - v[3 + d]);
    }
    return p;
  };
  const double scale = std::max(1.0, norm(frame.xi1) * norm(frame.xi1) * h * h);
  for (int it = 0; it < 60; ++it) {
    const LatticePair p = unpack(x);
    const Complex f1 = lattice_null_defect(p.xi1, h);
    const Complex f2 = lattice_null_defect(p.xi2, h);
    Eigen::Vector4d r(f1.real(), f1.imag(), f2.real(), f2.imag());
    if (r.norm() <= 1e-15 * scale) break;
    // d/dxi_d of 2 cosh(h xi_d / 2) is h sinh(h xi_d / 2); xi1 = A + iB, xi2 = -A - iB + const.
    Eigen::Matrix<double, 4, 6> J;
    for (int d = 0; d < 3; ++d) {
      const Complex g1 = h * std::sinh(0.5 * h * p.xi1[d]);
      const Complex g2 = h * std::sinh(0.5 * h * p.xi2[d]);
      // d f1 / dA_d = g1, d f1 / dB_d = i g1; d f2 / dA_d = -g2, d f2 / dB_d = -i g2.
      J(0, d) = g1.real();
      J(1, d) = g1.imag();
      J(0, 3 + d) = -g1.imag();
      J(1, 3 + d) = g1.real();
      J(2, d) = -g2.real();
      J(3, d) = -g2.imag();
      J(2, 3 + d) = g2.imag();
      J(3, 3 + d) = -g2.real();
    }
    const Eigen::Matrix<double, 6, 1> step = J.transpose() * (J * J.transpose()).ldlt().solve(r);
    x -= step;
  }
  const LatticePair p = unpack(x);
  if (std::abs(lattice_null_defect(p.xi1, h)) > 1e-12 * scale ||
      std::abs(lattice_null_defect(p.xi2, h)) > 1e-12 * scale) {
    throw NumericalError("lattice null pair did not converge");
  }
  return p;
}

CVec3 lattice_null_vector(const CVec3& xi, double h) {
  // Gauss-Newton on the two real equations over all six real unknowns, minimum-norm steps.
  Eigen::Matrix<double, 6, 1> x;
  for (int d = 0; d < 3; ++d) {
    x[d] = xi[d].real();
    x[3 + d] = xi[d].imag();
  }
  const double scale = std::max(1.0, norm(xi) * norm(xi) * h * h);
  CVec3 v{};
  for (int it = 0; it < 60; ++it) {
    for (int d = 0; d < 3; ++d) v[d] = Complex(x[d], x[3 + d]);
    const Complex f = lattice_null_defect(v, h);
    if (std::abs(f) <= 1e-15 * scale) return v;
    Eigen::Matrix<double, 2, 6> J;
    for (int d = 0; d < 3; ++d) {
      const Complex g = h * std::sinh(0.5 * h * v[d]);
      J(0, d) = g.real();
      J(1, d) = g.imag();
      J(0, 3 + d) = -g.imag();
      J(1, 3 + d) = g.real();
    }
    const Eigen::Vector2d r(f.real(), f.imag());
    x -= J.transpose() * (J * J.transpose()).ldlt().solve(r);
  }
  for (int d = 0; d < 3; ++d) v[d] = Complex(x[d], x[3 + d]);
  if (std::abs(lattice_null_defect(v, h)) > 1e-12 * scale) throw NumericalError("lattice null vector did not converge");
  return v;
}

}  // namespace invlab
