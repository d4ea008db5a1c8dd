#include "invlab/experiments/noise.hpp"

#include <cmath>
#include <random>

#include <Eigen/QR>

namespace invlab {

DtnMap inject_noise(const DtnMap& clean, const NoiseModel& noise, NoiseReport* report) {
  if (!(noise.epsilon >= 0.0)) throw ParameterError("noise level must be non-negative");
  if (!(noise.epsilon < 1.0)) throw ParameterError("noise level must be below 1");
  const BoundaryBasis& basis = clean.basis();
  const Eigen::Index n = static_cast<Eigen::Index>(clean.size());
  const double eps_lin = noise.mode == NoiseMode::trace_only ? 0.0
                         : noise.mode == NoiseMode::operator_only ? noise.epsilon
                                                                  : 0.5 * noise.epsilon;
  const double eps_off = noise.epsilon - eps_lin;

  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::VectorXd up = basis.weights(0.5);  // (1 + lambda)^{1/4}

  Eigen::MatrixXd linear = clean.linear();
  if (eps_lin > 0.0) {
    // Random symmetric matrix with orthonormal random eigenvectors and a unit
    // top eigenvalue separated from the rest, so the calibrating power
    // iteration converges quickly.
    const Eigen::Index rank = std::min<Eigen::Index>(n, 64);
    Eigen::MatrixXd u(n, rank);
    for (Eigen::Index j = 0; j < rank; ++j)
      for (Eigen::Index i = 0; i < n; ++i) u(i, j) = gauss(rng);
    u = Eigen::HouseholderQR<Eigen::MatrixXd>(u).householderQ() * Eigen::MatrixXd::Identity(n, rank);
    std::uniform_real_distribution<double> spread(-0.8, 0.8);
    Eigen::VectorXd sigma(rank);
    for (Eigen::Index j = 0; j < rank; ++j) sigma(j) = j == 0 ? 1.0 : spread(rng);
    const Eigen::MatrixXd g = u * sigma.asDiagonal() * u.transpose();
    // Raise to the H^{1/2} -> H^{-1/2} scale, then calibrate in the star norm.
    const Eigen::MatrixXd m = up.asDiagonal() * g * up.asDiagonal();
    linear += (eps_lin / weighted_operator_norm(basis, m)) * m;
  }
  Eigen::VectorXcd offset = clean.offset();
  if (eps_off > 0.0) {
    Eigen::VectorXcd c(n);
    for (Eigen::Index i = 0; i < n; ++i) c(i) = Complex(gauss(rng), gauss(rng)) * up(i);
    double norm2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) norm2 += std::norm(c(i)) / (up(i) * up(i));
    offset += (eps_off / std::sqrt(norm2)) * c;
  }
  DtnMap out(clean.basis_ptr(), std::move(offset), std::move(linear));
  if (report) {
    report->target = noise.epsilon;
    report->measured = dtn_operator_norm(out, clean);
  }
  return out;
}

NoiseMode parse_noise_mode(const std::string& s) {
  if (s == "operator") return NoiseMode::operator_only;
  if (s == "trace") return NoiseMode::trace_only;
  if (s == "combined") return NoiseMode::combined;
  throw ParameterError("unknown noise mode '" + s + "' (operator | trace | combined)");
}

const char* to_string(NoiseMode m) {
  switch (m) {
    case NoiseMode::operator_only: return "operator";
    case NoiseMode::trace_only: return "trace";
    case NoiseMode::combined: return "combined";
  }
  return "?";
}

}  // namespace invlab
