#include "invlab/experiments/stats.hpp"

#include <cmath>

#include "invlab/core/errors.hpp"

namespace invlab {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DimensionError("slope fit needs two or more matching points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ParameterError("log-log fit needs positive data");
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw ParameterError("log-log fit needs distinct abscissae");
  return sxy / sxx;
}

bool monotone_non_increasing(const std::vector<double>& y, double jitter) {
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] > (1.0 + jitter) * y[i - 1]) return false;
  return true;
}

}  // namespace invlab
