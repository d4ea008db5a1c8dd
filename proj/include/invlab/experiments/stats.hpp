#pragma once

#include <vector>

namespace invlab {

/// Least-squares slope of log y against log x. Non-positive entries are rejected.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// True if y[i+1] <= (1 + jitter) y[i] for every consecutive pair.
bool monotone_non_increasing(const std::vector<double>& y, double jitter);

}  // namespace invlab
