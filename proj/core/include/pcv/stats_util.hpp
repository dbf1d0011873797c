#pragma once

#include <cstdint>
#include <utility>

namespace pcv {

struct BinomialCi {
  double lo;
  double hi;
};

/// Wilson score interval for k successes out of n at normal quantile z.
BinomialCi wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.96);

/// Upper tail P(X >= x) of a chi-square with `dof` degrees of freedom,
/// via the regularized incomplete gamma function.
double chi_square_sf(double x, double dof);

/// Pearson statistic of observed counts against expected counts.
double chi_square_statistic(const std::uint64_t* observed, const double* expected,
                            std::size_t bins);

}  // namespace pcv
