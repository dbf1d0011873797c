#include "pcv/stats_util.hpp"

#include <cmath>
#include <stdexcept>

namespace pcv {

BinomialCi wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) throw std::invalid_argument("wilson_interval: n must be positive");
  double p = static_cast<double>(k) / static_cast<double>(n);
  double nn = static_cast<double>(n);
  double z2 = z * z;
  double denom = 1.0 + z2 / nn;
  double center = (p + z2 / (2.0 * nn)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return BinomialCi{center - half, center + half};
}

namespace {

// Regularized lower incomplete gamma P(a, x); series for x < a+1, continued
// fraction otherwise (Lentz).
double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
  }
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return 1.0 - std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace

double chi_square_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return 1.0 - gamma_p(dof / 2.0, x / 2.0);
}

double chi_square_statistic(const std::uint64_t* observed, const double* expected,
                            std::size_t bins) {
  double stat = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    if (!(expected[i] > 0.0)) throw std::invalid_argument("chi_square: zero expected count");
    double diff = static_cast<double>(observed[i]) - expected[i];
    stat += diff * diff / expected[i];
  }
  return stat;
}

}  // namespace pcv
