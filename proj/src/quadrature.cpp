#include "boltzmann/quadrature.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace boltzmann {

namespace {

/// Evaluate P_n(x) and P_n'(x) via the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp)
{
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

GaussLegendreRule gauss_legendre(int n)
{
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: order must be >= 1, got " +
                                std::to_string(n));
  }
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }

  // Exploit the symmetry of the roots about zero: solve for the upper half
  // and mirror, so the rule is symmetric to the bit.
  const int half = (n + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double p = 0.0;
    double dp = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
      legendre_pair(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        break;
      }
    }
    legendre_pair(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // i = 1 is the largest root.
    rule.nodes[static_cast<std::size_t>(n - i)] = x;
    rule.nodes[static_cast<std::size_t>(i - 1)] = -x;
    rule.weights[static_cast<std::size_t>(n - i)] = w;
    rule.weights[static_cast<std::size_t>(i - 1)] = w;
  }
  if (n % 2 == 1) {
    // The middle root is exactly zero; the mirror pass wrote it twice.
    rule.nodes[static_cast<std::size_t>(half - 1)] = 0.0;
  }
  return rule;
}

}  // namespace boltzmann
