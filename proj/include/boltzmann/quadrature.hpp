#pragma once

#include <vector>

namespace boltzmann {

/// Nodes (ascending) and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/**
 * @brief Compute the n-point Gauss-Legendre rule.
 *
 * Roots of P_n are found by Newton iteration on the three-term recurrence,
 * seeded with the Chebyshev-like estimate cos(pi (i - 1/4) / (n + 1/2));
 * weights follow from w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2).  Exact for
 * polynomials of degree <= 2n - 1.  Throws std::invalid_argument for n < 1.
 */
GaussLegendreRule gauss_legendre(int n);

}  // namespace boltzmann
