#pragma once

#include <array>
#include <cstdint>

#include "boltzmann/grid.hpp"

namespace boltzmann {

/// Density, bulk velocity and temperature of a distribution.
struct Moments {
  double rho = 0.0;
  std::array<double, 2> u = {0.0, 0.0};
  double temperature = 0.0;
};

/// Signed summary of the non-physical negative part of a field.
struct NegativePart {
  double mass = 0.0;     ///< sum over f < 0 of |f| * cell_volume
  std::int64_t cells = 0;  ///< number of nodes with f < 0
};

/// One row of run diagnostics at output time t.
struct DiagnosticsRecord {
  double time = 0.0;
  Moments moments;
  double rel_entropy = 0.0;
  double l2_error_bkw = 0.0;   ///< meaningful only when has_bkw_error
  bool has_bkw_error = false;
  NegativePart negative;
};

/**
 * @brief Maxwellian density at velocity v:
 *        M(v) = rho / (2 pi T)^{d/2} * exp(-|v - u|^2 / (2 T)), d = 2.
 *
 * Throws std::domain_error unless rho > 0 and T > 0.
 */
double maxwellian_value(double rho, const std::array<double, 2>& u, double T,
                        double v1, double v2);

/**
 * @brief Exact relaxing solution with unit density and temperature:
 *
 *     f(t, v) = 1 / (2 pi S^2) * exp(-|v|^2 / (2 S))
 *               * (2 S - 1 + (1 - S) / (2 S) * |v|^2),
 *     S(t) = 1 - exp(-t / 8) / 2.
 *
 * At t = 0 this is (|v|^2 / pi) exp(-|v|^2); as t -> infinity it relaxes
 * to the unit Maxwellian.  Throws std::domain_error for t < 0.
 */
double bkw_value(double t, double v1, double v2);

/// Sample a Maxwellian on the grid nodes.
DistributionField maxwellian_field(const GridSpec& spec, double rho,
                                   const std::array<double, 2>& u, double T);

/// Sample the relaxing exact solution at time t on the grid nodes.
DistributionField bkw_field(const GridSpec& spec, double t);

/**
 * @brief Discrete moments by midpoint quadrature over the grid cells.
 *
 * Throws DegenerateMomentsError (carrying the offending density) when the
 * discrete mass is not positive.  The temperature is reported as computed
 * and may be non-positive for badly corrupted data; it is not clamped.
 */
Moments moments(const DistributionField& field);

/**
 * @brief Discrete relative entropy sum_{f_j > 0} f_j log(f_j / m_j) dV.
 *
 * Cells with f_j <= 0 contribute nothing.  Requires m_j > 0 everywhere,
 * else std::domain_error.
 */
double relative_entropy(const DistributionField& f,
                        const DistributionField& m);

/// Discrete L2 distance sqrt(sum (f_j - g_j)^2 * cell_volume).
double l2_error(const DistributionField& f, const DistributionField& g);

/// Mass and cell count of the negative part of a field.
NegativePart negative_mass(const DistributionField& field);

}  // namespace boltzmann
