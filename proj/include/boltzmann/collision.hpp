#pragma once

#include "boltzmann/grid.hpp"
#include "boltzmann/kernel.hpp"

namespace boltzmann {

/**
 * @brief Truncated collision convolution in Fourier space.
 *
 * For every output mode k in the box,
 *
 *     Q_k = (V / pi)^d * sum_{l + m = k, l and m in the box}
 *           f_l g_m (bhat(l, m) - bhat(m, m)),
 *
 * where the prefactor converts the normalized-box operator to physical
 * velocity units.  The weight for the pair (l, -l) vanishes exactly (see
 * KernelTable), so the k = 0 output of collision_spectrum(f, f, ...) is a
 * true zero: discrete mass is conserved to the bit.
 *
 * f, g and the table must share one grid, else std::invalid_argument.
 * Cost is O(M^{2d}) pair visits with O(1) table access per pair.
 */
Spectrum collision_spectrum(const Spectrum& f, const Spectrum& g,
                            const KernelTable& table);

/**
 * @brief Literal reference implementation of the same convolution.
 *
 * Loops over all (l, m) pairs and accumulates through the table's keyed
 * beta lookup, with no acceleration structures.  Deliberately restricted
 * to half_modes <= 6 (it is quadratic in the mode count with a search per
 * pair); larger grids throw std::invalid_argument.
 */
Spectrum collision_oracle(const Spectrum& f, const Spectrum& g,
                          const KernelTable& table);

/**
 * @brief Fused right-hand side of the fluctuation equation:
 *        Q(m, g) + Q(g, m) + Q(g, g) in a single pass.
 *
 * Algebraically equal to three collision_spectrum calls summed, but with
 * one traversal of the pair set, and — crucially — the value is built
 * only from products carrying at least one factor of g, so g = 0 yields
 * an exact zero output, not a rounding-level residue.
 */
Spectrum collision_micro(const Spectrum& g, const Spectrum& m,
                         const KernelTable& table);

}  // namespace boltzmann
