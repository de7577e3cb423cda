#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "boltzmann/grid.hpp"

namespace boltzmann {

/**
 * @brief Quadrature resolution for the collision kernel modes.
 *
 * `cutoff_radius` is the support radius R of the relative-velocity
 * truncation in normalized units (grids supply R = 2 * lambda * pi).
 * The radial direction uses a Gauss-Legendre rule on [0, R]; both
 * angular directions use uniform (trapezoid) rules on the circle.
 */
class KernelSpec {
 public:
  KernelSpec();  ///< cutoff for the default lambda, 64 x 64 points
  KernelSpec(double cutoff_radius, int radial_points, int angular_points);

  double cutoff_radius() const { return cutoff_radius_; }
  int radial_points() const { return radial_points_; }
  int angular_points() const { return angular_points_; }

  friend bool operator==(const KernelSpec& a, const KernelSpec& b)
  {
    return a.cutoff_radius_ == b.cutoff_radius_ &&
           a.radial_points_ == b.radial_points_ &&
           a.angular_points_ == b.angular_points_;
  }
  friend bool operator!=(const KernelSpec& a, const KernelSpec& b)
  {
    return !(a == b);
  }

 private:
  double cutoff_radius_;
  int radial_points_;
  int angular_points_;
};

/**
 * @brief Collision kernel B(cos chi, r) where chi is the deflection angle
 *        and r the relative speed.
 *
 * `angle_independent` declares that `value` ignores its first argument;
 * table construction exploits this (it factorizes the double angular
 * integral) and refuses kernels without the flag.
 */
struct KernelFunction {
  std::string name;
  bool angle_independent = false;
  std::function<double(double cos_chi, double r)> value;
};

/// Maxwell molecules in two dimensions: B = 1 / (2 pi), independent of
/// both angle and relative speed.
KernelFunction maxwell_kernel_2d();

/**
 * @brief One kernel mode by direct tensor quadrature.
 *
 * Evaluates, for integer modes l and m,
 *
 *   bhat(l, m) = int_{|q| <= R} int_{S^1} B(qhat . w, |q|)
 *                exp(-i (l + m) . q / 2 - i |q| (l - m) . w / 2) dw dq
 *
 * with Gauss-Legendre in |q| and uniform rules in both angles.  Works for
 * any kernel; cost is radial_points * angular_points^2 per call, so this
 * is the reference path, not the bulk path.
 */
Complex bhat(const Mode& l, const Mode& m, const KernelSpec& spec,
             const KernelFunction& kernel = maxwell_kernel_2d());

/// One precomputed kernel mode, keyed by (|l + m|^2, |l - m|^2).
struct TableEntry {
  std::uint32_t s2 = 0;  ///< |l + m|^2
  std::uint32_t d2 = 0;  ///< |l - m|^2
  Complex value;
};

/**
 * @brief Precomputed kernel modes for every pair the convolution visits.
 *
 * For an angle-independent kernel, bhat(l, m) depends on (l, m) only
 * through |l + m| and |l - m|, so entries are stored under the reduced
 * key (|l + m|^2, |l - m|^2).  Both angular sums then factorize into a
 * product of one-dimensional sums A(z) = dtheta * sum_j exp(-i z cos
 * phi_j), shared across keys, which is what makes building the full table
 * cheap.  Because the two factors commute, the stored value for (l, m)
 * and (m, l) is the same entry, and beta(l, -l) = bhat(l, -l) -
 * bhat(-l, -l) vanishes identically: discrete mass conservation holds to
 * the bit, not merely to quadrature accuracy.
 *
 * Tables serialize to a deterministic byte stream guarded by a checksum,
 * so runs can cache them on disk and detect corruption on reload.
 */
class KernelTable {
 public:
  static KernelTable build(const GridSpec& grid, const KernelSpec& spec,
                           const KernelFunction& kernel = maxwell_kernel_2d());

  /// Parse a cache file; throws TableChecksumError on integrity failure.
  static KernelTable load(const std::string& path);
  void save(const std::string& path) const;

  std::vector<std::uint8_t> serialize() const;
  static KernelTable deserialize(const std::vector<std::uint8_t>& bytes);

  const GridSpec& grid() const { return grid_; }
  const KernelSpec& kernel_spec() const { return spec_; }
  const std::string& kernel_name() const { return kernel_name_; }

  /// True when the reduced key of (l, m) is populated.
  bool covers(const Mode& l, const Mode& m) const;
  /// Table lookup of bhat(l, m); throws std::out_of_range when uncovered.
  Complex bhat(const Mode& l, const Mode& m) const;
  /// beta(l, m) = bhat(l, m) - bhat(m, m), the gain-minus-loss weight.
  Complex beta(const Mode& l, const Mode& m) const;

  const std::vector<TableEntry>& entries() const { return entries_; }
  std::size_t entry_count() const { return entries_.size(); }
  double max_abs() const { return max_abs_; }
  std::uint64_t checksum() const { return checksum_; }

  /**
   * Dense row of gain values for output mode k with s2 = |k|^2, indexed
   * by d2 = |l - m|^2.  Slots never visited by the convolution hold NaN.
   * Returns nullptr when s2 exceeds the gain range.
   */
  const Complex* gain_row(int s2) const;

  /// Loss values bhat(m, m), indexed like Spectrum coefficients.
  const std::vector<Complex>& loss_by_mode() const { return loss_by_mode_; }

 private:
  KernelTable(const GridSpec& grid, const KernelSpec& spec,
              std::string kernel_name);

  /// Build lookup acceleration and the checksum from `entries_`.
  void finalize();

  GridSpec grid_;
  KernelSpec spec_;
  std::string kernel_name_;
  std::vector<TableEntry> entries_;  // sorted by (s2, d2)
  double max_abs_ = 0.0;
  std::uint64_t checksum_ = 0;

  std::vector<int> gain_row_index_;      // s2 -> row id, -1 when absent
  std::vector<std::vector<Complex>> gain_rows_;
  std::vector<Complex> loss_by_mode_;
};

}  // namespace boltzmann
