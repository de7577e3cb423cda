#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace boltzmann {

using Complex = std::complex<double>;

/// A Fourier mode index k = (k1, k2), each component in [-N, N].
using Mode = std::array<int, 2>;

/**
 * @brief Uniform periodic velocity grid on [-V, V]^d.
 *
 * The physical box [-V, V]^d is mapped onto the period cell [-pi, pi)^d,
 * so one unit of normalized length equals V / pi velocity units.  Each
 * dimension carries 2N + 1 nodes,
 *
 *     v_j = -V + j * (2V / (2N + 1)),   j = 0, ..., 2N,
 *
 * which is the natural sampling for the mode set {-N, ..., N}: analysis
 * followed by synthesis is exact on this grid.  The grid is deliberately
 * node-asymmetric (no node at +V) to keep the count odd.
 *
 * `lambda` is the support fraction used by the collision kernel: the
 * relative-velocity cutoff is R = 2 * lambda * pi in normalized units.
 * The default 2 / (3 + sqrt(2)) maximizes usable support without
 * aliasing wrap-around in the quadratic term.
 */
class GridSpec {
 public:
  GridSpec(int half_modes, double extent, double lambda = default_lambda(),
           int dim = 2);

  int dim() const { return dim_; }
  int half_modes() const { return half_modes_; }
  double extent() const { return extent_; }
  double lambda() const { return lambda_; }

  /// Nodes per dimension, always odd: 2N + 1.
  int nodes_per_dim() const { return 2 * half_modes_ + 1; }
  std::size_t node_count() const;
  std::size_t mode_count() const { return node_count(); }

  /// Physical coordinate of node j along one axis.
  double node_coord(int j) const;
  /// Physical volume of one grid cell, (2V / (2N + 1))^d.
  double cell_volume() const;
  /// Normalized-to-physical frequency factor alpha = pi / V.
  double frequency_scale() const;
  /// Kernel support radius in normalized units, R = 2 * lambda * pi.
  double cutoff_radius() const;

  static double default_lambda();

  friend bool operator==(const GridSpec& a, const GridSpec& b);
  friend bool operator!=(const GridSpec& a, const GridSpec& b)
  {
    return !(a == b);
  }

 private:
  int dim_;
  int half_modes_;
  double extent_;
  double lambda_;
};

/**
 * @brief Real-valued samples of a distribution on the nodes of a GridSpec.
 *
 * Storage is row-major: value (j1, j2) lives at index j1 * M + j2 with
 * M = nodes_per_dim().
 */
class DistributionField {
 public:
  explicit DistributionField(const GridSpec& spec);
  DistributionField(const GridSpec& spec, std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double& at(int j1, int j2);
  double at(int j1, int j2) const;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

/**
 * @brief Complex Fourier coefficients over the mode set {-N, ..., N}^2.
 *
 * Storage is row-major in shifted indices: mode (k1, k2) lives at index
 * (k1 + N) * M + (k2 + N).  The coefficient convention is
 *
 *     c_k = (2 pi)^{-d} integral f(x) exp(-i k . x) dx
 *         = M^{-d} sum_j f(x_j) exp(-i k . x_j)
 *
 * in normalized coordinates (the discrete sum is exact for band-limited
 * f).  Consequently c_0 * (2V)^d is the physical mass of the field.
 */
class Spectrum {
 public:
  explicit Spectrum(const GridSpec& spec);
  Spectrum(const GridSpec& spec, std::vector<Complex> coeffs);

  const GridSpec& spec() const { return spec_; }
  std::vector<Complex>& coeffs() { return coeffs_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  Complex& at(int k1, int k2);
  Complex at(int k1, int k2) const;
  Complex at(const Mode& k) const { return at(k[0], k[1]); }

  /// In-place this += a * x.  Grids must match.
  Spectrum& axpy(double a, const Spectrum& x);

  Spectrum& operator+=(const Spectrum& rhs);
  Spectrum& operator-=(const Spectrum& rhs);
  Spectrum& operator*=(double a);

 private:
  GridSpec spec_;
  std::vector<Complex> coeffs_;
};

Spectrum operator+(Spectrum lhs, const Spectrum& rhs);
Spectrum operator-(Spectrum lhs, const Spectrum& rhs);
Spectrum operator*(double a, Spectrum rhs);

/// Forward transform: nodal samples -> Fourier coefficients.
Spectrum to_spectrum(const DistributionField& field);

/**
 * @brief Inverse transform: Fourier coefficients -> nodal samples.
 *
 * The synthesized values are complex in general; the imaginary parts are
 * discarded only after checking they are negligible (relative residue
 * below 1e-10), otherwise std::invalid_argument is thrown.  A spectrum
 * with Hermitian symmetry c_{-k} = conj(c_k) always passes.
 */
DistributionField to_field(const Spectrum& spectrum);

/// Largest |Im| of the synthesized field, relative to its largest |Re|.
double synthesis_imag_residue(const Spectrum& spectrum);

/// Max over modes of |c_{-k} - conj(c_k)|, relative to max |c_k| (0 for 0).
double hermitian_defect(const Spectrum& spectrum);

/// Discrete L2 norm of the nodal values, sqrt(sum f_j^2 * cell_volume).
double field_l2_norm(const DistributionField& field);

/// Euclidean norm of the coefficient vector.
double spectrum_l2_norm(const Spectrum& spectrum);

/// Largest coefficient magnitude.
double spectrum_max_abs(const Spectrum& spectrum);

/// Sample a callable f(v1, v2) on the grid nodes.
template <typename F>
DistributionField sample_field(const GridSpec& spec, F&& f)
{
  DistributionField field(spec);
  const int m = spec.nodes_per_dim();
  for (int j1 = 0; j1 < m; ++j1) {
    const double v1 = spec.node_coord(j1);
    for (int j2 = 0; j2 < m; ++j2) {
      field.values()[static_cast<std::size_t>(j1) * m + j2] =
          f(v1, spec.node_coord(j2));
    }
  }
  return field;
}

}  // namespace boltzmann
