#include "boltzmann/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace boltzmann {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t flat_size(const GridSpec& spec)
{
  std::size_t n = 1;
  for (int d = 0; d < spec.dim(); ++d) {
    n *= static_cast<std::size_t>(spec.nodes_per_dim());
  }
  return n;
}

/// Table of twiddle factors exp(-i k x_j) for k = a - N, row-major in (a, j).
std::vector<Complex> analysis_phases(const GridSpec& spec)
{
  const int m = spec.nodes_per_dim();
  const int n = spec.half_modes();
  std::vector<Complex> w(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    const double k = a - n;
    for (int j = 0; j < m; ++j) {
      const double x = -kPi + 2.0 * kPi * j / m;
      w[static_cast<std::size_t>(a) * m + j] =
          Complex(std::cos(k * x), -std::sin(k * x));
    }
  }
  return w;
}

}  // namespace

GridSpec::GridSpec(int half_modes, double extent, double lambda, int dim)
    : dim_(dim)
    , half_modes_(half_modes)
    , extent_(extent)
    , lambda_(lambda)
{
  if (dim != 2) {
    throw std::invalid_argument("GridSpec: only dim == 2 is wired up, got " +
                                std::to_string(dim));
  }
  if (half_modes < 1) {
    throw std::invalid_argument("GridSpec: half_modes must be >= 1, got " +
                                std::to_string(half_modes));
  }
  if (!(extent > 0.0)) {
    throw std::invalid_argument("GridSpec: extent must be positive, got " +
                                std::to_string(extent));
  }
  if (!(lambda > 0.0) || lambda > 1.0) {
    throw std::invalid_argument("GridSpec: lambda must lie in (0, 1], got " +
                                std::to_string(lambda));
  }
}

std::size_t GridSpec::node_count() const
{
  return flat_size(*this);
}

double GridSpec::node_coord(int j) const
{
  return -extent_ + j * (2.0 * extent_ / nodes_per_dim());
}

double GridSpec::cell_volume() const
{
  double h = 2.0 * extent_ / nodes_per_dim();
  double vol = 1.0;
  for (int d = 0; d < dim_; ++d) {
    vol *= h;
  }
  return vol;
}

double GridSpec::frequency_scale() const
{
  return kPi / extent_;
}

double GridSpec::cutoff_radius() const
{
  return 2.0 * lambda_ * kPi;
}

double GridSpec::default_lambda()
{
  return 2.0 / (3.0 + std::numbers::sqrt2);
}

bool operator==(const GridSpec& a, const GridSpec& b)
{
  return a.dim_ == b.dim_ && a.half_modes_ == b.half_modes_ &&
         a.extent_ == b.extent_ && a.lambda_ == b.lambda_;
}

DistributionField::DistributionField(const GridSpec& spec)
    : spec_(spec)
    , values_(flat_size(spec), 0.0)
{
}

DistributionField::DistributionField(const GridSpec& spec,
                                     std::vector<double> values)
    : spec_(spec)
    , values_(std::move(values))
{
  if (values_.size() != flat_size(spec)) {
    throw std::invalid_argument(
        "DistributionField: value count does not match the grid");
  }
}

double& DistributionField::at(int j1, int j2)
{
  return values_[static_cast<std::size_t>(j1) * spec_.nodes_per_dim() + j2];
}

double DistributionField::at(int j1, int j2) const
{
  return values_[static_cast<std::size_t>(j1) * spec_.nodes_per_dim() + j2];
}

Spectrum::Spectrum(const GridSpec& spec)
    : spec_(spec)
    , coeffs_(flat_size(spec), Complex(0.0, 0.0))
{
}

Spectrum::Spectrum(const GridSpec& spec, std::vector<Complex> coeffs)
    : spec_(spec)
    , coeffs_(std::move(coeffs))
{
  if (coeffs_.size() != flat_size(spec)) {
    throw std::invalid_argument(
        "Spectrum: coefficient count does not match the grid");
  }
}

Complex& Spectrum::at(int k1, int k2)
{
  const int n = spec_.half_modes();
  return coeffs_[static_cast<std::size_t>(k1 + n) * spec_.nodes_per_dim() +
                 (k2 + n)];
}

Complex Spectrum::at(int k1, int k2) const
{
  const int n = spec_.half_modes();
  return coeffs_[static_cast<std::size_t>(k1 + n) * spec_.nodes_per_dim() +
                 (k2 + n)];
}

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* op)
{
  if (!(a == b)) {
    throw std::invalid_argument(std::string(op) +
                                ": operands live on different grids");
  }
}

}  // namespace

Spectrum& Spectrum::axpy(double a, const Spectrum& x)
{
  require_same_grid(spec_, x.spec_, "Spectrum::axpy");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i] += a * x.coeffs_[i];
  }
  return *this;
}

Spectrum& Spectrum::operator+=(const Spectrum& rhs)
{
  return axpy(1.0, rhs);
}

Spectrum& Spectrum::operator-=(const Spectrum& rhs)
{
  return axpy(-1.0, rhs);
}

Spectrum& Spectrum::operator*=(double a)
{
  for (auto& c : coeffs_) {
    c *= a;
  }
  return *this;
}

Spectrum operator+(Spectrum lhs, const Spectrum& rhs)
{
  lhs += rhs;
  return lhs;
}

Spectrum operator-(Spectrum lhs, const Spectrum& rhs)
{
  lhs -= rhs;
  return lhs;
}

Spectrum operator*(double a, Spectrum rhs)
{
  rhs *= a;
  return rhs;
}

Spectrum to_spectrum(const DistributionField& field)
{
  const GridSpec& spec = field.spec();
  const int m = spec.nodes_per_dim();
  const std::vector<Complex> w = analysis_phases(spec);
  const std::vector<double>& f = field.values();

  // Separable transform: contract axis 1, then axis 2.
  std::vector<Complex> stage(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    for (int j2 = 0; j2 < m; ++j2) {
      stage[static_cast<std::size_t>(a) * m + j2] = Complex(0.0, 0.0);
    }
    for (int j1 = 0; j1 < m; ++j1) {
      const Complex wa = w[static_cast<std::size_t>(a) * m + j1];
      const double* row = f.data() + static_cast<std::size_t>(j1) * m;
      Complex* out = stage.data() + static_cast<std::size_t>(a) * m;
      for (int j2 = 0; j2 < m; ++j2) {
        out[j2] += wa * row[j2];
      }
    }
  }

  Spectrum spectrum(spec);
  const double norm = 1.0 / (static_cast<double>(m) * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Complex acc(0.0, 0.0);
      const Complex* wrow = w.data() + static_cast<std::size_t>(b) * m;
      const Complex* srow = stage.data() + static_cast<std::size_t>(a) * m;
      for (int j2 = 0; j2 < m; ++j2) {
        acc += wrow[j2] * srow[j2];
      }
      spectrum.coeffs()[static_cast<std::size_t>(a) * m + b] = acc * norm;
    }
  }
  return spectrum;
}

namespace {

/// Synthesize nodal values; returns max |Im| relative to max |Re|.
double synthesize(const Spectrum& spectrum, std::vector<double>& out)
{
  const GridSpec& spec = spectrum.spec();
  const int m = spec.nodes_per_dim();
  const std::vector<Complex> w = analysis_phases(spec);
  const std::vector<Complex>& c = spectrum.coeffs();

  // Synthesis phases are the conjugates of the analysis phases.
  std::vector<Complex> stage(static_cast<std::size_t>(m) * m,
                             Complex(0.0, 0.0));
  for (int j1 = 0; j1 < m; ++j1) {
    for (int a = 0; a < m; ++a) {
      const Complex wa = std::conj(w[static_cast<std::size_t>(a) * m + j1]);
      const Complex* crow = c.data() + static_cast<std::size_t>(a) * m;
      Complex* srow = stage.data() + static_cast<std::size_t>(j1) * m;
      for (int b = 0; b < m; ++b) {
        srow[b] += wa * crow[b];
      }
    }
  }

  out.assign(static_cast<std::size_t>(m) * m, 0.0);
  double max_im = 0.0;
  double max_re = 0.0;
  for (int j1 = 0; j1 < m; ++j1) {
    const Complex* srow = stage.data() + static_cast<std::size_t>(j1) * m;
    for (int j2 = 0; j2 < m; ++j2) {
      Complex acc(0.0, 0.0);
      const Complex* wrow = w.data();
      for (int b = 0; b < m; ++b) {
        acc += std::conj(wrow[static_cast<std::size_t>(b) * m + j2]) * srow[b];
      }
      out[static_cast<std::size_t>(j1) * m + j2] = acc.real();
      max_im = std::max(max_im, std::abs(acc.imag()));
      max_re = std::max(max_re, std::abs(acc.real()));
    }
  }
  return max_re > 0.0 ? max_im / max_re : max_im;
}

}  // namespace

DistributionField to_field(const Spectrum& spectrum)
{
  std::vector<double> values;
  const double residue = synthesize(spectrum, values);
  if (residue > 1e-10) {
    throw std::invalid_argument(
        "to_field: spectrum synthesizes a complex field (relative imaginary "
        "residue " +
        std::to_string(residue) + "); expected Hermitian coefficients");
  }
  return DistributionField(spectrum.spec(), std::move(values));
}

double synthesis_imag_residue(const Spectrum& spectrum)
{
  std::vector<double> values;
  return synthesize(spectrum, values);
}

double hermitian_defect(const Spectrum& spectrum)
{
  const int n = spectrum.spec().half_modes();
  double max_defect = 0.0;
  double max_abs = 0.0;
  for (int k1 = -n; k1 <= n; ++k1) {
    for (int k2 = -n; k2 <= n; ++k2) {
      const Complex c = spectrum.at(k1, k2);
      max_abs = std::max(max_abs, std::abs(c));
      max_defect = std::max(
          max_defect, std::abs(spectrum.at(-k1, -k2) - std::conj(c)));
    }
  }
  return max_abs > 0.0 ? max_defect / max_abs : 0.0;
}

double field_l2_norm(const DistributionField& field)
{
  double sum = 0.0;
  for (double v : field.values()) {
    sum += v * v;
  }
  return std::sqrt(sum * field.spec().cell_volume());
}

double spectrum_l2_norm(const Spectrum& spectrum)
{
  double sum = 0.0;
  for (const Complex& c : spectrum.coeffs()) {
    sum += std::norm(c);
  }
  return std::sqrt(sum);
}

double spectrum_max_abs(const Spectrum& spectrum)
{
  double max_abs = 0.0;
  for (const Complex& c : spectrum.coeffs()) {
    max_abs = std::max(max_abs, std::abs(c));
  }
  return max_abs;
}

}  // namespace boltzmann
