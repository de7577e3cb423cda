#include "boltzmann/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "boltzmann/errors.hpp"

namespace boltzmann {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_grid(const DistributionField& a, const DistributionField& b,
                       const char* op)
{
  if (!(a.spec() == b.spec())) {
    throw std::invalid_argument(std::string(op) +
                                ": fields live on different grids");
  }
}

}  // namespace

double maxwellian_value(double rho, const std::array<double, 2>& u, double T,
                        double v1, double v2)
{
  if (!(rho > 0.0)) {
    throw std::domain_error("maxwellian_value: rho must be positive, got " +
                            std::to_string(rho));
  }
  if (!(T > 0.0)) {
    throw std::domain_error(
        "maxwellian_value: temperature must be positive, got " +
        std::to_string(T));
  }
  const double d1 = v1 - u[0];
  const double d2 = v2 - u[1];
  return rho / (2.0 * kPi * T) * std::exp(-(d1 * d1 + d2 * d2) / (2.0 * T));
}

double bkw_value(double t, double v1, double v2)
{
  if (t < 0.0) {
    throw std::domain_error("bkw_value: time must be non-negative, got " +
                            std::to_string(t));
  }
  const double s = 1.0 - 0.5 * std::exp(-t / 8.0);
  const double r2 = v1 * v1 + v2 * v2;
  return 1.0 / (2.0 * kPi * s * s) * std::exp(-r2 / (2.0 * s)) *
         (2.0 * s - 1.0 + (1.0 - s) / (2.0 * s) * r2);
}

DistributionField maxwellian_field(const GridSpec& spec, double rho,
                                   const std::array<double, 2>& u, double T)
{
  return sample_field(spec, [&](double v1, double v2) {
    return maxwellian_value(rho, u, T, v1, v2);
  });
}

DistributionField bkw_field(const GridSpec& spec, double t)
{
  return sample_field(
      spec, [&](double v1, double v2) { return bkw_value(t, v1, v2); });
}

Moments moments(const DistributionField& field)
{
  const GridSpec& spec = field.spec();
  const int m = spec.nodes_per_dim();
  const double dv = spec.cell_volume();

  double mass = 0.0;
  double mom1 = 0.0;
  double mom2 = 0.0;
  for (int j1 = 0; j1 < m; ++j1) {
    const double v1 = spec.node_coord(j1);
    for (int j2 = 0; j2 < m; ++j2) {
      const double f = field.at(j1, j2);
      mass += f;
      mom1 += f * v1;
      mom2 += f * spec.node_coord(j2);
    }
  }
  mass *= dv;
  mom1 *= dv;
  mom2 *= dv;

  if (!(mass > 0.0)) {
    throw DegenerateMomentsError(
        mass, "moments: non-positive discrete mass " + std::to_string(mass));
  }

  Moments out;
  out.rho = mass;
  out.u = {mom1 / mass, mom2 / mass};

  double energy = 0.0;
  for (int j1 = 0; j1 < m; ++j1) {
    const double d1 = spec.node_coord(j1) - out.u[0];
    for (int j2 = 0; j2 < m; ++j2) {
      const double d2 = spec.node_coord(j2) - out.u[1];
      energy += field.at(j1, j2) * (d1 * d1 + d2 * d2);
    }
  }
  energy *= dv;
  out.temperature = energy / (spec.dim() * mass);
  return out;
}

double relative_entropy(const DistributionField& f, const DistributionField& m)
{
  require_same_grid(f, m, "relative_entropy");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    const double mi = m.values()[i];
    if (!(mi > 0.0)) {
      throw std::domain_error(
          "relative_entropy: reference field must be strictly positive");
    }
    const double fi = f.values()[i];
    if (fi > 0.0) {
      sum += fi * std::log(fi / mi);
    }
  }
  return sum * f.spec().cell_volume();
}

double l2_error(const DistributionField& f, const DistributionField& g)
{
  require_same_grid(f, g, "l2_error");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    const double d = f.values()[i] - g.values()[i];
    sum += d * d;
  }
  return std::sqrt(sum * f.spec().cell_volume());
}

NegativePart negative_mass(const DistributionField& field)
{
  NegativePart out;
  for (double v : field.values()) {
    if (v < 0.0) {
      out.mass -= v;
      ++out.cells;
    }
  }
  out.mass *= field.spec().cell_volume();
  return out;
}

}  // namespace boltzmann
