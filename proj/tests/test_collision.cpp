/// @file test_collision.cpp
/// @brief Collision convolution: agreement with the literal reference
///        implementation, bilinearity, exact mass-mode zero, Hermitian
///        closure, and the fused fluctuation form with its exact fixed point.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "boltzmann/analytic.hpp"
#include "boltzmann/collision.hpp"
#include "boltzmann/grid.hpp"
#include "boltzmann/kernel.hpp"

using namespace boltzmann;

namespace {

KernelTable make_table(int n)
{
  const GridSpec grid(n, 8.0);
  return KernelTable::build(grid, KernelSpec(grid.cutoff_radius(), 64, 64));
}

Spectrum random_spectrum(const GridSpec& spec, unsigned seed)
{
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Spectrum s(spec);
  for (Complex& c : s.coeffs()) c = Complex(dist(rng), dist(rng));
  return s;
}

/// Hermitian spectra arise from real fields; build them that way.
Spectrum random_hermitian(const GridSpec& spec, unsigned seed)
{
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DistributionField field(spec);
  for (double& v : field.values()) v = dist(rng);
  return to_spectrum(field);
}

double max_diff(const Spectrum& a, const Spectrum& b)
{
  double worst = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    worst = std::max(worst, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("zero input yields an exactly zero collision output")
{
  const KernelTable table = make_table(4);
  const Spectrum f = random_spectrum(table.grid(), 1u);
  const Spectrum zero(table.grid());
  CHECK(spectrum_max_abs(collision_spectrum(f, zero, table)) == 0.0);
  CHECK(spectrum_max_abs(collision_spectrum(zero, f, table)) == 0.0);
}

TEST_CASE("collision output is bilinear in its arguments")
{
  const KernelTable table = make_table(4);
  const GridSpec& grid = table.grid();
  const Spectrum f1 = random_spectrum(grid, 11u);
  const Spectrum f2 = random_spectrum(grid, 12u);
  const Spectrum g = random_spectrum(grid, 13u);

  Spectrum combo = 2.0 * f1;
  combo.axpy(-0.5, f2);
  const Spectrum lhs = collision_spectrum(combo, g, table);
  Spectrum rhs = 2.0 * collision_spectrum(f1, g, table);
  rhs.axpy(-0.5, collision_spectrum(f2, g, table));

  const double scale = spectrum_max_abs(lhs);
  CHECK(max_diff(lhs, rhs) < 1e-13 * std::max(1.0, scale));

  const Spectrum lhs2 = collision_spectrum(g, combo, table);
  Spectrum rhs2 = 2.0 * collision_spectrum(g, f1, table);
  rhs2.axpy(-0.5, collision_spectrum(g, f2, table));
  CHECK(max_diff(lhs2, rhs2) < 1e-13 * std::max(1.0, scale));
}

TEST_CASE("accelerated convolution equals the literal reference")
{
  for (int n : {2, 3}) {
    const KernelTable table = make_table(n);
    const GridSpec& grid = table.grid();
    for (unsigned seed = 0; seed < 6; ++seed) {
      const Spectrum f = random_spectrum(grid, 100u + seed);
      const Spectrum g = random_spectrum(grid, 200u + seed);
      const Spectrum fast = collision_spectrum(f, g, table);
      const Spectrum slow = collision_oracle(f, g, table);
      const double scale = std::max(1.0, spectrum_max_abs(slow));
      CAPTURE(n);
      CAPTURE(seed);
      CHECK(max_diff(fast, slow) < 1e-12 * scale);
    }
  }
}

TEST_CASE("the literal reference refuses large grids")
{
  const KernelTable table = make_table(7);
  const Spectrum f = random_spectrum(table.grid(), 3u);
  CHECK_THROWS_AS(collision_oracle(f, f, table), std::invalid_argument);
}

TEST_CASE("mass mode of Q(f, f) is exactly zero")
{
  const KernelTable table = make_table(6);
  for (unsigned seed : {21u, 22u, 23u}) {
    const Spectrum f = random_hermitian(table.grid(), seed);
    const Spectrum q = collision_spectrum(f, f, table);
    CHECK(q.at(0, 0) == Complex(0.0, 0.0));
  }
}

TEST_CASE("Q(f, f) of a Hermitian spectrum stays Hermitian")
{
  const KernelTable table = make_table(6);
  const Spectrum f = random_hermitian(table.grid(), 31u);
  const Spectrum q = collision_spectrum(f, f, table);
  CHECK(hermitian_defect(q) < 1e-12);
}

TEST_CASE("single-pair assembly carries the physical volume factor")
{
  const KernelTable table = make_table(4);
  const GridSpec& grid = table.grid();
  // Two unit modes; the only contributions to k = (1, 1) are the ordered
  // pairs ((1,0),(0,1)) and ((0,1),(1,0)).
  Spectrum f(grid);
  f.at(1, 0) = Complex(1.0, 0.0);
  f.at(0, 1) = Complex(1.0, 0.0);
  const Spectrum q = collision_spectrum(f, f, table);

  const double vol = std::pow(grid.extent() / std::numbers::pi, 2);
  const Complex expected =
      vol * (table.beta({1, 0}, {0, 1}) + table.beta({0, 1}, {1, 0}));
  CHECK(std::abs(q.at(1, 1) - expected) < 1e-14 * std::abs(expected));
}

TEST_CASE("fused fluctuation form matches its three-call expansion")
{
  const KernelTable table = make_table(5);
  const GridSpec& grid = table.grid();
  const Spectrum m = to_spectrum(maxwellian_field(grid, 1.0, {0, 0}, 1.0));
  for (unsigned seed : {41u, 42u}) {
    Spectrum g = random_hermitian(grid, seed);
    g *= 1e-3;
    const Spectrum fused = collision_micro(g, m, table);
    Spectrum expanded = collision_spectrum(m, g, table);
    expanded += collision_spectrum(g, m, table);
    expanded += collision_spectrum(g, g, table);
    const double scale = std::max(spectrum_max_abs(expanded), 1e-30);
    CHECK(max_diff(fused, expanded) < 1e-13 * std::max(1.0, scale));
  }
}

TEST_CASE("fused fluctuation form has an exact zero at g = 0")
{
  const KernelTable table = make_table(8);
  const Spectrum m =
      to_spectrum(maxwellian_field(table.grid(), 1.0, {0, 0}, 1.0));
  const Spectrum zero(table.grid());
  CHECK(spectrum_max_abs(collision_micro(zero, m, table)) == 0.0);
}

TEST_CASE("fused fluctuation form at g = -m is exactly -Q(m, m)")
{
  const KernelTable table = make_table(5);
  const Spectrum m =
      to_spectrum(maxwellian_field(table.grid(), 1.0, {0, 0}, 1.0));
  const Spectrum qmm = collision_spectrum(m, m, table);
  Spectrum neg_m = m;
  neg_m *= -1.0;
  const Spectrum micro = collision_micro(neg_m, m, table);
  for (std::size_t i = 0; i < micro.coeffs().size(); ++i) {
    CHECK(micro.coeffs()[i] == -qmm.coeffs()[i]);
  }
}

TEST_CASE("equilibrium defect shrinks spectrally with resolution")
{
  const Spectrum q4 = [&] {
    const KernelTable t = make_table(4);
    const Spectrum m =
        to_spectrum(maxwellian_field(t.grid(), 1.0, {0, 0}, 1.0));
    return collision_spectrum(m, m, t);
  }();
  const Spectrum q8 = [&] {
    const KernelTable t = make_table(8);
    const Spectrum m =
        to_spectrum(maxwellian_field(t.grid(), 1.0, {0, 0}, 1.0));
    return collision_spectrum(m, m, t);
  }();
  CHECK(spectrum_l2_norm(q8) < 0.1 * spectrum_l2_norm(q4));
}

TEST_CASE("operands must share one grid")
{
  const KernelTable table = make_table(3);
  const Spectrum ok = random_spectrum(table.grid(), 5u);
  const Spectrum other = random_spectrum(GridSpec(4, 8.0), 6u);
  CHECK_THROWS_AS(collision_spectrum(ok, other, table),
                  std::invalid_argument);
  CHECK_THROWS_AS(collision_spectrum(other, ok, table),
                  std::invalid_argument);
  CHECK_THROWS_AS(collision_spectrum(other, other, table),
                  std::invalid_argument);
  CHECK_THROWS_AS(collision_micro(other, other, table),
                  std::invalid_argument);
}
