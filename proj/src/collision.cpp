#include "boltzmann/collision.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace boltzmann {

namespace {

constexpr double kPi = std::numbers::pi;

void require_compatible(const Spectrum& f, const Spectrum& g,
                        const KernelTable& table, const char* op)
{
  if (!(f.spec() == g.spec())) {
    throw std::invalid_argument(std::string(op) +
                                ": spectra live on different grids");
  }
  if (!(f.spec() == table.grid())) {
    throw std::invalid_argument(
        std::string(op) + ": kernel table was built for a different grid");
  }
}

double physical_scale(const GridSpec& spec)
{
  double s = 1.0;
  for (int d = 0; d < spec.dim(); ++d) {
    s *= spec.extent() / kPi;
  }
  return s;
}

}  // namespace

Spectrum collision_spectrum(const Spectrum& f, const Spectrum& g,
                            const KernelTable& table)
{
  require_compatible(f, g, table, "collision_spectrum");

  const GridSpec& spec = f.spec();
  const int n = spec.half_modes();
  const int mm = spec.nodes_per_dim();
  const double scale = physical_scale(spec);

  const Complex* fc = f.coeffs().data();
  const Complex* gc = g.coeffs().data();
  const Complex* loss = table.loss_by_mode().data();

  Spectrum out(spec);
  Complex* oc = out.coeffs().data();

  for (int k1 = -n; k1 <= n; ++k1) {
    const int lo1 = std::max(-n, k1 - n);
    const int hi1 = std::min(n, k1 + n);
    for (int k2 = -n; k2 <= n; ++k2) {
      const Complex* row = table.gain_row(k1 * k1 + k2 * k2);
      const int lo2 = std::max(-n, k2 - n);
      const int hi2 = std::min(n, k2 + n);

      double acc_re = 0.0;
      double acc_im = 0.0;
      for (int l1 = lo1; l1 <= hi1; ++l1) {
        const int m1 = k1 - l1;
        const int w1 = l1 - m1;
        const int d2_base = w1 * w1;
        const Complex* frow =
            fc + static_cast<std::size_t>(l1 + n) * mm + (lo2 + n);
        const Complex* grow =
            gc + static_cast<std::size_t>(m1 + n) * mm + (k2 - lo2 + n);
        const Complex* lrow =
            loss + static_cast<std::size_t>(m1 + n) * mm + (k2 - lo2 + n);
        for (int l2 = lo2; l2 <= hi2; ++l2) {
          const int w2 = 2 * l2 - k2;
          const Complex beta = row[d2_base + w2 * w2] - *lrow;
          // term = f_l * g_m * beta, expanded to stay in registers
          const double fr = frow->real();
          const double fi = frow->imag();
          const double gr = grow->real();
          const double gi = grow->imag();
          const double pr = fr * gr - fi * gi;
          const double pi = fr * gi + fi * gr;
          acc_re += pr * beta.real() - pi * beta.imag();
          acc_im += pr * beta.imag() + pi * beta.real();
          ++frow;
          --grow;
          --lrow;
        }
      }
      oc[static_cast<std::size_t>(k1 + n) * mm + (k2 + n)] =
          Complex(scale * acc_re, scale * acc_im);
    }
  }
  return out;
}

Spectrum collision_oracle(const Spectrum& f, const Spectrum& g,
                          const KernelTable& table)
{
  require_compatible(f, g, table, "collision_oracle");
  const GridSpec& spec = f.spec();
  const int n = spec.half_modes();
  if (n > 6) {
    throw std::invalid_argument(
        "collision_oracle: reference path is restricted to half_modes <= 6 "
        "(got " +
        std::to_string(n) + "); use collision_spectrum");
  }

  Spectrum out(spec);
  for (int l1 = -n; l1 <= n; ++l1) {
    for (int l2 = -n; l2 <= n; ++l2) {
      for (int m1 = -n; m1 <= n; ++m1) {
        for (int m2 = -n; m2 <= n; ++m2) {
          const int k1 = l1 + m1;
          const int k2 = l2 + m2;
          if (k1 < -n || k1 > n || k2 < -n || k2 > n) {
            continue;
          }
          const Mode l{l1, l2};
          const Mode m{m1, m2};
          out.at(k1, k2) += f.at(l1, l2) * g.at(m1, m2) * table.beta(l, m);
        }
      }
    }
  }
  const double scale = physical_scale(spec);
  for (Complex& c : out.coeffs()) {
    c *= scale;
  }
  return out;
}

Spectrum collision_micro(const Spectrum& g, const Spectrum& m,
                         const KernelTable& table)
{
  require_compatible(g, m, table, "collision_micro");

  const GridSpec& spec = g.spec();
  const int n = spec.half_modes();
  const int mm = spec.nodes_per_dim();
  const double scale = physical_scale(spec);

  // m_l g_m + g_l m_m + g_l g_m  ==  (m + g)_l g_m + g_l m_m, which costs
  // one extra complex product per pair instead of two.
  Spectrum total = m;
  total += g;

  const Complex* gc = g.coeffs().data();
  const Complex* mc = m.coeffs().data();
  const Complex* tc = total.coeffs().data();
  const Complex* loss = table.loss_by_mode().data();

  Spectrum out(spec);
  Complex* oc = out.coeffs().data();

  for (int k1 = -n; k1 <= n; ++k1) {
    const int lo1 = std::max(-n, k1 - n);
    const int hi1 = std::min(n, k1 + n);
    for (int k2 = -n; k2 <= n; ++k2) {
      const Complex* row = table.gain_row(k1 * k1 + k2 * k2);
      const int lo2 = std::max(-n, k2 - n);
      const int hi2 = std::min(n, k2 + n);

      double acc_re = 0.0;
      double acc_im = 0.0;
      for (int l1 = lo1; l1 <= hi1; ++l1) {
        const int m1 = k1 - l1;
        const int w1 = l1 - m1;
        const int d2_base = w1 * w1;
        const std::size_t l_off = static_cast<std::size_t>(l1 + n) * mm;
        const std::size_t m_off = static_cast<std::size_t>(m1 + n) * mm;
        const Complex* trow = tc + l_off + (lo2 + n);
        const Complex* grow_l = gc + l_off + (lo2 + n);
        const Complex* grow_m = gc + m_off + (k2 - lo2 + n);
        const Complex* mrow = mc + m_off + (k2 - lo2 + n);
        const Complex* lrow = loss + m_off + (k2 - lo2 + n);
        for (int l2 = lo2; l2 <= hi2; ++l2) {
          const int w2 = 2 * l2 - k2;
          const Complex beta = row[d2_base + w2 * w2] - *lrow;
          // pair value: (m + g)_l g_m + g_l m_m
          const double tr = trow->real();
          const double ti = trow->imag();
          const double gmr = grow_m->real();
          const double gmi = grow_m->imag();
          const double glr = grow_l->real();
          const double gli = grow_l->imag();
          const double mr = mrow->real();
          const double mi = mrow->imag();
          const double pr = tr * gmr - ti * gmi + glr * mr - gli * mi;
          const double pi = tr * gmi + ti * gmr + glr * mi + gli * mr;
          acc_re += pr * beta.real() - pi * beta.imag();
          acc_im += pr * beta.imag() + pi * beta.real();
          ++trow;
          ++grow_l;
          --grow_m;
          --mrow;
          --lrow;
        }
      }
      oc[static_cast<std::size_t>(k1 + n) * mm + (k2 + n)] =
          Complex(scale * acc_re, scale * acc_im);
    }
  }
  return out;
}

}  // namespace boltzmann
