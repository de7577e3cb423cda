#include "boltzmann/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "boltzmann/errors.hpp"
#include "boltzmann/quadrature.hpp"

namespace boltzmann {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr char kMagic[4] = {'B', 'L', 'T', 'K'};
constexpr std::uint32_t kFormatVersion = 1;

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t size)
{
  std::uint64_t h = 14695981039346656037ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 1099511628211ULL;
  }
  return h;
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v)
{
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void append_f64(std::vector<std::uint8_t>& out, double v)
{
  std::uint64_t bits = 0;
  std::memcpy(&bits, &v, sizeof(bits));
  append_u64(out, bits);
}

class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size)
      : data_(data)
      , size_(size)
  {
  }

  std::uint32_t read_u32() { return static_cast<std::uint32_t>(read(4)); }
  std::uint64_t read_u64() { return read(8); }

  double read_f64()
  {
    const std::uint64_t bits = read(8);
    double v = 0.0;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  void read_bytes(void* dst, std::size_t n)
  {
    require(n);
    std::memcpy(dst, data_ + pos_, n);
    pos_ += n;
  }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

 private:
  std::uint64_t read(int n)
  {
    require(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  void require(std::size_t n) const
  {
    if (size_ - pos_ < n) {
      throw std::invalid_argument("kernel table: truncated byte stream");
    }
  }

  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

int squared_norm(int a, int b)
{
  return a * a + b * b;
}

}  // namespace

KernelSpec::KernelSpec()
    : KernelSpec(2.0 * GridSpec::default_lambda() * kPi, 64, 64)
{
}

KernelSpec::KernelSpec(double cutoff_radius, int radial_points,
                       int angular_points)
    : cutoff_radius_(cutoff_radius)
    , radial_points_(radial_points)
    , angular_points_(angular_points)
{
  if (!(cutoff_radius > 0.0)) {
    throw std::invalid_argument(
        "KernelSpec: cutoff radius must be positive, got " +
        std::to_string(cutoff_radius));
  }
  if (radial_points < 16 || angular_points < 16) {
    throw std::invalid_argument(
        "KernelSpec: quadrature needs at least 16 points per direction, got " +
        std::to_string(radial_points) + " x " + std::to_string(angular_points));
  }
}

KernelFunction maxwell_kernel_2d()
{
  KernelFunction k;
  k.name = "maxwell-2d";
  k.angle_independent = true;
  k.value = [](double, double) { return 1.0 / (2.0 * kPi); };
  return k;
}

Complex bhat(const Mode& l, const Mode& m, const KernelSpec& spec,
             const KernelFunction& kernel)
{
  const int u1 = l[0] + m[0];
  const int u2 = l[1] + m[1];
  const int w1 = l[0] - m[0];
  const int w2 = l[1] - m[1];

  const GaussLegendreRule gl = gauss_legendre(spec.radial_points());
  const double radius = spec.cutoff_radius();
  const int nth = spec.angular_points();
  const double dtheta = 2.0 * kPi / nth;

  std::vector<double> cos_t(nth), sin_t(nth);
  for (int j = 0; j < nth; ++j) {
    cos_t[j] = std::cos(dtheta * j);
    sin_t[j] = std::sin(dtheta * j);
  }

  double acc_re = 0.0;
  double acc_im = 0.0;
  for (int i = 0; i < spec.radial_points(); ++i) {
    const double rho = radius * (gl.nodes[i] + 1.0) / 2.0;
    const double rw = gl.weights[i] * radius / 2.0 * rho;
    double ring_re = 0.0;
    double ring_im = 0.0;
    for (int j = 0; j < nth; ++j) {
      // q-direction angle phi_j; scattering direction angle theta_h.
      const double phase_q = rho / 2.0 * (u1 * cos_t[j] + u2 * sin_t[j]);
      for (int h = 0; h < nth; ++h) {
        const double phase =
            phase_q + rho / 2.0 * (w1 * cos_t[h] + w2 * sin_t[h]);
        const double cos_chi = cos_t[j] * cos_t[h] + sin_t[j] * sin_t[h];
        const double b = kernel.value(cos_chi, rho);
        ring_re += b * std::cos(phase);
        ring_im -= b * std::sin(phase);
      }
    }
    acc_re += rw * ring_re;
    acc_im += rw * ring_im;
  }
  const double measure = dtheta * dtheta;
  return Complex(acc_re * measure, acc_im * measure);
}

KernelTable::KernelTable(const GridSpec& grid, const KernelSpec& spec,
                         std::string kernel_name)
    : grid_(grid)
    , spec_(spec)
    , kernel_name_(std::move(kernel_name))
{
}

KernelTable KernelTable::build(const GridSpec& grid, const KernelSpec& spec,
                               const KernelFunction& kernel)
{
  if (!kernel.angle_independent) {
    throw std::invalid_argument(
        "KernelTable::build: table construction factorizes the angular "
        "integrals and supports only angle-independent kernels; use bhat() "
        "for kernel '" +
        kernel.name + "'");
  }
  if (!kernel.value) {
    throw std::invalid_argument("KernelTable::build: kernel has no value fn");
  }

  KernelTable table(grid, spec, kernel.name);

  const int n = grid.half_modes();
  const int key_max = 8 * n * n;  // bound for both |l - m|^2 and 4 |m|^2

  // Mark every reduced key the convolution can query: gain keys
  // (|k|^2, |l - m|^2) over valid pairs l + m = k, and loss keys
  // (4 |m|^2, 0).
  std::map<int, std::vector<std::uint8_t>> marks;
  for (int k1 = -n; k1 <= n; ++k1) {
    for (int k2 = -n; k2 <= n; ++k2) {
      auto& row = marks[squared_norm(k1, k2)];
      if (row.empty()) {
        row.assign(static_cast<std::size_t>(key_max) + 1, 0);
      }
      const int lo1 = std::max(-n, k1 - n);
      const int hi1 = std::min(n, k1 + n);
      const int lo2 = std::max(-n, k2 - n);
      const int hi2 = std::min(n, k2 + n);
      for (int l1 = lo1; l1 <= hi1; ++l1) {
        const int w1 = 2 * l1 - k1;
        for (int l2 = lo2; l2 <= hi2; ++l2) {
          const int w2 = 2 * l2 - k2;
          row[static_cast<std::size_t>(squared_norm(w1, w2))] = 1;
        }
      }
    }
  }
  for (int m1 = -n; m1 <= n; ++m1) {
    for (int m2 = -n; m2 <= n; ++m2) {
      auto& row = marks[4 * squared_norm(m1, m2)];
      if (row.empty()) {
        row.assign(static_cast<std::size_t>(key_max) + 1, 0);
      }
      row[0] = 1;
    }
  }

  // Radial rule on [0, R], with the kernel magnitude folded into the
  // weights (angle-independent, so B depends on rho alone).
  const GaussLegendreRule gl = gauss_legendre(spec.radial_points());
  const int nr = spec.radial_points();
  const double radius = spec.cutoff_radius();
  std::vector<double> rho(nr), rw(nr);
  for (int i = 0; i < nr; ++i) {
    rho[i] = radius * (gl.nodes[i] + 1.0) / 2.0;
    rw[i] = gl.weights[i] * radius / 2.0 * rho[i] * kernel.value(1.0, rho[i]);
  }

  // Shared angular factors A(q2, i) = dtheta * sum_j exp(-i z cos phi_j)
  // with z = sqrt(q2) * rho_i / 2, for every squared norm q2 in use.
  std::vector<std::uint8_t> q2_used(static_cast<std::size_t>(key_max) + 1, 0);
  for (const auto& [s2, row] : marks) {
    q2_used[static_cast<std::size_t>(s2)] = 1;
    for (int d2 = 0; d2 <= key_max; ++d2) {
      if (row[static_cast<std::size_t>(d2)]) {
        q2_used[static_cast<std::size_t>(d2)] = 1;
      }
    }
  }

  const int nth = spec.angular_points();
  const double dtheta = 2.0 * kPi / nth;
  std::vector<double> cos_phi(nth);
  for (int j = 0; j < nth; ++j) {
    cos_phi[j] = std::cos(dtheta * j);
  }

  std::vector<Complex> factors(
      (static_cast<std::size_t>(key_max) + 1) * static_cast<std::size_t>(nr),
      Complex(0.0, 0.0));
  for (int q2 = 0; q2 <= key_max; ++q2) {
    if (!q2_used[static_cast<std::size_t>(q2)]) {
      continue;
    }
    const double half_freq = std::sqrt(static_cast<double>(q2)) / 2.0;
    for (int i = 0; i < nr; ++i) {
      const double z = half_freq * rho[i];
      double re = 0.0;
      double im = 0.0;
      for (int j = 0; j < nth; ++j) {
        const double arg = z * cos_phi[j];
        re += std::cos(arg);
        im -= std::sin(arg);
      }
      factors[static_cast<std::size_t>(q2) * nr + i] =
          Complex(re * dtheta, im * dtheta);
    }
  }

  // Assemble entries in deterministic (s2, d2) order.
  for (const auto& [s2, row] : marks) {
    const Complex* fs = factors.data() + static_cast<std::size_t>(s2) * nr;
    for (int d2 = 0; d2 <= key_max; ++d2) {
      if (!row[static_cast<std::size_t>(d2)]) {
        continue;
      }
      const Complex* fd = factors.data() + static_cast<std::size_t>(d2) * nr;
      double re = 0.0;
      double im = 0.0;
      for (int i = 0; i < nr; ++i) {
        const double ar = fs[i].real();
        const double ai = fs[i].imag();
        const double br = fd[i].real();
        const double bi = fd[i].imag();
        re += rw[i] * (ar * br - ai * bi);
        im += rw[i] * (ar * bi + ai * br);
      }
      table.entries_.push_back(TableEntry{static_cast<std::uint32_t>(s2),
                                          static_cast<std::uint32_t>(d2),
                                          Complex(re, im)});
    }
  }

  table.finalize();
  return table;
}

void KernelTable::finalize()
{
  const int n = grid_.half_modes();
  const int m = grid_.nodes_per_dim();
  const int gain_s2_max = 2 * n * n;
  const int key_max = 8 * n * n;

  max_abs_ = 0.0;
  for (const TableEntry& e : entries_) {
    max_abs_ = std::max(max_abs_, std::abs(e.value));
  }

  // Dense gain rows for every populated s2 in the output-mode range.
  gain_row_index_.assign(static_cast<std::size_t>(gain_s2_max) + 1, -1);
  gain_rows_.clear();
  const Complex nan(std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN());
  for (const TableEntry& e : entries_) {
    if (e.s2 > static_cast<std::uint32_t>(gain_s2_max)) {
      continue;
    }
    int& slot = gain_row_index_[e.s2];
    if (slot < 0) {
      slot = static_cast<int>(gain_rows_.size());
      gain_rows_.emplace_back(static_cast<std::size_t>(key_max) + 1, nan);
    }
    gain_rows_[static_cast<std::size_t>(slot)][e.d2] = e.value;
  }

  // Loss values bhat(m, m) for every mode, laid out like a Spectrum.
  loss_by_mode_.assign(static_cast<std::size_t>(m) * m, Complex(0.0, 0.0));
  for (int m1 = -n; m1 <= n; ++m1) {
    for (int m2 = -n; m2 <= n; ++m2) {
      const Mode mm{m1, m2};
      loss_by_mode_[static_cast<std::size_t>(m1 + n) * m + (m2 + n)] =
          bhat(mm, mm);
    }
  }

  const std::vector<std::uint8_t> bytes = serialize();
  // serialize() appends the checksum of the payload as the final word;
  // recover it rather than hashing twice.
  ByteReader tail(bytes.data() + bytes.size() - 8, 8);
  checksum_ = tail.read_u64();
}

bool KernelTable::covers(const Mode& l, const Mode& m) const
{
  const std::uint32_t s2 = static_cast<std::uint32_t>(
      squared_norm(l[0] + m[0], l[1] + m[1]));
  const std::uint32_t d2 = static_cast<std::uint32_t>(
      squared_norm(l[0] - m[0], l[1] - m[1]));
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), std::make_pair(s2, d2),
      [](const TableEntry& e, const std::pair<std::uint32_t, std::uint32_t>& k) {
        return std::make_pair(e.s2, e.d2) < k;
      });
  return it != entries_.end() && it->s2 == s2 && it->d2 == d2;
}

Complex KernelTable::bhat(const Mode& l, const Mode& m) const
{
  const std::uint32_t s2 = static_cast<std::uint32_t>(
      squared_norm(l[0] + m[0], l[1] + m[1]));
  const std::uint32_t d2 = static_cast<std::uint32_t>(
      squared_norm(l[0] - m[0], l[1] - m[1]));
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), std::make_pair(s2, d2),
      [](const TableEntry& e, const std::pair<std::uint32_t, std::uint32_t>& k) {
        return std::make_pair(e.s2, e.d2) < k;
      });
  if (it == entries_.end() || it->s2 != s2 || it->d2 != d2) {
    throw std::out_of_range(
        "KernelTable::bhat: mode pair ((" + std::to_string(l[0]) + "," +
        std::to_string(l[1]) + "),(" + std::to_string(m[0]) + "," +
        std::to_string(m[1]) + ")) is not covered by this table");
  }
  return it->value;
}

Complex KernelTable::beta(const Mode& l, const Mode& m) const
{
  return bhat(l, m) - bhat(m, m);
}

const Complex* KernelTable::gain_row(int s2) const
{
  if (s2 < 0 || s2 >= static_cast<int>(gain_row_index_.size())) {
    return nullptr;
  }
  const int slot = gain_row_index_[static_cast<std::size_t>(s2)];
  return slot < 0 ? nullptr : gain_rows_[static_cast<std::size_t>(slot)].data();
}

std::vector<std::uint8_t> KernelTable::serialize() const
{
  std::vector<std::uint8_t> out;
  out.reserve(64 + entries_.size() * 24);
  out.insert(out.end(), kMagic, kMagic + 4);
  append_u32(out, kFormatVersion);
  append_u32(out, static_cast<std::uint32_t>(grid_.dim()));
  append_u32(out, static_cast<std::uint32_t>(grid_.half_modes()));
  append_f64(out, grid_.extent());
  append_f64(out, grid_.lambda());
  append_f64(out, spec_.cutoff_radius());
  append_u32(out, static_cast<std::uint32_t>(spec_.radial_points()));
  append_u32(out, static_cast<std::uint32_t>(spec_.angular_points()));
  append_u32(out, static_cast<std::uint32_t>(kernel_name_.size()));
  out.insert(out.end(), kernel_name_.begin(), kernel_name_.end());
  append_u64(out, entries_.size());
  for (const TableEntry& e : entries_) {
    append_u32(out, e.s2);
    append_u32(out, e.d2);
    append_f64(out, e.value.real());
    append_f64(out, e.value.imag());
  }
  append_u64(out, fnv1a(out.data(), out.size()));
  return out;
}

KernelTable KernelTable::deserialize(const std::vector<std::uint8_t>& bytes)
{
  if (bytes.size() < 12) {
    throw std::invalid_argument("kernel table: byte stream too short");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw std::invalid_argument("kernel table: bad magic, not a table file");
  }

  // Verify end-to-end integrity before trusting any field.
  const std::size_t payload = bytes.size() - 8;
  ByteReader tail(bytes.data() + payload, 8);
  const std::uint64_t stored = tail.read_u64();
  const std::uint64_t actual = fnv1a(bytes.data(), payload);
  if (stored != actual) {
    throw TableChecksumError(
        "kernel table: checksum mismatch (stored " + std::to_string(stored) +
        ", computed " + std::to_string(actual) + ")");
  }

  ByteReader r(bytes.data(), payload);
  char magic[4];
  r.read_bytes(magic, 4);
  const std::uint32_t version = r.read_u32();
  if (version != kFormatVersion) {
    throw std::invalid_argument("kernel table: unsupported format version " +
                                std::to_string(version));
  }
  const int dim = static_cast<int>(r.read_u32());
  const int half_modes = static_cast<int>(r.read_u32());
  const double extent = r.read_f64();
  const double lambda = r.read_f64();
  const double cutoff = r.read_f64();
  const int nr = static_cast<int>(r.read_u32());
  const int nth = static_cast<int>(r.read_u32());
  const std::uint32_t name_len = r.read_u32();
  std::string name(name_len, '\0');
  if (name_len > 0) {
    r.read_bytes(name.data(), name_len);
  }

  KernelTable table(GridSpec(half_modes, extent, lambda, dim),
                    KernelSpec(cutoff, nr, nth), std::move(name));
  const std::uint64_t count = r.read_u64();
  if (r.remaining() != count * 24) {
    throw std::invalid_argument("kernel table: entry block has wrong size");
  }
  table.entries_.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    TableEntry e;
    e.s2 = r.read_u32();
    e.d2 = r.read_u32();
    const double re = r.read_f64();
    const double im = r.read_f64();
    e.value = Complex(re, im);
    table.entries_.push_back(e);
  }
  if (!std::is_sorted(table.entries_.begin(), table.entries_.end(),
                      [](const TableEntry& a, const TableEntry& b) {
                        return std::make_pair(a.s2, a.d2) <
                               std::make_pair(b.s2, b.d2);
                      })) {
    throw std::invalid_argument("kernel table: entries are not sorted");
  }
  table.finalize();
  return table;
}

void KernelTable::save(const std::string& path) const
{
  const std::vector<std::uint8_t> bytes = serialize();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("KernelTable::save: cannot open '" + path + "'");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("KernelTable::save: write to '" + path +
                             "' failed");
  }
}

KernelTable KernelTable::load(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("KernelTable::load: cannot open '" + path + "'");
  }
  std::vector<std::uint8_t> bytes(
      (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace boltzmann
