#include "supercrit/spectral.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <algorithm>

#include <fftw3.h>
#include <fmt/format.h>

#include "supercrit/numerics.hpp"

namespace supercrit {

namespace {

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

SpectralOps::SpectralOps(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  const std::size_t n = grid_.size();
  const int d = grid_.d;
  k2_.resize(n);
  mode_.resize(n * d);
  const double scale = 2.0 * std::numbers::pi / grid_.L;
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = grid_.unravel(i);
    double k2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const int m = idx[a] < grid_.N / 2 ? idx[a] : idx[a] - grid_.N;
      mode_[i * d + a] = m;
      k2 += (scale * m) * (scale * m);
    }
    k2_[i] = k2;
  }

  buf_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (!buf_) throw std::bad_alloc();
  int dims[3] = {grid_.N, grid_.N, grid_.N};
  std::lock_guard lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft(d, dims, as_fftw(buf_), as_fftw(buf_), FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft(d, dims, as_fftw(buf_), as_fftw(buf_), FFTW_BACKWARD, FFTW_ESTIMATE);
}

SpectralOps::~SpectralOps() { release(); }

void SpectralOps::release() {
  if (plan_fwd_ || plan_bwd_) {
    std::lock_guard lock(planner_mutex());
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  }
  if (buf_) fftw_free(buf_);
  plan_fwd_ = plan_bwd_ = nullptr;
  buf_ = nullptr;
}

SpectralOps::SpectralOps(SpectralOps&& other) noexcept
    : grid_(other.grid_),
      k2_(std::move(other.k2_)),
      mode_(std::move(other.mode_)),
      buf_(std::exchange(other.buf_, nullptr)),
      plan_fwd_(std::exchange(other.plan_fwd_, nullptr)),
      plan_bwd_(std::exchange(other.plan_bwd_, nullptr)) {}

SpectralOps& SpectralOps::operator=(SpectralOps&& other) noexcept {
  if (this != &other) {
    release();
    grid_ = other.grid_;
    k2_ = std::move(other.k2_);
    mode_ = std::move(other.mode_);
    buf_ = std::exchange(other.buf_, nullptr);
    plan_fwd_ = std::exchange(other.plan_fwd_, nullptr);
    plan_bwd_ = std::exchange(other.plan_bwd_, nullptr);
  }
  return *this;
}

void SpectralOps::check(std::size_t n) const {
  if (n != grid_.size()) {
    throw std::invalid_argument(
        fmt::format("field has {} values, grid expects {}", n, grid_.size()));
  }
}

void SpectralOps::load(std::span<const double> in) {
  check(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) buf_[i] = in[i];
}

void SpectralOps::load(std::span<const std::complex<double>> in) {
  check(in.size());
  std::copy(in.begin(), in.end(), buf_);
}

void SpectralOps::forward(std::span<const std::complex<double>> in,
                          std::span<std::complex<double>> out) {
  load(in);
  check(out.size());
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::copy(buf_, buf_ + out.size(), out.begin());
}

void SpectralOps::inverse(std::span<const std::complex<double>> in,
                          std::span<std::complex<double>> out) {
  load(in);
  check(out.size());
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  const double inv = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf_[i] * inv;
}

void SpectralOps::laplacian(std::span<const double> in, std::span<double> out) {
  load(in);
  check(out.size());
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  const double inv = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t i = 0; i < out.size(); ++i) buf_[i] *= -k2_[i] * inv;
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf_[i].real();
}

void SpectralOps::laplacian(std::span<const std::complex<double>> in,
                            std::span<std::complex<double>> out) {
  load(in);
  check(out.size());
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  const double inv = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t i = 0; i < out.size(); ++i) buf_[i] *= -k2_[i] * inv;
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  std::copy(buf_, buf_ + out.size(), out.begin());
}

void SpectralOps::partial_derivative(std::span<const double> in, std::span<double> out, int axis) {
  if (axis < 0 || axis >= grid_.d) throw std::invalid_argument("partial_derivative: bad axis");
  load(in);
  check(out.size());
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  const double inv = 1.0 / static_cast<double>(grid_.size());
  const double scale = 2.0 * std::numbers::pi / grid_.L;
  const int d = grid_.d;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int m = mode_[i * d + axis];
    const double xi = (m == -grid_.N / 2) ? 0.0 : scale * m;
    buf_[i] *= std::complex<double>(0.0, xi * inv);
  }
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf_[i].real();
}

double SpectralOps::weighted_spectrum_sum() const {
  std::vector<double> terms(grid_.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = k2_[i] * std::norm(buf_[i]);
  const double n = static_cast<double>(grid_.size());
  return grid_.cell_volume() * pairwise_sum(terms) / n;
}

double SpectralOps::gradient_norm_sq(std::span<const double> field) {
  load(field);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  return weighted_spectrum_sum();
}

double SpectralOps::gradient_norm_sq(std::span<const std::complex<double>> field) {
  load(field);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  return weighted_spectrum_sum();
}

double SpectralOps::fourier_l2_norm_sq(std::span<const std::complex<double>> field) {
  load(field);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::vector<double> terms(grid_.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = std::norm(buf_[i]);
  const double n = static_cast<double>(grid_.size());
  return grid_.cell_volume() * pairwise_sum(terms) / n;
}

void SpectralOps::linear_schrodinger_flow(std::span<std::complex<double>> field, double tau) {
  load(std::span<const std::complex<double>>(field.data(), field.size()));
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  const double inv = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    buf_[i] *= std::polar(inv, k2_[i] * tau);
  }
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  std::copy(buf_, buf_ + field.size(), field.begin());
}

ComplexField spectral_prolong(std::span<const std::complex<double>> field, const GridSpec& coarse,
                              const GridSpec& fine) {
  if (coarse.d != fine.d || coarse.L != fine.L || fine.N < coarse.N) {
    throw std::invalid_argument("spectral_prolong: grids must share d and L with fine.N >= coarse.N");
  }
  SpectralOps cops(coarse), fops(fine);
  ComplexField chat(coarse.size()), fhat(fine.size(), 0.0), out(fine.size());
  cops.forward(field, chat);
  const double gain = static_cast<double>(fine.size()) / static_cast<double>(coarse.size());
  for (std::size_t i = 0; i < chat.size(); ++i) {
    const auto idx = coarse.unravel(i);
    std::size_t j = 0;
    bool nyquist = false;
    for (int a = 0; a < coarse.d; ++a) {
      int m = idx[a] < coarse.N / 2 ? idx[a] : idx[a] - coarse.N;
      if (m == -coarse.N / 2) nyquist = true;
      if (m < 0) m += fine.N;
      j = j * fine.N + static_cast<std::size_t>(m);
    }
    if (!nyquist) fhat[j] = chat[i] * gain;
  }
  fops.inverse(fhat, out);
  return out;
}

RealField spectral_prolong(std::span<const double> field, const GridSpec& coarse, const GridSpec& fine) {
  ComplexField c(field.begin(), field.end());
  const auto z = spectral_prolong(std::span<const std::complex<double>>(c), coarse, fine);
  RealField out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
  return out;
}

RealField laplacian(std::span<const double> field, const GridSpec& grid) {
  SpectralOps ops(grid);
  RealField out(field.size());
  ops.laplacian(field, out);
  return out;
}

double gradient_norm_sq(std::span<const double> field, const GridSpec& grid) {
  SpectralOps ops(grid);
  return ops.gradient_norm_sq(field);
}

}  // namespace supercrit
