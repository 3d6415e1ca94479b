#pragma once

#include <complex>
#include <span>
#include <vector>

#include "supercrit/grid.hpp"

namespace supercrit {

/// Fourier pseudo-spectral operators on one periodic grid.
///
/// Owns FFTW plans and a scratch buffer, so an instance must not be shared
/// between threads; give every concurrent run its own. Plans are built with
/// FFTW_ESTIMATE, which keeps results bit-reproducible run to run.
class SpectralOps {
public:
  explicit SpectralOps(const GridSpec& grid);
  ~SpectralOps();
  SpectralOps(const SpectralOps&) = delete;
  SpectralOps& operator=(const SpectralOps&) = delete;
  SpectralOps(SpectralOps&& other) noexcept;
  SpectralOps& operator=(SpectralOps&& other) noexcept;

  const GridSpec& grid() const { return grid_; }

  /// |xi|^2 for the mode stored at flat index i (xi = 2 pi m / L per axis).
  double wavenumber_sq(std::size_t i) const { return k2_[i]; }

  /// Unnormalised forward transform.
  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
  /// Inverse transform including the 1/N^d factor.
  void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

  void laplacian(std::span<const double> in, std::span<double> out);
  void laplacian(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

  /// d/dx_axis of a real field (Nyquist mode dropped).
  void partial_derivative(std::span<const double> in, std::span<double> out, int axis);

  /// ||grad u||^2 via Parseval: h^d/N^d sum |xi|^2 |u_hat|^2.
  double gradient_norm_sq(std::span<const double> field);
  double gradient_norm_sq(std::span<const std::complex<double>> field);

  /// ||u||^2 evaluated on the Fourier side (Parseval route).
  double fourier_l2_norm_sq(std::span<const std::complex<double>> field);

  /// Exact flow of i u_t = Laplacian(u): each mode picks up exp(i |xi|^2 tau).
  void linear_schrodinger_flow(std::span<std::complex<double>> field, double tau);

private:
  void check(std::size_t n) const;
  void load(std::span<const double> in);
  void load(std::span<const std::complex<double>> in);
  double weighted_spectrum_sum() const;
  void release();

  GridSpec grid_;
  std::vector<double> k2_;
  std::vector<int> mode_;  // signed mode index per axis, flattened [i*d + a]
  std::complex<double>* buf_ = nullptr;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

/// Band-limited interpolation from a coarse grid onto a finer grid with the
/// same d and L (zero padding in Fourier space; the coarse Nyquist mode is dropped).
RealField spectral_prolong(std::span<const double> field, const GridSpec& coarse, const GridSpec& fine);
ComplexField spectral_prolong(std::span<const std::complex<double>> field, const GridSpec& coarse,
                              const GridSpec& fine);

// Convenience wrappers that build a temporary SpectralOps.
RealField laplacian(std::span<const double> field, const GridSpec& grid);
double gradient_norm_sq(std::span<const double> field, const GridSpec& grid);

}  // namespace supercrit
