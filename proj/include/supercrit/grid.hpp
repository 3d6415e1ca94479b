#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace supercrit {

using RealField = std::vector<double>;
using ComplexField = std::vector<std::complex<double>>;

/// Periodic box [-L/2, L/2)^d sampled with N points per axis.
struct GridSpec {
  int d = 1;
  int N = 256;
  double L = 16.0;

  double h() const { return L / N; }
  std::size_t size() const;
  /// h^d, the quadrature weight of one cell.
  double cell_volume() const;
  double coordinate(int j) const { return -0.5 * L + j * h(); }
  /// Row-major multi-index of a flat index (unused axes are 0).
  std::array<int, 3> unravel(std::size_t index) const;

  /// Throws ConfigError when d, N or L are out of range.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

bool is_power_of_two(int n);

/// Riemann sum h^d sum |u_i|^2 (exact trapezoid rule for periodic integrands).
double l2_norm_sq(std::span<const double> field, const GridSpec& grid);
double l2_norm_sq(std::span<const std::complex<double>> field, const GridSpec& grid);

/// h^d sum of the values.
double integrate(std::span<const double> values, const GridSpec& grid);

double sup_norm(std::span<const double> field);
double sup_norm(std::span<const std::complex<double>> field);

bool all_finite(std::span<const double> field);
bool all_finite(std::span<const std::complex<double>> field);

/// Fraction of the L^2 mass lying within `margin` of the box boundary, where
/// distances are measured per axis from `center` with periodic wrap.
double boundary_leakage(std::span<const double> field, const GridSpec& grid, double margin,
                        std::array<double, 3> center = {});
double boundary_leakage(std::span<const std::complex<double>> field, const GridSpec& grid,
                        double margin, std::array<double, 3> center = {});

}  // namespace supercrit
