#include "supercrit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "supercrit/errors.hpp"
#include "supercrit/numerics.hpp"

namespace supercrit {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int a = 0; a < d; ++a) n *= static_cast<std::size_t>(N);
  return n;
}

double GridSpec::cell_volume() const { return std::pow(h(), d); }

std::array<int, 3> GridSpec::unravel(std::size_t index) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = d - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(index % N);
    index /= N;
  }
  return idx;
}

void GridSpec::validate() const {
  std::vector<std::string> problems;
  if (d < 1 || d > 3) problems.push_back(fmt::format("grid: d must be 1, 2 or 3 (got {})", d));
  if (N < 8 || !is_power_of_two(N)) {
    problems.push_back(fmt::format("grid: N must be a power of two and >= 8 (got {})", N));
  }
  if (!(L > 0.0) || !std::isfinite(L)) problems.push_back(fmt::format("grid: L must be positive (got {})", L));
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

namespace {

template <class T>
void check_size(std::span<const T> field, const GridSpec& grid) {
  if (field.size() != grid.size()) {
    throw std::invalid_argument(
        fmt::format("field has {} values, grid expects {}", field.size(), grid.size()));
  }
}

template <class T>
double l2_impl(std::span<const T> field, const GridSpec& grid) {
  check_size(field, grid);
  std::vector<double> sq(field.size());
  std::transform(field.begin(), field.end(), sq.begin(), [](T v) { return std::norm(v); });
  return grid.cell_volume() * pairwise_sum(sq);
}

template <class T>
double leakage_impl(std::span<const T> field, const GridSpec& grid, double margin,
                    std::array<double, 3> center) {
  check_size(field, grid);
  const double half = 0.5 * grid.L;
  std::vector<double> total(field.size()), shell(field.size(), 0.0);
  for (std::size_t i = 0; i < field.size(); ++i) {
    const auto idx = grid.unravel(i);
    bool near = false;
    for (int a = 0; a < grid.d; ++a) {
      double x = grid.coordinate(idx[a]) - center[a];
      x -= grid.L * std::round(x / grid.L);
      if (std::abs(x) > half - margin) near = true;
    }
    total[i] = std::norm(field[i]);
    if (near) shell[i] = total[i];
  }
  const double m = pairwise_sum(total);
  if (m == 0.0) return 0.0;
  return pairwise_sum(shell) / m;
}

}  // namespace

double l2_norm_sq(std::span<const double> field, const GridSpec& grid) { return l2_impl(field, grid); }
double l2_norm_sq(std::span<const std::complex<double>> field, const GridSpec& grid) {
  return l2_impl(field, grid);
}

double integrate(std::span<const double> values, const GridSpec& grid) {
  check_size(values, grid);
  return grid.cell_volume() * pairwise_sum(values);
}

double sup_norm(std::span<const double> field) {
  double m = 0.0;
  for (double v : field) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm(std::span<const std::complex<double>> field) {
  double m = 0.0;
  for (auto v : field) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(std::span<const double> field) {
  return std::all_of(field.begin(), field.end(), [](double v) { return std::isfinite(v); });
}

bool all_finite(std::span<const std::complex<double>> field) {
  return std::all_of(field.begin(), field.end(),
                     [](auto v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

double boundary_leakage(std::span<const double> field, const GridSpec& grid, double margin,
                        std::array<double, 3> center) {
  return leakage_impl(field, grid, margin, center);
}

double boundary_leakage(std::span<const std::complex<double>> field, const GridSpec& grid,
                        double margin, std::array<double, 3> center) {
  return leakage_impl(field, grid, margin, center);
}

}  // namespace supercrit
