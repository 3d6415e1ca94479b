#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace supercrit {

/// Pairwise (cascade) summation; order-independent of thread layout and
/// accurate to O(log n) ulps.
double pairwise_sum(std::span<const double> values);

/// Trapezoid rule on a (possibly nonuniform) abscissa.
double trapezoid(std::span<const double> t, std::span<const double> y);

/// Running trapezoid integral; out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> y);

/// Seeded generator whose draws are identical on every platform: the
/// engine sequence is fixed by the standard and the double conversion is
/// done here rather than by a library distribution.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

private:
  std::mt19937_64 engine_;
};

/// Deterministic per-stream seed derived from an experiment seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Least-squares line fit y = intercept + slope x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Empirical convergence order between consecutive refinement levels with
/// step ratio `ratio` (errors ordered coarse to fine).
std::vector<double> convergence_orders(std::span<const double> errors, double ratio = 2.0);

/// Runs task(i) for i in [0, n) on up to `jobs` threads. Results must be
/// written by index so the outcome does not depend on scheduling. The first
/// exception (by index) is rethrown after all tasks finish.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& task);

}  // namespace supercrit
