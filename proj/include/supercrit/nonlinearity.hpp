#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace supercrit {

using ScalarFn = std::function<double(double)>;

enum class AssumptionClass { Defocusing, Oscillating, NlsCoercive, NlsSubcritGrowth };

std::string_view to_string(AssumptionClass c);

/// Growth bound |f(u)| <= C |u|^q.
struct GrowthBound {
  double q = 1.0;
  double C = 1.0;
};

/// Real nonlinearity for the wave equation: potential F, force f = F', and f'.
struct NonlinearitySpec {
  std::string name;
  ScalarFn F;
  ScalarFn f;
  ScalarFn fprime;
  AssumptionClass assumption_class = AssumptionClass::Defocusing;
  std::optional<GrowthBound> growth;
  // Constant in F(u) >= -C u^2. Zero for defocusing entries.
  double lower_C = 0.0;
  // F''(0) = 0 and f is C^1 near the origin. Two of the classical examples
  // (exp(u^2)-1 and sin(u|u|)) do not satisfy this.
  bool smooth_at_origin = true;
  // Global Lipschitz constant of f, known only for truncated specs.
  std::optional<double> lipschitz;

  bool has_growth_bound() const { return growth.has_value(); }
};

/// Gauge-invariant NLS nonlinearity f(u) = u F'(|u|^2/2), described in the
/// density variable s = |u|^2/2.
struct NlsNonlinearitySpec {
  std::string name;
  ScalarFn Fs;
  ScalarFn Fsprime;
  ScalarFn Fsprime2;
  AssumptionClass assumption_class = AssumptionClass::NlsCoercive;
  std::optional<GrowthBound> growth;
  // C in 0 <= sqrt(s) F'(s) <= C F(s), checked for s >= coercive_from.
  double coercivity_constant = 1.0;
  double coercive_from = 0.0;
  // C in F(|u|^2/2) >= -C |u|^2.
  double lower_C = 0.0;

  std::complex<double> force(std::complex<double> z) const {
    return z * Fsprime(0.5 * std::norm(z));
  }
  double potential(std::complex<double> z) const { return Fs(0.5 * std::norm(z)); }
  /// Real-linear derivative of f at u applied to w.
  std::complex<double> dforce(std::complex<double> u, std::complex<double> w) const;
};

/// Real inner product a . b = Re(a conj(b)).
inline double dot(std::complex<double> a, std::complex<double> b) {
  return a.real() * b.real() + a.imag() * b.imag();
}

struct TruncationLevel {
  double k = 1.0;
  double r_plus = 1.0;
  double r_minus = -1.0;
  // Constant of the sign condition r f(r) >= -C r^2.
  double C = 0.0;
};

// Catalog constructors.
NonlinearitySpec defocusing_exp(int m);
NonlinearitySpec oscillating_sin(int q);
NonlinearitySpec pure_power(double p);
NonlinearitySpec zero_nonlinearity();
NlsNonlinearitySpec nls_coercive_exp();
NlsNonlinearitySpec nls_pure_power(double p);
NlsNonlinearitySpec nls_zero();

struct Catalog {
  std::vector<NonlinearitySpec> wave;
  std::vector<NlsNonlinearitySpec> nls;
};

Catalog builtin_catalog();

using AnyNonlinearity = std::variant<NonlinearitySpec, NlsNonlinearitySpec>;

/// Parses "name[:key=value{,key=value}]", e.g. "defocusing_exp:m=1".
/// Throws ConfigError on unknown names or parameters.
AnyNonlinearity parse_nonlinearity(std::string_view selection);

/// Lipschitz truncation: f frozen at f(r_minus) below the window and at
/// f(r_plus) above it, F_k the primitive of f_k.
NonlinearitySpec truncate(const NonlinearitySpec& spec, const TruncationLevel& level);

/// Scans [k, 2k] (and its mirror) for the first abscissa satisfying
/// s f(s) >= -C s^2. Defocusing specs return (k, -k).
TruncationLevel find_truncation_abscissae(const NonlinearitySpec& spec, double k, double C);

/// C^1 odd saturation: s on [0,k], s - (s-k)^2/(2k) on [k,2k], 3k/2 beyond.
double beta_cutoff(double s, double k);

/// Energy-critical exponent 2d/(d-2); infinity for d <= 2.
double two_star(int d);

}  // namespace supercrit
