#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "supercrit/nonlinearity.hpp"

namespace supercrit {

enum class Inequality {
  H1,        // u f(u) >= 0
  H2,        // |f(u)| <= C |u|^q
  H21,       // F(u) >= -C u^2
  H11,       // F(u+w) - F(u) - f(u) w >= -C(R) w^2
  H22,       // |f(u+w) - f(u) - f'(u) w| <= C(R) (w^2 + |w|^p)
  H222,      // complex analogue of H22 with the real-linear derivative Df
  Gronw4,    // cancellation (f(u)-f(u+w)).(iw) = f(u).(iw) + f(u+w).(iu)
  Gronw6,    // |(f(u)-f(u+w)).(iw)| <= C(R) (|w|^2 + |w|^p)
  ClaimA,    // F(|u+w|^2/2) - F(|u|^2/2) - f(u).w + (A+1)|w|^2 >= 0
  Coercive,  // 0 <= sqrt(s) F'(s) <= C F(s)
  Lower,     // truncated F_k(u) >= -C u^2
  NLS1,      // |f(u)| <= C |u|^q, complex
  NLS2,      // F(|u|^2/2) >= -C |u|^2
};

std::string_view to_string(Inequality i);

struct ConstantEstimate {
  std::string name;
  double R = 0.0;
  double value = 0.0;
  std::size_t samples = 0;
  std::complex<double> worst_u;
  std::complex<double> worst_w;
};

struct Violation {
  std::complex<double> u;
  std::complex<double> w;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct InequalityReport {
  Inequality inequality = Inequality::H1;
  bool holds = true;
  std::vector<Violation> violations;  // at most kMaxStoredViolations kept
  std::size_t violation_count = 0;
  ConstantEstimate constant;
  bool complex_valued = false;
  std::string note;

  static constexpr std::size_t kMaxStoredViolations = 32;
  void add_violation(const Violation& v);
};

struct SamplingPlan {
  std::uint64_t seed = 20240611;
  std::size_t random_pairs = 1'000'000;
  int grid_points = 201;  // per axis of the quasi-uniform part (real specs)
  double q_max = 10.0;    // stands in for 2* when d <= 2
  double w_min = 1e-3;    // smallest |w| sampled
};

/// Exponent used in place of 2* on the |w|^p branch.
double large_w_exponent(int d, const SamplingPlan& plan);

/// C(R) in F(u+w) - F(u) - f(u) w >= -C(R) w^2, |u| <= R, |w| <= 8R.
/// Throws EstimateError if unstable under sample doubling or unbounded.
ConstantEstimate estimate_remainder_constant(const NonlinearitySpec& spec, double R,
                                             const SamplingPlan& plan = {});

/// C(R) in |f(u+w) - f(u) - f'(u) w| <= C(R)(w^2 + |w|^p).
ConstantEstimate estimate_taylor_constant(const NonlinearitySpec& spec, double R, int d,
                                          const SamplingPlan& plan = {});

/// Complex analogue with the real-linear derivative Df(u)w.
ConstantEstimate estimate_nls_taylor_constant(const NlsNonlinearitySpec& spec, double R, int d,
                                              const SamplingPlan& plan = {});

/// C(R) in |(f(u) - f(u+w)).(iw)| <= C(R)(|w|^2 + |w|^p).
ConstantEstimate estimate_cancellation_constant(const NlsNonlinearitySpec& spec, double R, int d,
                                                const SamplingPlan& plan = {});

/// Smallest signed value of (F(u+w) - F(u) - f(u) w)/w^2 over |u| <= R,
/// 0 < |w| <= w_max; bounded below by inf_{|s| <= R + w_max} F''/2.
double min_signed_remainder_ratio(const NonlinearitySpec& spec, double R, double w_max,
                                  const SamplingPlan& plan = {});

/// Checks the exact identity on random pairs in the disk |z| <= radius.
InequalityReport verify_nls_cancellation(const NlsNonlinearitySpec& spec, std::size_t samples,
                                         std::uint64_t seed = 20240611, double radius = 5.0);

/// Smallest A >= 0 (to 1e-3) making the shifted remainder >= -1e-9 for |u| <= R.
/// Throws EstimateError if no A <= 1e6 works.
ConstantEstimate find_convexity_shift(const NlsNonlinearitySpec& spec, double R,
                                      const SamplingPlan& plan = {});

/// Pointwise sign/growth checks on a dense sample of [-R_max, R_max].
InequalityReport check_sign_condition(const NonlinearitySpec& spec, double R_max = 4.0);       // H1
InequalityReport check_lower_bound(const NonlinearitySpec& spec, double C, double R_max = 4.0);  // H21
InequalityReport check_growth(const NonlinearitySpec& spec, double R_max = 4.0);               // H2
InequalityReport check_truncation_lower_bound(const NonlinearitySpec& spec, double C,
                                              const std::vector<double>& ladder);               // Lower
InequalityReport check_coercivity(const NlsNonlinearitySpec& spec, double s_max = 32.0);        // Coercive
InequalityReport check_nls_growth(const NlsNonlinearitySpec& spec, double R_max = 4.0);        // NLS1
InequalityReport check_nls_lower_bound(const NlsNonlinearitySpec& spec, double R_max = 4.0);   // NLS2

struct LabOptions {
  double R = 2.0;
  int d = 1;
  SamplingPlan plan;
  std::vector<double> truncation_ladder{1.0, 2.0, 4.0, 8.0};
  double truncation_C = 1.0;
};

/// Runs every verifier applicable to the nonlinearity's class. Estimator failures
/// become reports with holds = false and the reason in `note`.
std::vector<InequalityReport> classify(const NonlinearitySpec& spec, const LabOptions& opt = {});
std::vector<InequalityReport> classify(const NlsNonlinearitySpec& spec, const LabOptions& opt = {});
std::vector<InequalityReport> classify(const AnyNonlinearity& spec, const LabOptions& opt = {});

nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const ConstantEstimate& c, bool complex_valued);

}  // namespace supercrit
