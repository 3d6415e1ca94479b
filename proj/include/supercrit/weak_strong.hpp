#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "supercrit/initial_data.hpp"
#include "supercrit/nls.hpp"
#include "supercrit/nonlinearity.hpp"
#include "supercrit/wave.hpp"

namespace supercrit {

// All trajectory-pair functions expect u and v sampled at the same times on
// the same grid; they throw std::invalid_argument otherwise. w = v - u.

/// E(v) - E(u) = I(t) + J(t) + c, with c the t = 0 cross term (zero when the
/// data coincide). residual = max_t |E(v)-E(u)-J - c - I| / scale with
/// scale = max|E(v)-E(u)| + max|J| + max|I|.
struct ExpansionResult {
  std::vector<double> t;
  std::vector<double> energy_gap;  // E(v) - E(u)
  std::vector<double> I;
  std::vector<double> J;
  double residual = 0.0;
  double scale = 0.0;
};

/// Wave: I(t) = int_0^t int (f(u) + f'(u) w - f(u+w)) u_t,
///       J(t) = int (1/2 |Dw|^2 + F(u+w) - F(u) - f(u) w).
ExpansionResult energy_expansion(const std::vector<WaveState>& u, const std::vector<WaveState>& v,
                                 const NonlinearitySpec& spec);
/// NLS: I(t) = -int_0^t int (f(u+w) - f(u) - Df(u) w) . u_t with u_t = i(f(u) - Lap u),
///      J(t) = 1/2 |grad w|^2 + int (F(|u+w|^2/2) - F(|u|^2/2) - f(u) . w).
ExpansionResult energy_expansion(const std::vector<NlsState>& u, const std::vector<NlsState>& v,
                                 const NlsNonlinearitySpec& spec);

struct GronwallTrace {
  std::vector<double> times;
  std::vector<double> G;     // wave: |Dw|^2; NLS: |grad w|^2 + (A+1)|w|^2
  std::vector<double> w_l2;  // |w|^2
  std::vector<double> I;
  std::vector<double> J;
  std::vector<double> remainder;  // NLS only: the (A)-shifted remainder integral
  double A = 0.0;                 // NLS only
  double fitted_G0 = 0.0;         // G(0) + 1e-14
  double fitted_C = 0.0;          // smallest C with G(t) <= fitted_G0 exp(C t) on the trace
  double ls_rate = 0.0;           // least-squares slope of log(G + 1e-14)
  double integral_C = 0.0;        // smallest C with G(t) <= G(0) + C int_0^t (G + |w|^2)
  double max_growth = 0.0;        // max_t G(t) / fitted_G0

  double bound(double t) const;
  bool bound_holds(double tol = 1e-12) const;
};

inline constexpr double kGronwallFloor = 1e-14;

GronwallTrace gronwall_trace_wave(const std::vector<WaveState>& u, const std::vector<WaveState>& v,
                                  const NonlinearitySpec& spec);
/// Throws InvariantViolation if the shifted remainder drops below
/// -1e-9 * cellcount * h^d (A is then not admissible).
GronwallTrace gronwall_trace_nls(const std::vector<NlsState>& u, const std::vector<NlsState>& v,
                                 const NlsNonlinearitySpec& spec, double A);

enum class LadderMode { TruncationLadder, CoarseGrid, PerturbedData };
std::string_view to_string(LadderMode m);

struct WeakApproxConfig {
  LadderMode mode = LadderMode::PerturbedData;
  std::vector<double> values;  // k, N or eps; strictly increasing
  std::variant<WaveRunConfig, NlsRunConfig> base;
  Bump perturbation{1.0, 1.0, {0.0, 0.0, 0.0}};
  double truncation_C = 1.0;
  double shift_R = 0.0;  // NLS: radius for the shift A; 0 uses 1.5 sup|u0| + 1
  int jobs = 1;

  void validate() const;
};

struct LadderLevel {
  double value = 0.0;
  TruncationLevel truncation;  // TruncationLadder only
  double sup_l2_discrepancy = 0.0;
  double force_l1_discrepancy = 0.0;
  double max_energy_excess = 0.0;  // max_t (E(t) - E(0)) / |E(0)|
  bool energy_inequality = true;
  double sup_norm = 0.0;
};

struct ConvergenceReport {
  std::vector<LadderLevel> levels;
  double energy_tolerance = 1e-6;
  double monotone_slack = 0.10;
  bool l2_monotone = true;
  bool force_monotone = true;
  bool energy_inequality = true;
  std::vector<std::string> flags;
};

/// Runs the truncated problems f_k for every k and compares them against
/// the finest-k run.
ConvergenceReport appendix_construction(const WeakApproxConfig& cfg);

struct UiProbeResult {
  bool vacuous = false;
  double slope = 0.0;
  double intercept = 0.0;
  double eta = 0.0;
  double critical = 0.0;  // 2*, or q_max for d <= 2
  double threshold = 0.0;
  bool passes = false;
  std::size_t trials = 0;
  std::size_t zero_trials = 0;
};

/// Random unions of space-time cells with |E| over 4 decades; fits
/// log int_E |f(v)| against log |E| and checks slope >= eta/2* - 0.1.
UiProbeResult uniform_integrability_probe(const std::vector<WaveState>& traj, const NonlinearitySpec& spec,
                                          std::size_t trials, std::uint64_t seed = 20240611,
                                          double q_max = 10.0);

struct Main33Result {
  std::vector<double> t;
  std::vector<double> I;
  std::vector<double> w_l2_integral;  // int_0^t |w|^2
  std::vector<double> monotone_term;  // int_0^t int w (f(u+w) - f(u))
  double C = 0.0;                     // smallest C making I <= C (sum of the two terms)
  bool finite = true;
};

/// Requires a defocusing spec.
Main33Result lemma_main33_probe(const std::vector<WaveState>& u, const std::vector<WaveState>& v,
                                const NonlinearitySpec& spec);

struct WeakStrongResult {
  LadderMode mode = LadderMode::PerturbedData;
  std::vector<double> values;
  std::vector<GronwallTrace> traces;
  std::vector<ExpansionResult> expansions;
  std::optional<ConvergenceReport> convergence;
};

/// Strong reference u (base config) against every ladder member v.
WeakStrongResult run_weak_strong(const WeakApproxConfig& cfg);

nlohmann::json to_json(const GronwallTrace& g);
nlohmann::json to_json(const ConvergenceReport& r);
nlohmann::json to_json(const UiProbeResult& r);

}  // namespace supercrit
