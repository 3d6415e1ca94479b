#pragma once

#include <array>
#include <vector>

#include "supercrit/energy.hpp"
#include "supercrit/nonlinearity.hpp"
#include "supercrit/spectral.hpp"
#include "supercrit/state.hpp"
#include "supercrit/wave.hpp"

namespace supercrit {

// Sign convention: i u_t - Lap u + f(u) = 0, i.e. u_t = i (f(u) - Lap u).

struct NlsRunConfig {
  GridSpec grid;
  NlsNonlinearitySpec spec;
  double dt = 1e-3;
  double T = 1.0;
  NlsState data;
  int diagnostics_stride = 1;
  int snapshot_stride = 0;
  double leakage_margin = 0.0;  // 0 selects L/8
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double leakage_tol = 1e-6;

  /// dt > 0 and the accuracy gate dt <= h.
  void validate() const;
  int steps() const;
  double effective_dt() const;
  int effective_snapshot_stride() const;
  double effective_margin() const;
};

struct NlsTrajectory {
  std::vector<NlsState> snapshots;
  std::vector<DiagnosticSample> trace;  // energy.mass is filled
  bool leakage_flag = false;
  double max_leakage = 0.0;

  double max_relative_mass_drift() const;
  double max_relative_hamiltonian_drift() const;
};

/// Exact flow of i u_t = Lap u over time tau.
void linear_flow(NlsState& s, double tau, SpectralOps& ops);
void linear_flow(NlsState& s, double tau);

/// Exact pointwise flow of i u_t = f(u): u <- u exp(i F'(|u|^2/2) tau).
void nonlinear_flow(NlsState& s, double tau, const NlsNonlinearitySpec& spec);

/// Strang splitting: half nonlinear, full linear, half nonlinear.
void strang_step(NlsState& s, double dt, const NlsNonlinearitySpec& spec, SpectralOps& ops);

NlsTrajectory run_nls(const NlsRunConfig& cfg);

}  // namespace supercrit
