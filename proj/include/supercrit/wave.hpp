#pragma once

#include <array>
#include <vector>

#include "supercrit/energy.hpp"
#include "supercrit/nonlinearity.hpp"
#include "supercrit/spectral.hpp"
#include "supercrit/state.hpp"

namespace supercrit {

/// dt <= 0.25 h / sqrt(d) keeps the leapfrog comfortably inside its
/// stability region for the spectral Laplacian.
double wave_cfl_limit(const GridSpec& grid);

struct WaveRunConfig {
  GridSpec grid;
  NonlinearitySpec spec;
  double dt = 0.0;  // 0 selects the CFL limit
  double T = 1.0;
  WaveState data;
  int diagnostics_stride = 1;
  int snapshot_stride = 0;       // 0 selects ~128 snapshots
  double leakage_margin = 0.0;   // 0 selects L/8
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double leakage_tol = 1e-6;

  /// Throws ConfigError (CFL, mismatched data, non-positive T).
  void validate() const;
  /// Step count; dt is shrunk so that steps * dt == T exactly.
  int steps() const;
  double effective_dt() const;
  int effective_snapshot_stride() const;
  double effective_margin() const;
};

struct DiagnosticSample {
  double t = 0.0;
  EnergyReport energy;
  double leakage = 0.0;
  double sup_norm = 0.0;
};

struct WaveTrajectory {
  std::vector<WaveState> snapshots;
  std::vector<DiagnosticSample> trace;
  bool leakage_flag = false;
  double max_leakage = 0.0;

  /// max_t |E(t) - E(0)| / |E(0)| over the trace.
  double max_relative_energy_drift() const;
  std::vector<double> snapshot_times() const;
};

/// Velocity Verlet for u_tt - Lap u + f(u) = 0.
class WaveIntegrator {
public:
  WaveIntegrator(const GridSpec& grid, const NonlinearitySpec& spec, double dt);

  /// Throws NumericalAbort carrying the last finite time on blow-up.
  void step(WaveState& s);
  double dt() const { return dt_; }
  SpectralOps& ops() { return ops_; }

private:
  void acceleration(const RealField& u);

  SpectralOps ops_;
  const NonlinearitySpec* spec_;
  double dt_;
  RealField acc_;
};

WaveTrajectory run_wave(const WaveRunConfig& cfg);

struct WeakIdentityResult {
  double lhs = 0.0;  // int_0^T int (|grad v|^2 - v_t^2 + v f(v))
  double rhs = 0.0;  // int (v_t(0) v(0) - v_t(T) v(T))
  double residual = 0.0;
};

/// Space-time integrated virial identity for a trajectory (trapezoid in time
/// over the stored snapshots, spectral in space).
WeakIdentityResult verify_prop_weak_identity(const std::vector<WaveState>& snapshots,
                                             const NonlinearitySpec& spec);

}  // namespace supercrit
