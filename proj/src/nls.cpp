#include "supercrit/nls.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "supercrit/errors.hpp"

namespace supercrit {

void NlsRunConfig::validate() const {
  std::vector<std::string> problems;
  try {
    grid.validate();
  } catch (const ConfigError& e) {
    problems = e.problems();
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) problems.push_back(fmt::format("time: dt must be positive (got {})", dt));
  if (problems.empty()) {
    if (dt > grid.h() * (1.0 + 1e-12)) {
      problems.push_back(fmt::format("time: dt={} exceeds the accuracy gate dt <= h={}", dt, grid.h()));
    }
    if (data.u.size() != grid.size() || !(data.grid == grid)) {
      problems.push_back("data: initial state does not match the grid");
    }
    const double m = effective_margin();
    if (!(m > 0.0 && m < 0.5 * grid.L)) problems.push_back(fmt::format("leakage margin {} outside (0, L/2)", m));
  }
  if (!(T > 0.0) || !std::isfinite(T)) problems.push_back(fmt::format("time: T must be positive (got {})", T));
  if (diagnostics_stride < 1) problems.push_back("diagnostics_stride must be >= 1");
  if (snapshot_stride < 0) problems.push_back("snapshot_stride must be >= 0");
  if (!spec.Fs || !spec.Fsprime) problems.push_back("nonlinearity: evaluators missing");
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

int NlsRunConfig::steps() const { return std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9))); }
double NlsRunConfig::effective_dt() const { return T / steps(); }
int NlsRunConfig::effective_snapshot_stride() const {
  return snapshot_stride > 0 ? snapshot_stride : std::max(1, steps() / 128);
}
double NlsRunConfig::effective_margin() const { return leakage_margin > 0.0 ? leakage_margin : grid.L / 8.0; }

namespace {

double max_drift(const std::vector<DiagnosticSample>& trace, double EnergyReport::*field) {
  if (trace.empty()) return 0.0;
  const double v0 = trace.front().energy.*field;
  double m = 0.0;
  for (const auto& s : trace) m = std::max(m, std::abs(s.energy.*field - v0));
  return v0 == 0.0 ? m : m / std::abs(v0);
}

}  // namespace

double NlsTrajectory::max_relative_mass_drift() const { return max_drift(trace, &EnergyReport::mass); }
double NlsTrajectory::max_relative_hamiltonian_drift() const { return max_drift(trace, &EnergyReport::total); }

void linear_flow(NlsState& s, double tau, SpectralOps& ops) {
  ops.linear_schrodinger_flow(s.u, tau);
  s.t += tau;
}

void linear_flow(NlsState& s, double tau) {
  SpectralOps ops(s.grid);
  linear_flow(s, tau, ops);
}

void nonlinear_flow(NlsState& s, double tau, const NlsNonlinearitySpec& spec) {
  for (auto& z : s.u) {
    const double phase = spec.Fsprime(0.5 * std::norm(z)) * tau;
    if (!std::isfinite(phase)) {
      throw NumericalAbort(fmt::format("nonlinear phase overflow at t={} (|u|={})", s.t, std::abs(z)), s.t);
    }
    z *= std::polar(1.0, phase);
  }
}

void strang_step(NlsState& s, double dt, const NlsNonlinearitySpec& spec, SpectralOps& ops) {
  const double t0 = s.t;
  nonlinear_flow(s, 0.5 * dt, spec);
  ops.linear_schrodinger_flow(s.u, dt);
  nonlinear_flow(s, 0.5 * dt, spec);
  s.t = t0 + dt;
  if (!all_finite(s.u)) throw NumericalAbort(fmt::format("NLS solution became non-finite after t={}", t0), t0);
}

NlsTrajectory run_nls(const NlsRunConfig& cfg) {
  cfg.validate();
  const int n = cfg.steps();
  const double dt = cfg.effective_dt();
  const int snap = cfg.effective_snapshot_stride();
  const double margin = cfg.effective_margin();
  SpectralOps ops(cfg.grid);
  NlsTrajectory traj;
  NlsState s = cfg.data;
  s.t = 0.0;

  auto record = [&](int k) {
    if (k % cfg.diagnostics_stride == 0 || k == n) {
      DiagnosticSample d;
      d.t = s.t;
      d.energy = nls_energy(s, cfg.spec, ops);
      d.leakage = boundary_leakage(s.u, s.grid, margin, cfg.center);
      d.sup_norm = sup_norm(s.u);
      traj.max_leakage = std::max(traj.max_leakage, d.leakage);
      traj.trace.push_back(d);
    }
    if (k % snap == 0 || k == n) traj.snapshots.push_back(s);
  };

  record(0);
  for (int k = 1; k <= n; ++k) {
    strang_step(s, dt, cfg.spec, ops);
    s.t = k * dt;
    record(k);
  }
  traj.leakage_flag = traj.max_leakage > cfg.leakage_tol;
  return traj;
}

}  // namespace supercrit
