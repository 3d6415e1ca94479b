#include "supercrit/wave.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "supercrit/errors.hpp"
#include "supercrit/numerics.hpp"

namespace supercrit {

double wave_cfl_limit(const GridSpec& grid) { return 0.25 * grid.h() / std::sqrt(static_cast<double>(grid.d)); }

void WaveRunConfig::validate() const {
  std::vector<std::string> problems;
  try {
    grid.validate();
  } catch (const ConfigError& e) {
    problems = e.problems();
  }
  if (problems.empty()) {
    const double limit = wave_cfl_limit(grid);
    if (dt < 0.0 || !std::isfinite(dt)) problems.push_back(fmt::format("time: dt must be positive (got {})", dt));
    else if (dt > limit * (1.0 + 1e-12)) {
      problems.push_back(fmt::format("time: dt={} exceeds the CFL bound 0.25*h/sqrt(d)={}", dt, limit));
    }
    if (data.u.size() != grid.size() || data.ut.size() != grid.size() || !(data.grid == grid)) {
      problems.push_back("data: initial state does not match the grid");
    }
    const double m = effective_margin();
    if (!(m > 0.0 && m < 0.5 * grid.L)) problems.push_back(fmt::format("leakage margin {} outside (0, L/2)", m));
  }
  if (!(T > 0.0) || !std::isfinite(T)) problems.push_back(fmt::format("time: T must be positive (got {})", T));
  if (diagnostics_stride < 1) problems.push_back("diagnostics_stride must be >= 1");
  if (snapshot_stride < 0) problems.push_back("snapshot_stride must be >= 0");
  if (!spec.F || !spec.f || !spec.fprime) problems.push_back("nonlinearity: evaluators missing");
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

int WaveRunConfig::steps() const {
  const double req = dt > 0.0 ? dt : wave_cfl_limit(grid);
  return std::max(1, static_cast<int>(std::ceil(T / req - 1e-9)));
}

double WaveRunConfig::effective_dt() const { return T / steps(); }

int WaveRunConfig::effective_snapshot_stride() const {
  if (snapshot_stride > 0) return snapshot_stride;
  return std::max(1, steps() / 128);
}

double WaveRunConfig::effective_margin() const { return leakage_margin > 0.0 ? leakage_margin : grid.L / 8.0; }

double WaveTrajectory::max_relative_energy_drift() const {
  if (trace.empty()) return 0.0;
  const double e0 = trace.front().energy.total;
  double m = 0.0;
  for (const auto& s : trace) m = std::max(m, std::abs(s.energy.total - e0));
  return e0 == 0.0 ? m : m / std::abs(e0);
}

std::vector<double> WaveTrajectory::snapshot_times() const {
  std::vector<double> t;
  t.reserve(snapshots.size());
  for (const auto& s : snapshots) t.push_back(s.t);
  return t;
}

WaveIntegrator::WaveIntegrator(const GridSpec& grid, const NonlinearitySpec& spec, double dt)
    : ops_(grid), spec_(&spec), dt_(dt), acc_(grid.size()) {}

void WaveIntegrator::acceleration(const RealField& u) {
  ops_.laplacian(u, acc_);
  for (std::size_t i = 0; i < u.size(); ++i) acc_[i] -= spec_->f(u[i]);
}

void WaveIntegrator::step(WaveState& s) {
  const double t0 = s.t;
  const double half = 0.5 * dt_;
  acceleration(s.u);
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    s.ut[i] += half * acc_[i];
    s.u[i] += dt_ * s.ut[i];
  }
  acceleration(s.u);
  for (std::size_t i = 0; i < s.u.size(); ++i) s.ut[i] += half * acc_[i];
  s.t = t0 + dt_;
  if (!all_finite(s.u) || !all_finite(s.ut)) {
    throw NumericalAbort(fmt::format("wave solution became non-finite after t={}", t0), t0);
  }
}

WaveTrajectory run_wave(const WaveRunConfig& cfg) {
  cfg.validate();
  const int n = cfg.steps();
  const double dt = cfg.effective_dt();
  const int snap = cfg.effective_snapshot_stride();
  const double margin = cfg.effective_margin();
  WaveIntegrator integ(cfg.grid, cfg.spec, dt);
  WaveTrajectory traj;
  WaveState s = cfg.data;
  s.t = 0.0;

  auto record = [&](int k) {
    if (k % cfg.diagnostics_stride == 0 || k == n) {
      DiagnosticSample d;
      d.t = s.t;
      d.energy = wave_energy(s, cfg.spec, integ.ops());
      d.leakage = boundary_leakage(s.u, s.grid, margin, cfg.center);
      d.sup_norm = sup_norm(s.u);
      traj.max_leakage = std::max(traj.max_leakage, d.leakage);
      traj.trace.push_back(d);
    }
    if (k % snap == 0 || k == n) traj.snapshots.push_back(s);
  };

  record(0);
  for (int k = 1; k <= n; ++k) {
    integ.step(s);
    s.t = k * dt;  // avoid accumulated rounding in t
    record(k);
  }
  traj.leakage_flag = traj.max_leakage > cfg.leakage_tol;
  return traj;
}

WeakIdentityResult verify_prop_weak_identity(const std::vector<WaveState>& snaps, const NonlinearitySpec& spec) {
  WeakIdentityResult r;
  if (snaps.empty()) return r;
  const GridSpec& g = snaps.front().grid;
  SpectralOps ops(g);
  std::vector<double> t, integrand;
  std::vector<double> buf(g.size());
  for (const auto& s : snaps) {
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = s.u[i] * spec.f(s.u[i]) - s.ut[i] * s.ut[i];
    t.push_back(s.t);
    integrand.push_back(ops.gradient_norm_sq(s.u) + integrate(buf, g));
  }
  r.lhs = snaps.size() > 1 ? trapezoid(t, integrand) : 0.0;
  auto moment = [&](const WaveState& s) {
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = s.ut[i] * s.u[i];
    return integrate(buf, g);
  };
  r.rhs = moment(snaps.front()) - moment(snaps.back());
  const double denom = std::abs(r.lhs) + std::abs(r.rhs);
  r.residual = denom > 0.0 ? std::abs(r.lhs - r.rhs) / denom : 0.0;
  return r;
}

}  // namespace supercrit
