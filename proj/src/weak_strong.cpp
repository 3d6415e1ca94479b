#include "supercrit/weak_strong.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "supercrit/assumption_lab.hpp"
#include "supercrit/errors.hpp"
#include "supercrit/numerics.hpp"

namespace supercrit {

using cplx = std::complex<double>;

namespace {

template <class State>
void check_pair(const std::vector<State>& u, const std::vector<State>& v) {
  if (u.size() != v.size() || u.empty()) {
    throw std::invalid_argument(fmt::format("trajectory pair has {} vs {} snapshots", u.size(), v.size()));
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i].grid == v[i].grid)) throw std::invalid_argument("trajectory pair: mismatched grids");
    if (std::abs(u[i].t - v[i].t) > 1e-12 * (1.0 + std::abs(u[i].t))) {
      throw std::invalid_argument(fmt::format("trajectory pair: snapshot {} at t={} vs t={}", i, u[i].t, v[i].t));
    }
  }
}

template <class State>
std::vector<double> times_of(const std::vector<State>& s) {
  std::vector<double> t;
  for (const auto& x : s) t.push_back(x.t);
  return t;
}

double max_abs(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

// Per-snapshot quantities shared by the expansion and the Gronwall trace.
struct WavePairSample {
  double gap = 0.0;         // E(v) - E(u)
  double J = 0.0;
  double dI = 0.0;          // int (f(u) + f'(u) w - f(v)) u_t
  double Dw2 = 0.0;         // |w_t|^2 + |grad w|^2
  double w2 = 0.0;          // |w|^2
  double monotone = 0.0;    // int w (f(v) - f(u))
};

std::vector<WavePairSample> wave_pair_samples(const std::vector<WaveState>& u, const std::vector<WaveState>& v,
                                              const NonlinearitySpec& spec) {
  check_pair(u, v);
  const GridSpec& g = u.front().grid;
  SpectralOps ops(g);
  const std::size_t n = g.size();
  std::vector<WavePairSample> out(u.size());
  RealField w(n), wt(n), pot(n), di(n), mono(n);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const auto& a = u[k];
    const auto& b = v[k];
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = b.u[i] - a.u[i];
      wt[i] = b.ut[i] - a.ut[i];
      const double fu = spec.f(a.u[i]), fv = spec.f(b.u[i]);
      pot[i] = spec.F(b.u[i]) - spec.F(a.u[i]) - fu * w[i];
      di[i] = (fu + spec.fprime(a.u[i]) * w[i] - fv) * a.ut[i];
      mono[i] = w[i] * (fv - fu);
    }
    auto& s = out[k];
    s.gap = wave_energy(b, spec, ops).total - wave_energy(a, spec, ops).total;
    const double wt2 = l2_norm_sq(wt, g);
    const double gw2 = ops.gradient_norm_sq(w);
    s.J = 0.5 * (wt2 + gw2) + integrate(pot, g);
    s.dI = integrate(di, g);
    s.Dw2 = wt2 + gw2;
    s.w2 = l2_norm_sq(w, g);
    s.monotone = integrate(mono, g);
  }
  return out;
}

struct NlsPairSample {
  double gap = 0.0;
  double J = 0.0;
  double dI = 0.0;
  double gradw2 = 0.0;
  double w2 = 0.0;
  double shifted_potential = 0.0;  // int (F(|v|^2/2) - F(|u|^2/2) - f(u).w)
};

std::vector<NlsPairSample> nls_pair_samples(const std::vector<NlsState>& u, const std::vector<NlsState>& v,
                                            const NlsNonlinearitySpec& spec) {
  check_pair(u, v);
  const GridSpec& g = u.front().grid;
  SpectralOps ops(g);
  const std::size_t n = g.size();
  std::vector<NlsPairSample> out(u.size());
  ComplexField w(n), lap(n);
  RealField pot(n), di(n);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const auto& a = u[k];
    const auto& b = v[k];
    ops.laplacian(a.u, lap);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = b.u[i] - a.u[i];
      const cplx fu = spec.force(a.u[i]);
      const cplx fv = spec.force(b.u[i]);
      pot[i] = spec.potential(b.u[i]) - spec.potential(a.u[i]) - dot(fu, w[i]);
      const cplx x = fu - lap[i];
      const cplx ut(-x.imag(), x.real());  // i (f(u) - Lap u)
      di[i] = -dot(fv - fu - spec.dforce(a.u[i], w[i]), ut);
    }
    auto& s = out[k];
    s.gap = nls_energy(b, spec, ops).total - nls_energy(a, spec, ops).total;
    s.gradw2 = ops.gradient_norm_sq(w);
    s.shifted_potential = integrate(pot, g);
    s.J = 0.5 * s.gradw2 + s.shifted_potential;
    s.dI = integrate(di, g);
    s.w2 = l2_norm_sq(w, g);
  }
  return out;
}

template <class Sample>
ExpansionResult assemble_expansion(const std::vector<double>& t, const std::vector<Sample>& s) {
  ExpansionResult r;
  r.t = t;
  std::vector<double> dI;
  for (const auto& x : s) {
    r.energy_gap.push_back(x.gap);
    r.J.push_back(x.J);
    dI.push_back(x.dI);
  }
  r.I = cumulative_trapezoid(t, dI);
  const double c0 = r.energy_gap.front() - r.J.front();
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    worst = std::max(worst, std::abs(r.energy_gap[i] - r.J[i] - c0 - r.I[i]));
  }
  r.scale = max_abs(r.energy_gap) + max_abs(r.J) + max_abs(r.I);
  r.residual = r.scale > 0.0 ? worst / r.scale : 0.0;
  return r;
}

void fit_gronwall(GronwallTrace& g) {
  const auto& t = g.times;
  const double G0 = g.G.front() + kGronwallFloor;
  g.fitted_G0 = G0;
  double C = 0.0, growth = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    growth = std::max(growth, g.G[i] / G0);
    const double dt = t[i] - t.front();
    if (dt > 0.0 && g.G[i] > G0) C = std::max(C, std::log(g.G[i] / G0) / dt);
  }
  g.fitted_C = C;
  g.max_growth = growth;
  if (t.size() >= 2) {
    std::vector<double> y;
    for (double x : g.G) y.push_back(std::log(x + kGronwallFloor));
    g.ls_rate = fit_line(t, y).slope;
    std::vector<double> integrand(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) integrand[i] = g.G[i] + g.w_l2[i];
    const auto cum = cumulative_trapezoid(t, integrand);
    double ci = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (cum[i] > 0.0) ci = std::max(ci, (g.G[i] - g.G.front()) / cum[i]);
    }
    g.integral_C = ci;
  }
}

}  // namespace

double GronwallTrace::bound(double t) const {
  const double t0 = times.empty() ? 0.0 : times.front();
  return fitted_G0 * std::exp(fitted_C * (t - t0));
}

bool GronwallTrace::bound_holds(double tol) const {
  for (std::size_t i = 0; i < times.size(); ++i)
    if (G[i] > bound(times[i]) * (1.0 + tol)) return false;
  return true;
}

ExpansionResult energy_expansion(const std::vector<WaveState>& u, const std::vector<WaveState>& v,
                                 const NonlinearitySpec& spec) {
  const auto s = wave_pair_samples(u, v, spec);
  return assemble_expansion(times_of(u), s);
}

ExpansionResult energy_expansion(const std::vector<NlsState>& u, const std::vector<NlsState>& v,
                                 const NlsNonlinearitySpec& spec) {
  const auto s = nls_pair_samples(u, v, spec);
  return assemble_expansion(times_of(u), s);
}

GronwallTrace gronwall_trace_wave(const std::vector<WaveState>& u, const std::vector<WaveState>& v,
                                  const NonlinearitySpec& spec) {
  const auto s = wave_pair_samples(u, v, spec);
  const auto t = times_of(u);
  const auto ex = assemble_expansion(t, s);
  GronwallTrace g;
  g.times = t;
  g.I = ex.I;
  g.J = ex.J;
  for (const auto& x : s) {
    g.G.push_back(x.Dw2);
    g.w_l2.push_back(x.w2);
  }
  fit_gronwall(g);
  return g;
}

GronwallTrace gronwall_trace_nls(const std::vector<NlsState>& u, const std::vector<NlsState>& v,
                                 const NlsNonlinearitySpec& spec, double A) {
  const auto s = nls_pair_samples(u, v, spec);
  const auto t = times_of(u);
  const auto ex = assemble_expansion(t, s);
  const GridSpec& grid = u.front().grid;
  const double floor = -1e-9 * static_cast<double>(grid.size()) * grid.cell_volume();
  GronwallTrace g;
  g.times = t;
  g.I = ex.I;
  g.J = ex.J;
  g.A = A;
  for (std::size_t i = 0; i < s.size(); ++i) {
    g.G.push_back(s[i].gradw2 + (A + 1.0) * s[i].w2);
    g.w_l2.push_back(s[i].w2);
    const double rem = (A + 1.0) * s[i].w2 + s[i].shifted_potential;
    g.remainder.push_back(rem);
    if (rem < floor) {
      throw InvariantViolation(
          fmt::format("shifted remainder {} < {} at t={}: A={} is not admissible", rem, floor, t[i], A));
    }
  }
  fit_gronwall(g);
  return g;
}

std::string_view to_string(LadderMode m) {
  switch (m) {
    case LadderMode::TruncationLadder: return "truncation";
    case LadderMode::CoarseGrid: return "coarse_grid";
    case LadderMode::PerturbedData: return "perturbed";
  }
  return "unknown";
}

void WeakApproxConfig::validate() const {
  std::vector<std::string> problems;
  if (values.empty()) problems.push_back("ladder: no values");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      problems.push_back(fmt::format("ladder: values must be strictly increasing ({} after {})", values[i], values[i - 1]));
      break;
    }
  }
  const bool wave = std::holds_alternative<WaveRunConfig>(base);
  const GridSpec& g = wave ? std::get<WaveRunConfig>(base).grid : std::get<NlsRunConfig>(base).grid;
  switch (mode) {
    case LadderMode::TruncationLadder:
      if (!wave) problems.push_back("ladder: truncation mode needs a wave configuration");
      for (double k : values)
        if (!(k > 0.0)) problems.push_back(fmt::format("ladder: truncation height {} must be positive", k));
      break;
    case LadderMode::CoarseGrid:
      for (double n : values) {
        const int N = static_cast<int>(n);
        if (N != n || N < 8 || !is_power_of_two(N) || N > g.N) {
          problems.push_back(fmt::format("ladder: coarse N={} must be a power of two in [8, {}]", n, g.N));
        }
      }
      break;
    case LadderMode::PerturbedData:
      for (double e : values)
        if (!(e > 0.0)) problems.push_back(fmt::format("ladder: perturbation size {} must be positive", e));
      break;
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

namespace {

// Coarse grid with the same d and L, sampled at the nested points.
template <class Field>
Field restrict_field(const Field& fine, const GridSpec& fg, const GridSpec& cg) {
  const int r = fg.N / cg.N;
  Field out(cg.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto idx = cg.unravel(i);
    std::size_t j = 0;
    for (int a = 0; a < cg.d; ++a) j = j * fg.N + static_cast<std::size_t>(idx[a] * r);
    out[i] = fine[j];
  }
  return out;
}

ConvergenceReport ladder_report(const std::vector<double>& ks, const std::vector<TruncationLevel>& levels,
                                const std::vector<WaveTrajectory>& runs, const NonlinearitySpec& spec,
                                double energy_tol) {
  ConvergenceReport rep;
  rep.energy_tolerance = energy_tol;
  const auto& ref = runs.back().snapshots;
  const GridSpec& g = ref.front().grid;
  std::vector<NonlinearitySpec> truncated;
  for (const auto& lv : levels) truncated.push_back(truncate(spec, lv));
  for (std::size_t i = 0; i < ks.size(); ++i) {
    LadderLevel L;
    L.value = ks[i];
    L.truncation = levels[i];
    const auto& snaps = runs[i].snapshots;
    if (snaps.size() != ref.size()) throw std::invalid_argument("ladder runs have different snapshot counts");
    std::vector<double> t, force;
    RealField diff(g.size()), fd(g.size());
    for (std::size_t k = 0; k < snaps.size(); ++k) {
      for (std::size_t j = 0; j < diff.size(); ++j) {
        diff[j] = snaps[k].u[j] - ref[k].u[j];
        fd[j] = std::abs(truncated[i].f(snaps[k].u[j]) - spec.f(ref[k].u[j]));
      }
      L.sup_l2_discrepancy = std::max(L.sup_l2_discrepancy, std::sqrt(l2_norm_sq(diff, g)));
      t.push_back(snaps[k].t);
      force.push_back(integrate(fd, g));
      L.sup_norm = std::max(L.sup_norm, sup_norm(snaps[k].u));
    }
    L.force_l1_discrepancy = t.size() > 1 ? trapezoid(t, force) : 0.0;
    const auto& tr = runs[i].trace;
    const double e0 = tr.front().energy.total;
    double excess = 0.0;
    for (const auto& d : tr) excess = std::max(excess, d.energy.total - e0);
    L.max_energy_excess = e0 != 0.0 ? excess / std::abs(e0) : excess;
    L.energy_inequality = excess <= energy_tol * std::abs(e0);
    if (!L.energy_inequality) {
      rep.energy_inequality = false;
      rep.flags.push_back(fmt::format("k={}: energy rises by {:.3e} relative", ks[i], L.max_energy_excess));
    }
    rep.levels.push_back(L);
  }
  constexpr double kAbsFloor = 1e-12;
  for (std::size_t i = 1; i < rep.levels.size(); ++i) {
    const auto& a = rep.levels[i - 1];
    const auto& b = rep.levels[i];
    if (b.sup_l2_discrepancy > (1.0 + rep.monotone_slack) * a.sup_l2_discrepancy + kAbsFloor) {
      rep.l2_monotone = false;
      rep.flags.push_back(fmt::format("L2 discrepancy rises from k={} to k={}", a.value, b.value));
    }
    if (b.force_l1_discrepancy > (1.0 + rep.monotone_slack) * a.force_l1_discrepancy + kAbsFloor) {
      rep.force_monotone = false;
      rep.flags.push_back(fmt::format("force discrepancy rises from k={} to k={}", a.value, b.value));
    }
  }
  return rep;
}

struct TruncatedRuns {
  std::vector<TruncationLevel> levels;
  std::vector<WaveTrajectory> runs;
};

TruncatedRuns run_truncation_ladder(const WeakApproxConfig& cfg) {
  const auto& base = std::get<WaveRunConfig>(cfg.base);
  TruncatedRuns out;
  for (double k : cfg.values) out.levels.push_back(find_truncation_abscissae(base.spec, k, cfg.truncation_C));
  out.runs.resize(cfg.values.size());
  parallel_for(cfg.values.size(), cfg.jobs, [&](std::size_t i) {
    WaveRunConfig c = base;
    c.spec = truncate(base.spec, out.levels[i]);
    out.runs[i] = run_wave(c);
  });
  return out;
}

}  // namespace

ConvergenceReport appendix_construction(const WeakApproxConfig& cfg) {
  cfg.validate();
  if (cfg.mode != LadderMode::TruncationLadder) throw ConfigError({"appendix construction needs a truncation ladder"});
  if (cfg.values.size() < 3) throw ConfigError({"appendix construction needs at least 3 ladder levels"});
  const auto tr = run_truncation_ladder(cfg);
  return ladder_report(cfg.values, tr.levels, tr.runs, std::get<WaveRunConfig>(cfg.base).spec, 1e-6);
}

UiProbeResult uniform_integrability_probe(const std::vector<WaveState>& traj, const NonlinearitySpec& spec,
                                          std::size_t trials, std::uint64_t seed, double q_max) {
  UiProbeResult r;
  if (traj.empty()) {
    r.vacuous = true;
    return r;
  }
  const GridSpec& g = traj.front().grid;
  const double q = spec.growth ? spec.growth->q : std::numeric_limits<double>::quiet_NaN();
  const double ts = two_star(g.d);
  r.critical = std::isfinite(ts) ? ts : q_max;
  r.eta = r.critical - q;
  r.threshold = r.eta / r.critical - 0.1;

  // Space-time cells: trapezoid weight in time times h^d in space.
  std::vector<double> tw(traj.size(), 0.0);
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double dt = traj[k].t - traj[k - 1].t;
    tw[k - 1] += 0.5 * dt;
    tw[k] += 0.5 * dt;
  }
  if (traj.size() == 1) tw[0] = 1.0;
  const std::size_t n = g.size();
  const std::size_t M = n * traj.size();
  std::vector<double> measure(M), mass(M);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double m = tw[k] * g.cell_volume();
      measure[k * n + j] = m;
      mass[k * n + j] = m * std::abs(spec.f(traj[k].u[j]));
    }
  }
  if (pairwise_sum(mass) == 0.0) {
    r.vacuous = true;
    return r;
  }

  std::vector<std::size_t> perm(M);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(derive_seed(seed, 7));
  std::vector<double> lx, ly;
  std::vector<double> em, ef;
  auto add_point = [&](double E, double I) {
    ++r.trials;
    if (E > 0.0 && I > 0.0) {
      lx.push_back(std::log(E));
      ly.push_back(std::log(I));
    } else {
      ++r.zero_trials;
    }
  };
  add_point(pairwise_sum(measure), pairwise_sum(mass));  // the full box anchors the fit
  for (std::size_t trial = 1; trial < trials; ++trial) {
    const double frac = std::pow(10.0, -4.0 * rng.uniform());
    const std::size_t m = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(frac * M)), 1, M);
    em.clear();
    ef.clear();
    for (std::size_t i = 0; i < m; ++i) {  // partial Fisher-Yates
      const std::size_t j = i + rng.below(M - i);
      std::swap(perm[i], perm[j]);
      em.push_back(measure[perm[i]]);
      ef.push_back(mass[perm[i]]);
    }
    add_point(pairwise_sum(em), pairwise_sum(ef));
  }
  if (lx.size() < 2) {
    r.vacuous = true;
    return r;
  }
  const auto fit = fit_line(lx, ly);
  r.slope = fit.slope;
  r.intercept = fit.intercept;
  r.passes = std::isfinite(r.threshold) && r.slope >= r.threshold;
  return r;
}

Main33Result lemma_main33_probe(const std::vector<WaveState>& u, const std::vector<WaveState>& v,
                                const NonlinearitySpec& spec) {
  if (spec.assumption_class != AssumptionClass::Defocusing) {
    throw std::invalid_argument(fmt::format("lemma probe needs a defocusing nonlinearity, got {}", spec.name));
  }
  const auto s = wave_pair_samples(u, v, spec);
  Main33Result r;
  r.t = times_of(u);
  std::vector<double> dI, w2, mono;
  for (const auto& x : s) {
    dI.push_back(x.dI);
    w2.push_back(x.w2);
    mono.push_back(x.monotone);
  }
  r.I = cumulative_trapezoid(r.t, dI);
  r.w_l2_integral = cumulative_trapezoid(r.t, w2);
  r.monotone_term = cumulative_trapezoid(r.t, mono);
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    const double rhs = r.w_l2_integral[i] + r.monotone_term[i];
    if (r.I[i] <= 0.0) continue;
    if (rhs > 0.0) r.C = std::max(r.C, r.I[i] / rhs);
    else r.finite = false;
  }
  if (!r.finite) r.C = std::numeric_limits<double>::infinity();
  return r;
}

WeakStrongResult run_weak_strong(const WeakApproxConfig& cfg) {
  cfg.validate();
  WeakStrongResult out;
  out.mode = cfg.mode;
  out.values = cfg.values;
  const std::size_t n = cfg.values.size();

  if (const auto* wb = std::get_if<WaveRunConfig>(&cfg.base)) {
    const WaveTrajectory u = run_wave(*wb);
    std::vector<std::vector<WaveState>> v(n);
    if (cfg.mode == LadderMode::TruncationLadder) {
      const auto tr = run_truncation_ladder(cfg);
      for (std::size_t i = 0; i < n; ++i) v[i] = tr.runs[i].snapshots;
      if (n >= 3) out.convergence = ladder_report(cfg.values, tr.levels, tr.runs, wb->spec, 1e-6);
    } else {
      parallel_for(n, cfg.jobs, [&](std::size_t i) {
        WaveRunConfig c = *wb;
        if (cfg.mode == LadderMode::PerturbedData) {
          c.data = perturb(wb->data, cfg.perturbation, cfg.values[i]);
          v[i] = run_wave(c).snapshots;
          return;
        }
        GridSpec cg = wb->grid;
        cg.N = static_cast<int>(cfg.values[i]);
        c.grid = cg;
        c.dt = wb->effective_dt();
        c.data = WaveState{cg, restrict_field(wb->data.u, wb->grid, cg), restrict_field(wb->data.ut, wb->grid, cg), 0.0};
        auto snaps = run_wave(c).snapshots;
        for (auto& s : snaps) {
          s.u = spectral_prolong(s.u, cg, wb->grid);
          s.ut = spectral_prolong(s.ut, cg, wb->grid);
          s.grid = wb->grid;
        }
        v[i] = std::move(snaps);
      });
    }
    for (std::size_t i = 0; i < n; ++i) {
      out.traces.push_back(gronwall_trace_wave(u.snapshots, v[i], wb->spec));
      out.expansions.push_back(energy_expansion(u.snapshots, v[i], wb->spec));
    }
    return out;
  }

  const auto& nb = std::get<NlsRunConfig>(cfg.base);
  if (cfg.mode == LadderMode::TruncationLadder) throw ConfigError({"ladder: truncation mode needs a wave configuration"});
  const NlsTrajectory u = run_nls(nb);
  const double R = cfg.shift_R > 0.0 ? cfg.shift_R : 1.5 * sup_norm(nb.data.u) + 1.0;
  SamplingPlan plan;
  plan.random_pairs = 200000;
  const double A = find_convexity_shift(nb.spec, R, plan).value;
  std::vector<std::vector<NlsState>> v(n);
  parallel_for(n, cfg.jobs, [&](std::size_t i) {
    NlsRunConfig c = nb;
    if (cfg.mode == LadderMode::PerturbedData) {
      c.data = perturb(nb.data, cfg.perturbation, cfg.values[i]);
      v[i] = run_nls(c).snapshots;
      return;
    }
    GridSpec cg = nb.grid;
    cg.N = static_cast<int>(cfg.values[i]);
    c.grid = cg;
    c.dt = nb.effective_dt();
    c.data = NlsState{cg, restrict_field(nb.data.u, nb.grid, cg), 0.0};
    auto snaps = run_nls(c).snapshots;
    for (auto& s : snaps) {
      s.u = spectral_prolong(s.u, cg, nb.grid);
      s.grid = nb.grid;
    }
    v[i] = std::move(snaps);
  });
  for (std::size_t i = 0; i < n; ++i) {
    out.traces.push_back(gronwall_trace_nls(u.snapshots, v[i], nb.spec, A));
    out.expansions.push_back(energy_expansion(u.snapshots, v[i], nb.spec));
  }
  return out;
}

namespace {

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json to_json(const GronwallTrace& g) {
  nlohmann::json j = {{"fitted_C", num(g.fitted_C)},
                      {"fitted_G0", num(g.fitted_G0)},
                      {"ls_rate", num(g.ls_rate)},
                      {"integral_C", num(g.integral_C)},
                      {"max_growth", num(g.max_growth)},
                      {"bound_holds", g.bound_holds()},
                      {"samples", g.times.size()}};
  if (!g.remainder.empty()) {
    j["A"] = g.A;
    j["min_remainder"] = *std::min_element(g.remainder.begin(), g.remainder.end());
  }
  return j;
}

nlohmann::json to_json(const ConvergenceReport& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& L : r.levels) {
    levels.push_back({{"k", L.value},
                      {"r_plus", L.truncation.r_plus},
                      {"r_minus", L.truncation.r_minus},
                      {"sup_l2_discrepancy", num(L.sup_l2_discrepancy)},
                      {"force_l1_discrepancy", num(L.force_l1_discrepancy)},
                      {"max_energy_excess", num(L.max_energy_excess)},
                      {"energy_inequality", L.energy_inequality},
                      {"sup_norm", num(L.sup_norm)}});
  }
  return {{"levels", levels},
          {"energy_tolerance", r.energy_tolerance},
          {"monotone_slack", r.monotone_slack},
          {"l2_monotone", r.l2_monotone},
          {"force_monotone", r.force_monotone},
          {"energy_inequality", r.energy_inequality},
          {"flags", r.flags}};
}

nlohmann::json to_json(const UiProbeResult& r) {
  return {{"vacuous", r.vacuous},   {"slope", num(r.slope)},         {"intercept", num(r.intercept)},
          {"eta", num(r.eta)},      {"critical", num(r.critical)},   {"threshold", num(r.threshold)},
          {"passes", r.passes},     {"trials", r.trials},            {"zero_trials", r.zero_trials}};
}

}  // namespace supercrit
