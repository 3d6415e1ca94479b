// Acceptance gates 1-8. Usage: acceptance <n> [path-to-supercrit]
// Prints one PASS/FAIL line per gate and exits non-zero on FAIL.
// Tolerances are pinned below; nothing is read from the environment.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "supercrit/assumption_lab.hpp"
#include "supercrit/config.hpp"
#include "supercrit/errors.hpp"
#include "supercrit/numerics.hpp"
#include "supercrit/weak_strong.hpp"

using namespace supercrit;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, std::string what) {
    if (!ok) pass = false;
    lines.push_back(fmt::format("  [{}] {}", ok ? "ok" : "xx", what));
  }
};

double ratio_spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

// Slope of log(err) against log(h); with h halving per level this is the order.
double ls_order(const std::vector<double>& err) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < err.size(); ++i) {
    x.push_back(-static_cast<double>(i) * std::log(2.0));
    y.push_back(std::log(err[i]));
  }
  return fit_line(x, y).slope;
}

std::string join(const std::vector<double>& v, int digits = 4) {
  std::string s;
  for (double x : v) s += fmt::format("{}{:.{}g}", s.empty() ? "" : ", ", x, digits);
  return "[" + s + "]";
}

WaveRunConfig wave_cfg(const NonlinearitySpec& spec, int N, double L, double a, double r, VelocityProfile p) {
  WaveRunConfig c;
  c.grid = GridSpec{1, N, L};
  c.spec = spec;
  c.T = 1.0;
  c.data = make_wave_data(c.grid, Bump{a, r, {}}, p);
  return c;
}

NlsRunConfig nls_cfg(double dt) {
  NlsRunConfig c;
  c.grid = GridSpec{1, 256, 64.0};
  c.spec = nls_coercive_exp();
  c.dt = dt;
  c.T = 1.0;
  c.data = make_nls_data(c.grid, Bump{0.5, 4.0, {}});
  return c;
}

// ---------------------------------------------------------------- 1

Verdict algebraic_identities() {
  Verdict v;
  constexpr double kCancelTol = 1e-12;
  for (const auto& s : builtin_catalog().nls) {
    const auto r = verify_nls_cancellation(s, 100'000);
    v.check(r.holds && r.constant.value < kCancelTol,
            fmt::format("cancellation {}: worst relative residual {:.3g} (< {})", s.name, r.constant.value, kCancelTol));
  }

  constexpr double kKnotTol = 1e-6;
  double worst = 0.0;
  const double h = 1e-7;
  for (double k : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    for (double knot : {k, 2 * k, -k, -2 * k}) {
      const double left = (beta_cutoff(knot, k) - beta_cutoff(knot - h, k)) / h;
      const double right = (beta_cutoff(knot + h, k) - beta_cutoff(knot, k)) / h;
      const double jump = std::abs(beta_cutoff(knot + 1e-12, k) - beta_cutoff(knot - 1e-12, k));
      worst = std::max({worst, std::abs(left - right), jump});
    }
  }
  v.check(worst < kKnotTol, fmt::format("beta_k C^1 residual at knots {:.3g} (< {})", worst, kKnotTol));

  // f_k == f and F_k == F on the interior window, frozen slope outside
  std::size_t mismatches = 0;
  for (const auto& s : builtin_catalog().wave) {
    for (double k : {1.0, 2.0, 4.0}) {
      const auto lvl = find_truncation_abscissae(s, k, 1.0);
      const auto t = truncate(s, lvl);
      for (int i = 1; i < 400; ++i) {
        const double u = lvl.r_minus + (lvl.r_plus - lvl.r_minus) * i / 400.0;
        if (t.f(u) != s.f(u) || t.F(u) != s.F(u)) ++mismatches;
      }
      for (double out : {lvl.r_plus + 0.5, lvl.r_plus + 3.0}) {
        if (t.f(out) != s.f(lvl.r_plus)) ++mismatches;
      }
      for (double out : {lvl.r_minus - 0.5, lvl.r_minus - 3.0}) {
        if (t.f(out) != s.f(lvl.r_minus)) ++mismatches;
      }
    }
  }
  v.check(mismatches == 0, fmt::format("piecewise f_k/F_k mismatches on catalog x k in {{1,2,4}}: {}", mismatches));
  return v;
}

// ---------------------------------------------------------------- 2

void report(Verdict& v, const std::string& name, const InequalityReport& r) {
  std::string what = r.holds ? fmt::format("constant {:.4g}", r.constant.value)
                     : r.violation_count ? fmt::format("{} violations", r.violation_count)
                                         : std::string("no constant");
  if (!r.note.empty()) what += " (" + r.note + ")";
  v.check(r.holds, fmt::format("{} {}: {}", name, to_string(r.inequality), what));
}

Verdict assumption_suite() {
  Verdict v;
  LabOptions opt;  // fixed plan: seed 20240611, 1e6 pairs, 201 grid points
  opt.d = 1;
  const auto cat = builtin_catalog();
  for (const auto& s : cat.wave) {
    for (const auto& r : classify(s, opt)) {
      report(v, s.name, r);
    }
    if (s.assumption_class == AssumptionClass::Oscillating) {
      const auto h21 = check_lower_bound(s, 1.0);
      v.check(h21.holds, fmt::format("{} H21 with C=1", s.name));
      const auto low = check_truncation_lower_bound(s, 1.0, opt.truncation_ladder);
      v.check(low.holds, fmt::format("{} Lower with C=1 on k in {{1,2,4,8}}", s.name));
    }
  }
  for (const auto& s : cat.nls) {
    for (const auto& r : classify(s, opt)) {
      report(v, s.name, r);
    }
  }
  return v;
}

// ---------------------------------------------------------------- 3

Verdict conservation() {
  Verdict v;
  constexpr double kDrift = 1e-6, kMass = 1e-12;
  constexpr double kRatioLo = 3.0, kRatioHi = 5.0;

  std::vector<double> wd;
  for (double f : {1.0, 0.5}) {
    auto c = wave_cfg(defocusing_exp(2), 256, 8.0, 0.2, 2.0, VelocityProfile::Traveling);
    c.dt = 0.25 * c.grid.h() * f;
    wd.push_back(run_wave(c).max_relative_energy_drift());
  }
  v.check(wd[0] < kDrift, fmt::format("wave energy drift at dt=0.25h: {:.3g} (< {})", wd[0], kDrift));
  const double wr = wd[0] / wd[1];
  v.check(wr >= kRatioLo && wr <= kRatioHi, fmt::format("wave drift ratio under dt halving: {:.3f} (in [3,5])", wr));

  std::vector<double> md, hd;
  for (double dt : {1e-3, 5e-4}) {
    const auto tr = run_nls(nls_cfg(dt));
    md.push_back(tr.max_relative_mass_drift());
    hd.push_back(tr.max_relative_hamiltonian_drift());
  }
  v.check(std::max(md[0], md[1]) < kMass, fmt::format("NLS mass drift: {:.3g} (< {})", std::max(md[0], md[1]), kMass));
  v.check(hd[0] < kDrift, fmt::format("NLS Hamiltonian drift at dt=1e-3: {:.3g} (< {})", hd[0], kDrift));
  const double nr = hd[0] / hd[1];
  v.check(nr >= kRatioLo && nr <= kRatioHi, fmt::format("NLS Hamiltonian drift ratio: {:.3f} (in [3,5])", nr));
  return v;
}

// ---------------------------------------------------------------- 4, 5

WaveRunConfig refinement_cfg(int N) {
  auto c = wave_cfg(defocusing_exp(2), N, 8.0, 0.5, 2.0, VelocityProfile::Traveling);
  c.dt = c.grid.h() / 8;
  c.snapshot_stride = 1;
  return c;
}

Verdict weak_identity() {
  Verdict v;
  constexpr double kResidual = 1e-4, kOrder = 2.0;
  std::vector<double> res;
  for (int N : {128, 256, 512}) res.push_back(verify_prop_weak_identity(run_wave(refinement_cfg(N)).snapshots, defocusing_exp(2)).residual);
  v.check(res[1] < kResidual, fmt::format("residual at N=256: {:.3g} (< {})", res[1], kResidual));
  const auto pw = convergence_orders(res);
  const double order = ls_order(res);
  v.check(order >= kOrder, fmt::format("least-squares order over N=128,256,512: {:.5f} (>= {}); pairwise {}; residuals {}",
                                       order, kOrder, join(pw, 6), join(res)));
  return v;
}

Verdict energy_expansion_order() {
  Verdict v;
  constexpr double kOrder = 2.0;
  std::vector<double> res;
  double self = -1.0;
  for (int N : {128, 256, 512}) {
    const auto c = refinement_cfg(N);
    const auto u = run_wave(c).snapshots;
    auto cv = c;
    cv.data = perturb(c.data, Bump{1.0, 1.0, {}}, 1e-2);
    const auto w = run_wave(cv).snapshots;
    res.push_back(energy_expansion(u, w, c.spec).residual);
    if (N == 128) self = energy_expansion(u, u, c.spec).residual;
  }
  v.check(self == 0.0, fmt::format("v = u residual: {} (== 0)", self));
  const double order = ls_order(res);
  v.check(order >= kOrder, fmt::format("least-squares order over N=128,256,512: {:.5f} (>= {}); pairwise {}; residuals {}",
                                       order, kOrder, join(convergence_orders(res), 6), join(res)));
  return v;
}

// ---------------------------------------------------------------- 6

Verdict gronwall_ladder() {
  Verdict v;
  constexpr double kScaleFactor = 2.0, kGrowthSpread = 0.5, kCStable = 0.2;
  const std::vector<double> eps{1e-3, 1e-2, 1e-1};

  auto assess = [&](const std::string& label, const std::function<WeakApproxConfig(double)>& make) {
    std::vector<double> C_by_dt;
    std::vector<std::vector<double>> Cs;
    for (double f : {1.0, 0.5}) {
      const auto r = run_weak_strong(make(f));
      std::vector<double> g0, growth, C;
      bool bound = true;
      for (std::size_t i = 0; i < r.traces.size(); ++i) {
        g0.push_back((r.traces[i].fitted_G0 - kGronwallFloor) / (eps[i] * eps[i]));
        growth.push_back(r.traces[i].max_growth);
        C.push_back(r.traces[i].fitted_C);
        bound = bound && r.traces[i].bound_holds();
      }
      Cs.push_back(C);
      if (f != 1.0) continue;
      v.check(ratio_spread(g0) <= kScaleFactor, fmt::format("{} G(0)/eps^2 {} spread x{:.4f} (<= {})", label, join(g0),
                                                            ratio_spread(g0), kScaleFactor));
      v.check(ratio_spread(growth) - 1.0 < kGrowthSpread,
              fmt::format("{} sup G/G(0) {} spread {:.2f}% (< {}%)", label, join(growth),
                          100 * (ratio_spread(growth) - 1.0), 100 * kGrowthSpread));
      v.check(bound, fmt::format("{} G(t) <= G(0) e^(Ct) on every trace", label));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i) worst = std::max(worst, std::abs(Cs[1][i] / Cs[0][i] - 1.0));
    v.check(worst <= kCStable, fmt::format("{} fitted C {} vs {} under dt halving: max change {:.2f}% (<= {}%)", label,
                                           join(Cs[0]), join(Cs[1]), 100 * worst, 100 * kCStable));
  };

  for (const auto& spec : {defocusing_exp(1), oscillating_sin(1)}) {
    assess(spec.name, [&](double f) {
      WeakApproxConfig w;
      w.mode = LadderMode::PerturbedData;
      w.values = eps;
      auto c = wave_cfg(spec, 256, 16.0, 0.5, 2.0, VelocityProfile::Rest);
      c.dt = wave_cfl_limit(c.grid) * f;
      c.snapshot_stride = 1;
      w.base = c;
      w.jobs = 3;
      return w;
    });
  }
  assess("nls_coercive_exp", [&](double f) {
    WeakApproxConfig w;
    w.mode = LadderMode::PerturbedData;
    w.values = eps;
    auto c = nls_cfg(1e-3 * f);
    c.snapshot_stride = 1;
    w.base = c;
    w.jobs = 3;
    return w;
  });
  return v;
}

// ---------------------------------------------------------------- 7

Verdict appendix() {
  Verdict v;
  WeakApproxConfig w;
  w.mode = LadderMode::TruncationLadder;
  w.values = {1.0, 2.0, 4.0, 8.0};
  w.base = wave_cfg(oscillating_sin(1), 256, 16.0, 4.0, 2.0, VelocityProfile::Rest);
  w.truncation_C = 1.0;
  w.jobs = 4;
  const auto rep = appendix_construction(w);
  std::vector<double> l2, force, excess;
  for (const auto& l : rep.levels) {
    l2.push_back(l.sup_l2_discrepancy);
    force.push_back(l.force_l1_discrepancy);
    excess.push_back(l.max_energy_excess);
  }
  v.check(rep.l2_monotone, fmt::format("sup L2 discrepancy {} monotone within {}%", join(l2), 100 * rep.monotone_slack));
  v.check(rep.force_monotone, fmt::format("L1 force discrepancy {} monotone within {}%", join(force), 100 * rep.monotone_slack));
  v.check(rep.energy_inequality, fmt::format("energy excess (E(t)-E(0))/|E(0)| {} (<= {})", join(excess), rep.energy_tolerance));

  // d = 3 smoke run: probe the original force along the finest truncated run
  const auto spec = oscillating_sin(1);
  WaveRunConfig c;
  c.grid = GridSpec{3, 32, 8.0};
  c.spec = truncate(spec, find_truncation_abscissae(spec, 8.0, 1.0));
  c.T = 0.5;
  c.data = make_wave_data(c.grid, Bump{1.0, 1.5, {}}, VelocityProfile::Rest);
  const auto ui = uniform_integrability_probe(run_wave(c).snapshots, spec, 400);
  v.check(!ui.vacuous && ui.slope >= ui.threshold,
          fmt::format("UI probe slope {:.4f} (>= eta/2* - 0.1 = {:.4f}, eta = {}, 2* = {})", ui.slope, ui.threshold, ui.eta,
                      ui.critical));
  return v;
}

// ---------------------------------------------------------------- 8

int run_cli(const std::string& cli, const std::string& args, const fs::path& log) {
  const auto cmd = fmt::format("'{}' {} >'{}' 2>&1", cli, args, log.string());
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

// Only directory in out/ after a single run.
fs::path only_run(const fs::path& out) {
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(out))
    if (e.is_directory()) dirs.push_back(e.path());
  return dirs.size() == 1 ? dirs[0] : fs::path{};
}

Verdict determinism(const std::string& cli) {
  Verdict v;
  if (cli.empty() || !fs::exists(cli)) {
    v.check(false, "CLI binary path missing");
    return v;
  }
  const fs::path root = fs::temp_directory_path() / fmt::format("supercrit-accept-{}", ::getpid());
  fs::remove_all(root);
  fs::create_directories(root);
  const auto log = root / "log.txt";

  const std::string base =
      "[nonlinearity]\nname = defocusing_exp:m=1\n[grid]\nN = 128\n[time]\nT = 0.5\n"
      "[ladder]\nvalues = 0.01, 0.1\n";
  write(root / "ws.ini", "[experiment]\nkind = weak-strong\n" + base);

  // byte-identical payloads from two fresh runs
  std::vector<std::map<std::string, std::string>> payloads;
  // same output_dir both times: it is part of the stored config
  for (int rep = 1; rep <= 2; ++rep) {
    const int code = run_cli(cli, fmt::format("weak-strong --config '{}' --output '{}'", (root / "ws.ini").string(),
                                              (root / "a").string()), log);
    v.check(code == 0, fmt::format("weak-strong run {} exit code {} (== 0)", rep, code));
    std::map<std::string, std::string> files;
    const auto dir = only_run(root / "a");
    if (!dir.empty())
      for (const auto& e : fs::directory_iterator(dir))
        if (e.path().filename() != "manifest.json") files[e.path().filename().string()] = slurp(e.path());
    payloads.push_back(files);
  }
  v.check(!payloads[0].empty() && payloads[0] == payloads[1],
          fmt::format("{} payload files byte-identical across reruns", payloads[0].size()));

  // canonical text is a fixed point of parse/serialize, and so is the copy the runner stored
  const auto cfg = parse_config(slurp(root / "ws.ini"));
  const auto canon = serialize_config(cfg);
  const bool fixed = serialize_config(parse_config(canon)) == canon && parse_config(canon) == cfg;
  const auto dir = only_run(root / "a");
  const bool stored = !dir.empty() && parse_config(slurp(dir / "config.ini")) == parse_config(canon, {{"experiment.output_dir", (root / "a").string()}});
  v.check(fixed && stored, "config round trip: parse(serialize(c)) == c, stored config.ini reparses to the run config");

  // exit-code contract
  write(root / "bad.ini", "[nonlinearity]\nname = defocusing_exp:m=1\n[grid]\nN = 100\n");
  int code = run_cli(cli, fmt::format("simulate-wave --config '{}' --output '{}'", (root / "bad.ini").string(), (root / "c").string()), log);
  v.check(code == 2, fmt::format("invalid config exit code {} (== 2)", code));

  write(root / "blow.ini", "[nonlinearity]\nname = defocusing_exp:m=1\n[grid]\nN = 64\n[data]\namplitude = 3\n");
  code = run_cli(cli, fmt::format("simulate-wave --config '{}' --output '{}'", (root / "blow.ini").string(), (root / "c").string()), log);
  v.check(code == 3, fmt::format("stiff blow-up exit code {} (== 3)", code));

  write(root / "leak.ini", "[nonlinearity]\nname = defocusing_exp:m=1\n[grid]\nN = 64\nL = 4\n[data]\nradius = 1.5\n[time]\nT = 2\n");
  code = run_cli(cli, fmt::format("simulate-wave --config '{}' --output '{}'", (root / "leak.ini").string(), (root / "c").string()), log);
  v.check(code == 4, fmt::format("boundary leakage exit code {} (== 4)", code));

  code = run_cli(cli, fmt::format("simulate-wave --config '{}' --output '{}'", (root / "ws.ini").string(), (root / "c").string()), log);
  v.check(code == 0, fmt::format("healthy simulate-wave exit code {} (== 0)", code));

  fs::remove_all(root);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    fmt::print(stderr, "usage: acceptance <1-8> [supercrit-binary]\n");
    return 2;
  }
  const int n = std::atoi(argv[1]);
  const std::string cli = argc > 2 ? argv[2] : "";
  const char* titles[] = {"",
                          "algebraic identities",
                          "assumption suite",
                          "conservation",
                          "weak identity",
                          "energy expansion",
                          "weak-strong Gronwall ladder",
                          "truncation construction",
                          "determinism and CLI contract"};
  if (n < 1 || n > 8) {
    fmt::print(stderr, "criterion must be 1..8\n");
    return 2;
  }
  Verdict v;
  try {
    switch (n) {
      case 1: v = algebraic_identities(); break;
      case 2: v = assumption_suite(); break;
      case 3: v = conservation(); break;
      case 4: v = weak_identity(); break;
      case 5: v = energy_expansion_order(); break;
      case 6: v = gronwall_ladder(); break;
      case 7: v = appendix(); break;
      case 8: v = determinism(cli); break;
    }
  } catch (const std::exception& e) {
    v.check(false, fmt::format("exception: {}", e.what()));
  }
  for (const auto& l : v.lines) fmt::print("{}\n", l);
  fmt::print("criterion {} ({}): {}\n", n, titles[n], v.pass ? "PASS" : "FAIL");
  return v.pass ? 0 : 1;
}
