#include "supercrit/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>

#include <unistd.h>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "supercrit/assumption_lab.hpp"
#include "supercrit/errors.hpp"
#include "supercrit/grid.hpp"
#include "supercrit/nonlinearity.hpp"
#include "supercrit/snapshot.hpp"

namespace supercrit {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Ok: return "ok";
    case Outcome::AbortedBlowup: return "aborted_blowup";
    case Outcome::LeakageFlag: return "leakage_flag";
    case Outcome::InvariantViolation: return "invariant_violation";
  }
  return "unknown";
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Ok: return 0;
    case Outcome::AbortedBlowup: return 3;
    case Outcome::LeakageFlag:
    case Outcome::InvariantViolation: return 4;
  }
  return 4;
}

namespace {

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(t));
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json num_array(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

// Payload files go through here so the manifest can list them.
class Staging {
public:
  explicit Staging(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void text(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    out << content;
    if (!out) throw Error(fmt::format("cannot write {}", (dir_ / name).string()));
    files_.push_back(name);
  }
  void json_file(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }
  fs::path path(const std::string& name) {
    files_.push_back(name);
    return dir_ / name;
  }
  std::vector<std::string> files() const {
    auto f = files_;
    std::sort(f.begin(), f.end());
    return f;
  }
  const fs::path& dir() const { return dir_; }

private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::string trace_csv(const std::vector<DiagnosticSample>& trace, bool nls) {
  std::string out = nls ? "t,E_kinetic,E_potential,E_total,mass,leakage,sup_norm\n"
                        : "t,E_kinetic,E_gradient,E_potential,E_total,leakage,sup_norm\n";
  for (const auto& s : trace) {
    if (nls) {
      out += fmt::format("{},{},{},{},{},{},{}\n", s.t, s.energy.kinetic, s.energy.potential, s.energy.total,
                         s.energy.mass, s.leakage, s.sup_norm);
    } else {
      out += fmt::format("{},{},{},{},{},{},{}\n", s.t, s.energy.kinetic, s.energy.gradient, s.energy.potential,
                         s.energy.total, s.leakage, s.sup_norm);
    }
  }
  return out;
}

Outcome check_assumptions(const ExperimentConfig& cfg, Staging& st, std::string& msg) {
  const auto spec = parse_nonlinearity(cfg.nonlinearity);
  LabOptions opt;
  opt.R = cfg.R;
  opt.d = cfg.d;
  opt.plan.seed = cfg.seed;
  opt.plan.random_pairs = cfg.random_pairs;
  opt.plan.grid_points = cfg.grid_points;
  opt.plan.q_max = cfg.q_max;
  opt.truncation_ladder = cfg.truncation_ladder;
  opt.truncation_C = cfg.truncation_C;
  const auto reports = classify(spec, opt);
  json arr = json::array();
  std::vector<std::string> failed;
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    if (!r.holds) failed.emplace_back(to_string(r.inequality));
  }
  const auto cls = std::visit([](const auto& s) { return s.assumption_class; }, spec);
  st.json_file("reports.json", {{"nonlinearity", cfg.nonlinearity},
                                {"assumption_class", std::string(to_string(cls))},
                                {"reports", arr}});
  if (failed.empty()) return Outcome::Ok;
  msg = "failed: ";
  for (std::size_t i = 0; i < failed.size(); ++i) msg += (i ? ", " : "") + failed[i];
  return Outcome::InvariantViolation;
}

Outcome simulate_wave(const ExperimentConfig& cfg, Staging& st, std::string& msg) {
  const WaveRunConfig wc = wave_run_config(cfg);
  const WaveTrajectory tr = run_wave(wc);
  st.text("trace.csv", trace_csv(tr.trace, false));
  st.json_file("summary.json", {{"steps", wc.steps()},
                                {"dt", wc.effective_dt()},
                                {"snapshots", tr.snapshots.size()},
                                {"max_relative_energy_drift", num(tr.max_relative_energy_drift())},
                                {"leakage_flag", tr.leakage_flag},
                                {"max_leakage", num(tr.max_leakage)}});
  write_snapshot(st.path("final.snap"), tr.snapshots.back());
  if (tr.leakage_flag) {
    msg = fmt::format("boundary leakage {} exceeds {}", tr.max_leakage, wc.leakage_tol);
    return Outcome::LeakageFlag;
  }
  return Outcome::Ok;
}

Outcome simulate_nls(const ExperimentConfig& cfg, Staging& st, std::string& msg) {
  const NlsRunConfig nc = nls_run_config(cfg);
  const NlsTrajectory tr = run_nls(nc);
  st.text("trace.csv", trace_csv(tr.trace, true));
  st.json_file("summary.json", {{"steps", nc.steps()},
                                {"dt", nc.effective_dt()},
                                {"snapshots", tr.snapshots.size()},
                                {"max_relative_mass_drift", num(tr.max_relative_mass_drift())},
                                {"max_relative_hamiltonian_drift", num(tr.max_relative_hamiltonian_drift())},
                                {"leakage_flag", tr.leakage_flag},
                                {"max_leakage", num(tr.max_leakage)}});
  write_snapshot(st.path("final.snap"), tr.snapshots.back());
  if (tr.leakage_flag) {
    msg = fmt::format("boundary leakage {} exceeds {}", tr.max_leakage, nc.leakage_tol);
    return Outcome::LeakageFlag;
  }
  return Outcome::Ok;
}

Outcome weak_strong(const ExperimentConfig& cfg, Staging& st, std::string& msg) {
  const auto res = run_weak_strong(weak_approx_config(cfg));
  json ladder = json::array();
  bool ok = true;
  for (std::size_t i = 0; i < res.values.size(); ++i) {
    const auto& g = res.traces[i];
    const auto& e = res.expansions[i];
    json j = to_json(g);
    j["value"] = res.values[i];
    j["expansion_residual"] = num(e.residual);
    j["t"] = num_array(g.times);
    j["G"] = num_array(g.G);
    j["w_l2"] = num_array(g.w_l2);
    j["I"] = num_array(g.I);
    j["J"] = num_array(g.J);
    st.json_file(fmt::format("gronwall_{}.json", i), j);
    ladder.push_back({{"value", res.values[i]},
                      {"G0", num(g.G.front())},
                      {"G0_over_value_sq", num(g.G.front() / (res.values[i] * res.values[i]))},
                      {"max_growth", num(g.max_growth)},
                      {"fitted_C", num(g.fitted_C)},
                      {"expansion_residual", num(e.residual)}});
    if (!g.bound_holds()) {
      ok = false;
      msg = fmt::format("Gronwall bound fails at ladder value {}", res.values[i]);
    }
  }
  st.json_file("ladder.json", {{"mode", std::string(to_string(res.mode))}, {"levels", ladder}});
  if (res.convergence) st.json_file("convergence.json", to_json(*res.convergence));
  return ok ? Outcome::Ok : Outcome::InvariantViolation;
}

Outcome appendix_construct(const ExperimentConfig& cfg, Staging& st, std::string& msg) {
  const auto wac = weak_approx_config(cfg);
  const auto rep = appendix_construction(wac);
  st.json_file("convergence.json", to_json(rep));

  // The probe measures the original force on the finest truncated run.
  WaveRunConfig wc = std::get<WaveRunConfig>(wac.base);
  const NonlinearitySpec original = wc.spec;
  wc.spec = truncate(original, find_truncation_abscissae(original, cfg.ladder.back(), cfg.truncation_C));
  const auto tr = run_wave(wc);
  const auto ui = uniform_integrability_probe(tr.snapshots, original, cfg.ui_trials, cfg.seed, cfg.q_max);
  st.json_file("ui_probe.json", to_json(ui));

  std::vector<std::string> bad = rep.flags;
  if (!ui.vacuous && !ui.passes) bad.push_back(fmt::format("uniform-integrability slope {} below {}", ui.slope, ui.threshold));
  if (rep.l2_monotone && rep.force_monotone && rep.energy_inequality && bad.size() == rep.flags.size()) return Outcome::Ok;
  for (std::size_t i = 0; i < bad.size(); ++i) msg += (i ? "; " : "") + bad[i];
  return Outcome::InvariantViolation;
}

Outcome identity_check(const ExperimentConfig& cfg, Staging& st, std::string& msg) {
  const auto spec = parse_nonlinearity(cfg.nonlinearity);
  if (const auto* nls = std::get_if<NlsNonlinearitySpec>(&spec)) {
    const auto r = verify_nls_cancellation(*nls, cfg.identity_samples, cfg.seed);
    st.json_file("identity.json", {{"identity", "cancellation"}, {"report", to_json(r)}});
    if (!r.holds) msg = fmt::format("cancellation identity fails on {} samples", r.violation_count);
    return r.holds ? Outcome::Ok : Outcome::InvariantViolation;
  }
  const WaveRunConfig wc = wave_run_config(cfg);
  const auto tr = run_wave(wc);
  const auto weak = verify_prop_weak_identity(tr.snapshots, wc.spec);
  const auto self = energy_expansion(tr.snapshots, tr.snapshots, wc.spec);
  const bool holds = weak.residual < cfg.identity_tol && self.residual == 0.0;
  st.json_file("identity.json", {{"identity", "weak"},
                                 {"lhs", num(weak.lhs)},
                                 {"rhs", num(weak.rhs)},
                                 {"residual", num(weak.residual)},
                                 {"tolerance", cfg.identity_tol},
                                 {"self_expansion_residual", num(self.residual)},
                                 {"holds", holds}});
  if (!holds) msg = fmt::format("weak identity residual {} (tolerance {})", weak.residual, cfg.identity_tol);
  return holds ? Outcome::Ok : Outcome::InvariantViolation;
}

}  // namespace

RunManifest run_experiment(const ExperimentConfig& cfg) {
  RunManifest m;
  m.experiment_id = experiment_id(cfg);
  m.config_text = serialize_config(cfg);
  m.started = now_utc();

  const fs::path root(cfg.output_dir);
  const fs::path final_dir = root / m.experiment_id;
  const fs::path stage_dir = root / fmt::format(".stage-{}-{}", m.experiment_id, ::getpid());
  fs::remove_all(stage_dir);
  Staging st(stage_dir);
  st.text("config.ini", m.config_text);

  try {
    switch (cfg.kind) {
      case ExperimentKind::CheckAssumptions: m.outcome = check_assumptions(cfg, st, m.message); break;
      case ExperimentKind::SimulateWave: m.outcome = simulate_wave(cfg, st, m.message); break;
      case ExperimentKind::SimulateNls: m.outcome = simulate_nls(cfg, st, m.message); break;
      case ExperimentKind::WeakStrong: m.outcome = weak_strong(cfg, st, m.message); break;
      case ExperimentKind::AppendixConstruct: m.outcome = appendix_construct(cfg, st, m.message); break;
      case ExperimentKind::IdentityCheck: m.outcome = identity_check(cfg, st, m.message); break;
    }
  } catch (const NumericalAbort& e) {
    m.outcome = Outcome::AbortedBlowup;
    m.message = fmt::format("{} (last valid t = {})", e.what(), e.last_valid_time());
  } catch (const InvariantViolation& e) {
    m.outcome = Outcome::InvariantViolation;
    m.message = e.what();
  } catch (const EstimateError& e) {
    m.outcome = Outcome::InvariantViolation;
    m.message = e.what();
  } catch (...) {
    fs::remove_all(stage_dir);
    throw;
  }

  m.files = st.files();
  m.finished = now_utc();
  json manifest = {{"experiment_id", m.experiment_id},
                   {"kind", std::string(to_string(cfg.kind))},
                   {"tool_version", m.tool_version},
                   {"started", m.started},
                   {"finished", m.finished},
                   {"outcome", std::string(to_string(m.outcome))},
                   {"exit_code", exit_code(m.outcome)},
                   {"message", m.message},
                   {"files", m.files},
                   {"config", m.config_text}};
  {
    std::ofstream out(stage_dir / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << "\n";
  }
  fs::remove_all(final_dir);
  fs::rename(stage_dir, final_dir);
  m.directory = final_dir;
  return m;
}

}  // namespace supercrit
