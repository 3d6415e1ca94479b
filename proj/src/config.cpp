#include "supercrit/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "supercrit/errors.hpp"
#include "supercrit/nonlinearity.hpp"
#include "supercrit/wave.hpp"

extern char** environ;

namespace supercrit {

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::CheckAssumptions: return "check-assumptions";
    case ExperimentKind::SimulateWave: return "simulate-wave";
    case ExperimentKind::SimulateNls: return "simulate-nls";
    case ExperimentKind::WeakStrong: return "weak-strong";
    case ExperimentKind::AppendixConstruct: return "appendix-construct";
    case ExperimentKind::IdentityCheck: return "identity-check";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view s) {
  for (auto k : {ExperimentKind::CheckAssumptions, ExperimentKind::SimulateWave, ExperimentKind::SimulateNls,
                 ExperimentKind::WeakStrong, ExperimentKind::AppendixConstruct, ExperimentKind::IdentityCheck}) {
    if (s == to_string(k)) return k;
  }
  throw ConfigError({fmt::format("unknown experiment kind '{}'", s)});
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Value codecs. Each parser returns an error description on failure.
using ParseResult = std::optional<std::string>;

ParseResult parse_double(const std::string& v, double& out) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x)) return "expected a finite number";
  out = x;
  return std::nullopt;
}

template <class Int>
ParseResult parse_int(const std::string& v, Int& out) {
  Int x{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) return "expected an integer";
  out = x;
  return std::nullopt;
}

ParseResult parse_list(const std::string& v, std::vector<double>& out) {
  std::vector<double> xs;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const auto comma = v.find(',', pos);
    const std::string item = trim(std::string_view(v).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (item.empty()) {
      if (v.empty()) break;
      return "expected a comma-separated list of numbers";
    }
    double x = 0.0;
    if (parse_double(item, x)) return "expected a comma-separated list of numbers";
    xs.push_back(x);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  out = std::move(xs);
  return std::nullopt;
}

std::string fmt_double(double x) { return fmt::format("{}", x); }

std::string fmt_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt_double(xs[i]);
  }
  return out;
}

struct Key {
  const char* section;
  const char* name;
  std::function<ParseResult(const std::string&, ExperimentConfig&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
  bool location_only = false;  // excluded from the experiment id
};

template <class T>
Key num_key(const char* sec, const char* name, T ExperimentConfig::*field) {
  Key k{sec, name, {}, {}};
  k.set = [field](const std::string& v, ExperimentConfig& c) -> ParseResult {
    if constexpr (std::is_floating_point_v<T>) return parse_double(v, c.*field);
    else return parse_int(v, c.*field);
  };
  k.get = [field](const ExperimentConfig& c) {
    if constexpr (std::is_floating_point_v<T>) return fmt_double(c.*field);
    else return fmt::format("{}", c.*field);
  };
  return k;
}

Key list_key(const char* sec, const char* name, std::vector<double> ExperimentConfig::*field) {
  return Key{sec, name, [field](const std::string& v, ExperimentConfig& c) { return parse_list(v, c.*field); },
             [field](const ExperimentConfig& c) { return fmt_list(c.*field); }};
}

const std::vector<Key>& key_table() {
  static const std::vector<Key> keys = [] {
    std::vector<Key> k;
    k.push_back({"experiment", "kind",
                 [](const std::string& v, ExperimentConfig& c) -> ParseResult {
                   try {
                     c.kind = parse_experiment_kind(v);
                   } catch (const ConfigError&) {
                     return "expected one of check-assumptions, simulate-wave, simulate-nls, weak-strong, "
                            "appendix-construct, identity-check";
                   }
                   return std::nullopt;
                 },
                 [](const ExperimentConfig& c) { return std::string(to_string(c.kind)); }});
    k.push_back(num_key("experiment", "seed", &ExperimentConfig::seed));
    k.push_back({"experiment", "output_dir",
                 [](const std::string& v, ExperimentConfig& c) -> ParseResult {
                   if (v.empty()) return "expected a path";
                   c.output_dir = v;
                   return std::nullopt;
                 },
                 [](const ExperimentConfig& c) { return c.output_dir; }, true});
    k.push_back(num_key("experiment", "jobs", &ExperimentConfig::jobs));
    k.back().location_only = true;

    k.push_back({"nonlinearity", "name",
                 [](const std::string& v, ExperimentConfig& c) -> ParseResult {
                   if (v.empty()) return "expected a catalog selection such as defocusing_exp:m=1";
                   c.nonlinearity = v;
                   return std::nullopt;
                 },
                 [](const ExperimentConfig& c) { return c.nonlinearity; }});

    k.push_back(num_key("grid", "d", &ExperimentConfig::d));
    k.push_back(num_key("grid", "N", &ExperimentConfig::N));
    k.push_back(num_key("grid", "L", &ExperimentConfig::L));

    k.push_back(num_key("time", "T", &ExperimentConfig::T));
    k.push_back(num_key("time", "dt", &ExperimentConfig::dt));
    k.push_back(num_key("time", "diagnostics_stride", &ExperimentConfig::diagnostics_stride));
    k.push_back(num_key("time", "snapshot_stride", &ExperimentConfig::snapshot_stride));
    k.push_back(num_key("time", "leakage_tol", &ExperimentConfig::leakage_tol));

    k.push_back(num_key("data", "amplitude", &ExperimentConfig::amplitude));
    k.push_back(num_key("data", "radius", &ExperimentConfig::radius));
    k.push_back({"data", "profile",
                 [](const std::string& v, ExperimentConfig& c) -> ParseResult {
                   if (v == "rest") c.profile = VelocityProfile::Rest;
                   else if (v == "traveling") c.profile = VelocityProfile::Traveling;
                   else return "expected rest or traveling";
                   return std::nullopt;
                 },
                 [](const ExperimentConfig& c) {
                   return std::string(c.profile == VelocityProfile::Rest ? "rest" : "traveling");
                 }});

    k.push_back({"ladder", "mode",
                 [](const std::string& v, ExperimentConfig& c) -> ParseResult {
                   for (auto m : {LadderMode::PerturbedData, LadderMode::CoarseGrid, LadderMode::TruncationLadder}) {
                     if (v == to_string(m)) {
                       c.ladder_mode = m;
                       return std::nullopt;
                     }
                   }
                   return "expected perturbed, coarse_grid or truncation";
                 },
                 [](const ExperimentConfig& c) { return std::string(to_string(c.ladder_mode)); }});
    k.push_back(list_key("ladder", "values", &ExperimentConfig::ladder));
    k.push_back(num_key("ladder", "perturbation_amplitude", &ExperimentConfig::perturbation_amplitude));
    k.push_back(num_key("ladder", "perturbation_radius", &ExperimentConfig::perturbation_radius));
    k.push_back(num_key("ladder", "truncation_C", &ExperimentConfig::truncation_C));
    k.push_back(num_key("ladder", "shift_R", &ExperimentConfig::shift_R));
    k.push_back(num_key("ladder", "ui_trials", &ExperimentConfig::ui_trials));

    k.push_back(num_key("assumptions", "R", &ExperimentConfig::R));
    k.push_back(num_key("assumptions", "random_pairs", &ExperimentConfig::random_pairs));
    k.push_back(num_key("assumptions", "grid_points", &ExperimentConfig::grid_points));
    k.push_back(num_key("assumptions", "q_max", &ExperimentConfig::q_max));
    k.push_back(list_key("assumptions", "truncation_ladder", &ExperimentConfig::truncation_ladder));

    k.push_back(num_key("identity", "samples", &ExperimentConfig::identity_samples));
    k.push_back(num_key("identity", "tolerance", &ExperimentConfig::identity_tol));
    return k;
  }();
  return keys;
}

std::string full_name(const Key& k) { return fmt::format("{}.{}", k.section, k.name); }

const Key* find_key(std::string_view section, std::string_view name) {
  for (const auto& k : key_table()) {
    if (section == k.section && name == k.name) return &k;
  }
  return nullptr;
}

bool is_section(std::string_view s) {
  return std::any_of(key_table().begin(), key_table().end(), [&](const Key& k) { return s == k.section; });
}

bool real_kind(ExperimentKind k) {
  return k == ExperimentKind::SimulateWave || k == ExperimentKind::AppendixConstruct;
}

struct Entry {
  std::string value;
  int line = 0;  // 0 for overrides and defaults
};

class Problems {
public:
  explicit Problems(const std::map<std::string, Entry>& entries) : entries_(entries) {}
  void add(const std::string& key, const std::string& msg) {
    auto it = entries_.find(key);
    if (it != entries_.end() && it->second.line > 0) list.push_back(fmt::format("line {}: {}", it->second.line, msg));
    else list.push_back(msg);
  }
  std::vector<std::string> list;

private:
  const std::map<std::string, Entry>& entries_;
};

void resolve_and_validate(ExperimentConfig& c, const std::map<std::string, Entry>& entries, Problems& p) {
  const auto given = [&](const char* key) { return entries.count(key) > 0; };

  if (c.jobs < 1) p.add("experiment.jobs", fmt::format("experiment.jobs = {} must be at least 1", c.jobs));

  // Spec first: several defaults depend on whether it is real or complex.
  std::optional<AnyNonlinearity> spec;
  if (!c.nonlinearity.empty()) try {
    spec = parse_nonlinearity(c.nonlinearity);
  } catch (const ConfigError& e) {
    for (const auto& m : e.problems()) p.add("nonlinearity.name", fmt::format("nonlinearity.name: {}", m));
  }
  const bool nls = spec && std::holds_alternative<NlsNonlinearitySpec>(*spec);
  if (spec) {
    if (nls && real_kind(c.kind))
      p.add("nonlinearity.name", fmt::format("{} needs a real nonlinearity, got {}", to_string(c.kind), c.nonlinearity));
    if (!nls && c.kind == ExperimentKind::SimulateNls)
      p.add("nonlinearity.name", fmt::format("simulate-nls needs an NLS nonlinearity, got {}", c.nonlinearity));
  }

  // Schrodinger data spread at every speed; wide data in a wide box keep
  // the boundary shell quiet over unit times.
  if (c.radius == 0.0) c.radius = nls ? 4.0 : 1.0;
  if (c.L == 0.0) c.L = nls ? 16.0 * c.radius : 16.0;

  bool grid_ok = true;
  if (c.d < 1 || c.d > 3) {
    p.add("grid.d", fmt::format("grid.d = {} must be 1, 2 or 3", c.d));
    grid_ok = false;
  }
  if (c.N == 0 && grid_ok) c.N = c.d == 1 ? 256 : c.d == 2 ? 128 : 32;
  if (!is_power_of_two(c.N) || c.N < 8) {
    p.add("grid.N", fmt::format("grid.N = {} must be a power of two (at least 8)", c.N));
    grid_ok = false;
  }
  if (!(c.L > 0.0)) {
    p.add("grid.L", fmt::format("grid.L = {} must be positive", c.L));
    grid_ok = false;
  }

  if (spec && grid_ok && c.d >= 3) {
    const auto growth = std::visit([](const auto& s) { return s.growth; }, *spec);
    if (growth && growth->q >= two_star(c.d)) {
      p.add("nonlinearity.name", fmt::format("q={} ≥ 2*={} violates (H2)", growth->q, two_star(c.d)));
    }
  }

  if (!(c.T > 0.0)) p.add("time.T", fmt::format("time.T = {} must be positive", c.T));
  if (c.dt < 0.0) p.add("time.dt", fmt::format("time.dt = {} must be non-negative", c.dt));
  if (c.diagnostics_stride < 1)
    p.add("time.diagnostics_stride", fmt::format("time.diagnostics_stride = {} must be at least 1", c.diagnostics_stride));
  if (c.snapshot_stride < 0)
    p.add("time.snapshot_stride", fmt::format("time.snapshot_stride = {} must be non-negative", c.snapshot_stride));
  if (!(c.leakage_tol > 0.0)) p.add("time.leakage_tol", "time.leakage_tol must be positive");

  if (!(c.amplitude >= 0.0)) p.add("data.amplitude", "data.amplitude must be non-negative");
  if (!(c.radius > 0.0) || (grid_ok && c.radius >= c.L / 2.0))
    p.add("data.radius", fmt::format("data.radius = {} must lie in (0, L/2)", c.radius));

  // Time step and snapshot stride, for every kind that integrates.
  const bool integrates = c.kind != ExperimentKind::CheckAssumptions &&
                          !(c.kind == ExperimentKind::IdentityCheck && nls);
  if (spec && grid_ok && c.T > 0.0 && c.dt >= 0.0 && integrates) {
    const GridSpec g = grid_of(c);
    if (!nls) {
      const double cfl = wave_cfl_limit(g);
      if (c.dt == 0.0) c.dt = cfl;
      else if (c.dt > cfl * (1.0 + 1e-12))
        p.add("time.dt", fmt::format("time.dt = {} exceeds the CFL limit 0.25 h/sqrt(d) = {}", c.dt, cfl));
    } else {
      if (c.dt == 0.0) c.dt = std::min(1e-3, g.h());
      else if (c.dt > g.h()) p.add("time.dt", fmt::format("time.dt = {} exceeds the accuracy limit h = {}", c.dt, g.h()));
    }
    if (c.snapshot_stride == 0 && c.dt > 0.0) {
      // Identity and expansion quadratures need every step.
      if (c.kind == ExperimentKind::WeakStrong || c.kind == ExperimentKind::IdentityCheck) {
        c.snapshot_stride = 1;
      } else {
        const int n = std::max(1, static_cast<int>(std::ceil(c.T / c.dt - 1e-9)));
        c.snapshot_stride = std::max(1, n / 128);
      }
    }
  }

  if (c.kind == ExperimentKind::AppendixConstruct) {
    if (!given("ladder.mode")) c.ladder_mode = LadderMode::TruncationLadder;
    if (c.ladder_mode != LadderMode::TruncationLadder)
      p.add("ladder.mode", "appendix-construct needs ladder.mode = truncation");
  }
  if (c.ladder.empty()) {
    switch (c.ladder_mode) {
      case LadderMode::PerturbedData: c.ladder = {1e-3, 1e-2, 1e-1}; break;
      case LadderMode::TruncationLadder: c.ladder = {1.0, 2.0, 4.0, 8.0}; break;
      case LadderMode::CoarseGrid:
        if (grid_ok && c.N >= 64) c.ladder = {c.N / 8.0, c.N / 4.0, c.N / 2.0};
        else p.add("ladder.values", "ladder.values: coarse_grid needs explicit values when grid.N < 64");
        break;
    }
  }
  for (std::size_t i = 1; i < c.ladder.size(); ++i) {
    if (!(c.ladder[i] > c.ladder[i - 1])) {
      p.add("ladder.values", fmt::format("ladder.values must be strictly increasing ({} after {})", c.ladder[i], c.ladder[i - 1]));
      break;
    }
  }
  for (double v : c.ladder) {
    if (!(v > 0.0)) {
      p.add("ladder.values", fmt::format("ladder.values: {} must be positive", v));
      break;
    }
  }
  if (c.ladder_mode == LadderMode::CoarseGrid && grid_ok) {
    for (double v : c.ladder) {
      const int n = static_cast<int>(v);
      if (n != v || n < 8 || !is_power_of_two(n) || n > c.N) {
        p.add("ladder.values", fmt::format("ladder.values: coarse N={} must be a power of two in [8, {}]", v, c.N));
        break;
      }
    }
  }
  if (c.ladder_mode == LadderMode::TruncationLadder && nls && c.kind == ExperimentKind::WeakStrong)
    p.add("ladder.mode", "ladder.mode = truncation needs a real nonlinearity");
  if (c.kind == ExperimentKind::AppendixConstruct && c.ladder.size() < 3)
    p.add("ladder.values", "appendix-construct needs at least three ladder values");
  if (!(c.perturbation_radius > 0.0)) p.add("ladder.perturbation_radius", "ladder.perturbation_radius must be positive");
  if (!(c.truncation_C > 0.0)) p.add("ladder.truncation_C", "ladder.truncation_C must be positive");
  if (c.shift_R < 0.0) p.add("ladder.shift_R", "ladder.shift_R must be non-negative");
  if (c.ui_trials < 16) p.add("ladder.ui_trials", "ladder.ui_trials must be at least 16");

  if (!(c.R > 0.0)) p.add("assumptions.R", "assumptions.R must be positive");
  if (c.random_pairs < 1000) p.add("assumptions.random_pairs", "assumptions.random_pairs must be at least 1000");
  if (c.grid_points < 3) p.add("assumptions.grid_points", "assumptions.grid_points must be at least 3");
  if (!(c.q_max > 2.0)) p.add("assumptions.q_max", "assumptions.q_max must exceed 2");
  for (std::size_t i = 0; i < c.truncation_ladder.size(); ++i) {
    if (!(c.truncation_ladder[i] > 0.0) || (i > 0 && !(c.truncation_ladder[i] > c.truncation_ladder[i - 1]))) {
      p.add("assumptions.truncation_ladder", "assumptions.truncation_ladder must be positive and strictly increasing");
      break;
    }
  }

  if (c.identity_samples < 1) p.add("identity.samples", "identity.samples must be at least 1");
  if (!(c.identity_tol > 0.0)) p.add("identity.tolerance", "identity.tolerance must be positive");
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const Overrides& overrides) {
  std::map<std::string, Entry> entries;
  std::vector<std::string> problems;

  std::string section = "experiment";
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        problems.push_back(fmt::format("line {}: malformed section header '{}'", lineno, line));
        continue;
      }
      const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!is_section(name)) problems.push_back(fmt::format("line {}: unknown section [{}]", lineno, name));
      section = name;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back(fmt::format("line {}: expected key = value, got '{}'", lineno, line));
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!is_section(section)) continue;  // already reported
    const Key* k = find_key(section, key);
    if (!k) {
      problems.push_back(fmt::format("line {}: unknown key '{}' in section [{}]", lineno, key, section));
      continue;
    }
    const std::string full = full_name(*k);
    if (auto it = entries.find(full); it != entries.end()) {
      problems.push_back(fmt::format("line {}: duplicate key {} (first set on line {})", lineno, full, it->second.line));
      continue;
    }
    entries[full] = Entry{value, lineno};
  }

  for (const auto& [name, value] : overrides) {
    const auto dot = name.find('.');
    const Key* k = dot == std::string::npos ? nullptr : find_key(name.substr(0, dot), name.substr(dot + 1));
    if (!k) {
      problems.push_back(fmt::format("override: unknown key '{}'", name));
      continue;
    }
    entries[full_name(*k)] = Entry{value, 0};
  }

  ExperimentConfig cfg;
  Problems p(entries);
  for (const auto& k : key_table()) {
    auto it = entries.find(full_name(k));
    if (it == entries.end()) continue;
    if (auto err = k.set(it->second.value, cfg)) {
      p.add(it->first, fmt::format("{}: {}, got '{}'", it->first, *err, it->second.value));
    }
  }
  if (!entries.count("nonlinearity.name")) p.add("nonlinearity.name", "missing required key nonlinearity.name");

  // Keys that failed to parse keep their (valid) defaults, so validation
  // still runs and every problem is reported in one pass.
  resolve_and_validate(cfg, entries, p);
  problems.insert(problems.end(), p.list.begin(), p.list.end());
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

namespace {

std::string serialize(const ExperimentConfig& cfg, bool include_location) {
  std::string out;
  std::string section;
  for (const auto& k : key_table()) {
    if (k.location_only && !include_location) continue;
    if (section != k.section) {
      if (!section.empty()) out += '\n';
      section = k.section;
      out += fmt::format("[{}]\n", section);
    }
    out += fmt::format("{} = {}\n", k.name, k.get(cfg));
  }
  return out;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& cfg) { return serialize(cfg, true); }

Overrides environment_overrides() {
  Overrides out;
  constexpr std::string_view prefix = "SUPERCRIT_";
  for (char** e = environ; e && *e; ++e) {
    const std::string_view kv(*e);
    if (kv.substr(0, prefix.size()) != prefix) continue;
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string name = lower(std::string(kv.substr(prefix.size(), eq - prefix.size())));
    const std::string value(kv.substr(eq + 1));
    bool matched = false;
    for (const auto& k : key_table()) {
      if (name == lower(fmt::format("{}_{}", k.section, k.name))) {
        out[full_name(k)] = value;
        matched = true;
        break;
      }
    }
    // Unknown names still go through so parse_config reports them.
    if (!matched) out[name] = value;
  }
  return out;
}

std::string experiment_id(const ExperimentConfig& cfg) {
  const std::string text = serialize(cfg, false);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

GridSpec grid_of(const ExperimentConfig& cfg) { return GridSpec{cfg.d, cfg.N, cfg.L}; }

WaveRunConfig wave_run_config(const ExperimentConfig& cfg) {
  const auto any = parse_nonlinearity(cfg.nonlinearity);
  const auto* spec = std::get_if<NonlinearitySpec>(&any);
  if (!spec) throw ConfigError({fmt::format("{} is not a wave nonlinearity", cfg.nonlinearity)});
  WaveRunConfig w;
  w.grid = grid_of(cfg);
  w.spec = *spec;
  w.dt = cfg.dt;
  w.T = cfg.T;
  w.data = make_wave_data(w.grid, Bump{cfg.amplitude, cfg.radius, {0.0, 0.0, 0.0}}, cfg.profile);
  w.diagnostics_stride = cfg.diagnostics_stride;
  w.snapshot_stride = cfg.snapshot_stride;
  w.leakage_tol = cfg.leakage_tol;
  return w;
}

NlsRunConfig nls_run_config(const ExperimentConfig& cfg) {
  const auto any = parse_nonlinearity(cfg.nonlinearity);
  const auto* spec = std::get_if<NlsNonlinearitySpec>(&any);
  if (!spec) throw ConfigError({fmt::format("{} is not an NLS nonlinearity", cfg.nonlinearity)});
  NlsRunConfig n;
  n.grid = grid_of(cfg);
  n.spec = *spec;
  n.dt = cfg.dt;
  n.T = cfg.T;
  n.data = make_nls_data(n.grid, Bump{cfg.amplitude, cfg.radius, {0.0, 0.0, 0.0}});
  n.diagnostics_stride = cfg.diagnostics_stride;
  n.snapshot_stride = cfg.snapshot_stride;
  n.leakage_tol = cfg.leakage_tol;
  return n;
}

WeakApproxConfig weak_approx_config(const ExperimentConfig& cfg) {
  WeakApproxConfig w;
  w.mode = cfg.ladder_mode;
  w.values = cfg.ladder;
  const auto any = parse_nonlinearity(cfg.nonlinearity);
  if (std::holds_alternative<NonlinearitySpec>(any)) w.base = wave_run_config(cfg);
  else w.base = nls_run_config(cfg);
  w.perturbation = Bump{cfg.perturbation_amplitude, cfg.perturbation_radius, {0.0, 0.0, 0.0}};
  w.truncation_C = cfg.truncation_C;
  w.shift_R = cfg.shift_R;
  w.jobs = cfg.jobs;
  return w;
}

}  // namespace supercrit
