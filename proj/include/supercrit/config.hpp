#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "supercrit/grid.hpp"
#include "supercrit/initial_data.hpp"
#include "supercrit/weak_strong.hpp"

namespace supercrit {

enum class ExperimentKind { CheckAssumptions, SimulateWave, SimulateNls, WeakStrong, AppendixConstruct, IdentityCheck };

std::string_view to_string(ExperimentKind k);  // subcommand spelling, e.g. "simulate-wave"
ExperimentKind parse_experiment_kind(std::string_view s);

// Flat key=value configuration. Sections group keys only; every field has a
// default except nonlinearity.selection. parse_config resolves the derived
// defaults (N per d, dt, snapshot stride, ladder) so a parsed config is
// always fully explicit.
struct ExperimentConfig {
  // [experiment]
  ExperimentKind kind = ExperimentKind::SimulateWave;
  std::uint64_t seed = 20240611;
  std::string output_dir = "runs";
  int jobs = 1;

  // [nonlinearity]
  std::string nonlinearity;

  // [grid]
  int d = 1;
  int N = 0;  // 0 resolves to 256 / 128 / 32 for d = 1 / 2 / 3
  double L = 0.0;  // 0 resolves to 16 (wave) or 16 * radius (NLS)

  // [time]
  double T = 1.0;
  double dt = 0.0;  // 0 resolves to 0.25 h / sqrt(d) (wave) or 1e-3 (NLS)
  int diagnostics_stride = 1;
  int snapshot_stride = 0;  // 0 resolves to ~128 snapshots
  double leakage_tol = 1e-6;

  // [data]
  double amplitude = 0.5;
  double radius = 0.0;  // 0 resolves to 1 (wave) or 4 (NLS)
  VelocityProfile profile = VelocityProfile::Rest;

  // [ladder]
  LadderMode ladder_mode = LadderMode::PerturbedData;
  std::vector<double> ladder;  // empty resolves per mode
  double perturbation_amplitude = 1.0;
  double perturbation_radius = 1.0;
  double truncation_C = 1.0;
  double shift_R = 0.0;
  std::size_t ui_trials = 400;

  // [assumptions]
  double R = 2.0;
  std::size_t random_pairs = 1'000'000;
  int grid_points = 201;
  double q_max = 10.0;
  std::vector<double> truncation_ladder{1.0, 2.0, 4.0, 8.0};

  // [identity]
  std::size_t identity_samples = 100'000;
  double identity_tol = 1e-4;

  bool operator==(const ExperimentConfig&) const = default;
};

using Overrides = std::map<std::string, std::string>;  // "section.key" -> value

/// Throws ConfigError listing every problem, each prefixed by its line
/// number when it came from the text. Overrides win over the text.
ExperimentConfig parse_config(std::string_view text, const Overrides& overrides = {});

/// Canonical text: every key, fixed order, shortest round-trip numbers.
std::string serialize_config(const ExperimentConfig& cfg);

/// SUPERCRIT_<SECTION>_<KEY> variables, matched case-insensitively.
Overrides environment_overrides();

/// FNV-1a 64 over the canonical text without run-location keys, as 16 hex digits.
std::string experiment_id(const ExperimentConfig& cfg);

GridSpec grid_of(const ExperimentConfig& cfg);
WaveRunConfig wave_run_config(const ExperimentConfig& cfg);
NlsRunConfig nls_run_config(const ExperimentConfig& cfg);
WeakApproxConfig weak_approx_config(const ExperimentConfig& cfg);

}  // namespace supercrit
