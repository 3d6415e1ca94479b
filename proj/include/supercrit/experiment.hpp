#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "supercrit/config.hpp"

namespace supercrit {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Outcome { Ok, AbortedBlowup, LeakageFlag, InvariantViolation };

std::string_view to_string(Outcome o);
/// 0 ok, 3 numerical abort, 4 leakage or invariant violation. Config errors
/// (2) never reach a manifest.
int exit_code(Outcome o);

struct RunManifest {
  std::string experiment_id;
  std::string config_text;  // canonical serialization
  std::string tool_version{kToolVersion};
  std::string started;
  std::string finished;
  Outcome outcome = Outcome::Ok;
  std::string message;
  std::vector<std::string> files;  // payload files, sorted
  std::filesystem::path directory;
};

/// Runs the experiment and writes output_dir/<experiment_id>/ atomically
/// (staging directory + rename). Payload files are byte-identical across
/// reruns; timestamps live only in manifest.json.
RunManifest run_experiment(const ExperimentConfig& cfg);

/// Long-format plot.csv (series,t,value) from the traces of a finished
/// experiment. Throws ConfigError for an unknown id or nothing to plot.
std::filesystem::path export_plot_data(const std::filesystem::path& output_dir, const std::string& experiment_id);

}  // namespace supercrit
