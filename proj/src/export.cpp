#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "supercrit/errors.hpp"
#include "supercrit/experiment.hpp"

namespace supercrit {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

// Wide CSV with a leading t column -> long rows.
void append_wide_csv(const fs::path& path, std::string& out) {
  std::ifstream in(path);
  std::string line;
  if (!std::getline(in, line)) return;
  const auto header = split(line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(split(line));
  }
  for (std::size_t c = 1; c < header.size(); ++c) {
    for (const auto& r : rows) {
      if (r.size() == header.size()) out += fmt::format("{},{},{}\n", header[c], r[0], r[c]);
    }
  }
}

void append_gronwall(const fs::path& path, std::string& out) {
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  const auto label = fmt::format("{}", j.at("value").get<double>());
  const auto& t = j.at("t");
  const double G0 = j.at("fitted_G0").is_null() ? NAN : j.at("fitted_G0").get<double>();
  const double C = j.at("fitted_C").is_null() ? NAN : j.at("fitted_C").get<double>();
  auto series = [&](const std::string& name, const nlohmann::json& ys) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto& y = ys.at(i);
      out += fmt::format("{}[{}],{},{}\n", name, label, t[i].get<double>(),
                         y.is_null() ? std::string("nan") : fmt::format("{}", y.get<double>()));
    }
  };
  series("G", j.at("G"));
  series("w_l2", j.at("w_l2"));
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += fmt::format("bound[{}],{},{}\n", label, t[i].get<double>(), G0 * std::exp(C * t[i].get<double>()));
  }
}

}  // namespace

fs::path export_plot_data(const fs::path& output_dir, const std::string& id) {
  const fs::path dir = output_dir / id;
  if (id.empty() || !fs::is_directory(dir)) {
    throw ConfigError({fmt::format("unknown experiment id '{}' under {}", id, output_dir.string())});
  }
  std::vector<fs::path> gronwall;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (name.rfind("gronwall_", 0) == 0 && e.path().extension() == ".json") gronwall.push_back(e.path());
  }
  std::sort(gronwall.begin(), gronwall.end());

  std::string out = "series,t,value\n";
  const std::size_t empty = out.size();
  if (fs::exists(dir / "trace.csv")) append_wide_csv(dir / "trace.csv", out);
  for (const auto& g : gronwall) append_gronwall(g, out);
  if (out.size() == empty) throw ConfigError({fmt::format("experiment {} has no plottable traces", id)});

  const fs::path target = dir / "plot.csv";
  std::ofstream f(target, std::ios::binary);
  f << out;
  if (!f) throw Error(fmt::format("cannot write {}", target.string()));
  return target;
}

}  // namespace supercrit
