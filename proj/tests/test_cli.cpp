#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <doctest.h>
#include <fmt/format.h>
#include <json.hpp>

#include "supercrit/config.hpp"

using namespace supercrit;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// stdout only; stderr is dropped
Result cli(const std::string& args, const std::string& env = "") {
  const auto cmd = fmt::format("{} '{}' {} 2>/dev/null", env, SUPERCRIT_CLI, args);
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct Scratch {
  fs::path root = fs::temp_directory_path() / fmt::format("supercrit-cli-{}", ::getpid());
  Scratch() {
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Scratch() { fs::remove_all(root); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(root / name) << text;
    return (root / name).string();
  }
  std::string out() const { return (root / "runs").string(); }
};

std::string id_line(const std::string& stdout_text) {
  const auto at = stdout_text.find("experiment_id: ");
  if (at == std::string::npos) return {};
  return stdout_text.substr(at + 15, 16);
}

}  // namespace

TEST_CASE("cli: dry run prints the id and a canonical config that reparses") {
  Scratch s;
  const auto ini = s.write("w.ini", "[nonlinearity]\nname = pure_power:p=3\n[time]\nT = 0.25\n");
  const auto r = cli(fmt::format("simulate-wave --config '{}' --seed 5 --dry-run", ini));
  REQUIRE(r.code == 0);
  REQUIRE(r.out.rfind("# experiment_id = ", 0) == 0);
  const auto body = r.out.substr(r.out.find('\n') + 1);
  const auto cfg = parse_config(body);
  CHECK(cfg.seed == 5);
  CHECK(serialize_config(cfg) == body);
  CHECK(r.out.substr(18, 16) == experiment_id(cfg));
  CHECK_FALSE(fs::exists(s.root / "runs"));
}

TEST_CASE("cli: environment overrides apply and flags beat them") {
  Scratch s;
  const auto ini = s.write("w.ini", "[nonlinearity]\nname = pure_power:p=3\n");
  const auto r = cli(fmt::format("simulate-wave --config '{}' --seed 9 --dry-run", ini),
                     "SUPERCRIT_GRID_N=64 SUPERCRIT_EXPERIMENT_SEED=3");
  REQUIRE(r.code == 0);
  const auto cfg = parse_config(r.out.substr(r.out.find('\n') + 1));
  CHECK(cfg.N == 64);
  CHECK(cfg.seed == 9);
}

TEST_CASE("cli: truncation ladder writes one trace per level, then exports") {
  Scratch s;
  const auto ini = s.write("t.ini",
                           "[nonlinearity]\nname = oscillating_sin:q=1\n[grid]\nN = 128\n[time]\nT = 0.5\n"
                           "[data]\namplitude = 4\nradius = 2\n[ladder]\nmode = truncation\nvalues = 2, 4, 8\n");
  const auto r = cli(fmt::format("weak-strong --config '{}' --output '{}'", ini, s.out()));
  REQUIRE(r.code == 0);
  const auto id = id_line(r.out);
  REQUIRE(id.size() == 16);
  const fs::path dir = fs::path(s.out()) / id;
  for (const char* f : {"gronwall_0.json", "gronwall_1.json", "gronwall_2.json", "convergence.json", "ladder.json",
                        "config.ini", "manifest.json"})
    CHECK_MESSAGE(fs::exists(dir / f), f);
  CHECK_FALSE(fs::exists(dir / "gronwall_3.json"));

  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m.at("experiment_id") == id);
  CHECK(m.at("outcome") == "ok");

  const auto e = cli(fmt::format("export {} --output '{}'", id, s.out()));
  REQUIRE(e.code == 0);
  const auto csv = slurp(dir / "plot.csv");
  CHECK(csv.rfind("series,t,value\n", 0) == 0);
  CHECK(csv.find("\nG[2],") != std::string::npos);
  CHECK(csv.find("\nbound[8],") != std::string::npos);

  CHECK(cli(fmt::format("export 0123456789abcdef --output '{}'", s.out())).code == 2);
}

TEST_CASE("cli: simulate-wave writes the trace columns") {
  Scratch s;
  const auto ini = s.write("w.ini", "[nonlinearity]\nname = defocusing_exp:m=1\n[grid]\nN = 64\n[time]\nT = 0.25\n");
  const auto r = cli(fmt::format("simulate-wave --config '{}' --output '{}'", ini, s.out()));
  REQUIRE(r.code == 0);
  const fs::path dir = fs::path(s.out()) / id_line(r.out);
  const auto trace = slurp(dir / "trace.csv");
  CHECK(trace.rfind("t,E_kinetic,E_gradient,E_potential,E_total,leakage,sup_norm\n", 0) == 0);
  CHECK(fs::exists(dir / "final.snap"));
  CHECK(fs::exists(dir / "summary.json"));
  // nothing left behind from staging
  for (const auto& e : fs::directory_iterator(s.out()))
    CHECK(e.path().filename().string().rfind(".stage", 0) != 0);
}

TEST_CASE("cli: check-assumptions prints its reports") {
  Scratch s;
  const auto ini = s.write("a.ini",
                           "[experiment]\nkind = check-assumptions\n[nonlinearity]\nname = nls_coercive_exp\n"
                           "[assumptions]\nrandom_pairs = 20000\ngrid_points = 51\n");
  const auto r = cli(fmt::format("check-assumptions --config '{}' --output '{}'", ini, s.out()));
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out.substr(r.out.find('{'), r.out.rfind('}') - r.out.find('{') + 1));
  CHECK(j.at("assumption_class") == "nls_coercive");
  CHECK(j.at("reports").size() >= 3);
}

TEST_CASE("cli: usage errors exit with the config code") {
  CHECK(cli("no-such-command").code == 2);
  CHECK(cli("simulate-wave --config /nonexistent/file.ini").code == 2);
  CHECK(cli("simulate-wave --jobs 0").code == 2);
}
