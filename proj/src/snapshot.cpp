#include "supercrit/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace supercrit {

namespace {

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("snapshot: truncated payload");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t{b[i]} << (8 * i);
  return std::bit_cast<double>(bits);
}

void write_header(std::ostream& out, const GridSpec& g, double t, const char* kind) {
  nlohmann::json h = {{"d", g.d}, {"N", g.N}, {"L", g.L}, {"t", t}, {"kind", kind}};
  out << h.dump() << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("snapshot: cannot open " + path.string());
  return out;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const WaveState& s) {
  auto out = open_out(path);
  write_header(out, s.grid, s.t, "wave");
  for (double v : s.u) put_f64(out, v);
  for (double v : s.ut) put_f64(out, v);
}

void write_snapshot(const std::filesystem::path& path, const NlsState& s) {
  auto out = open_out(path);
  write_header(out, s.grid, s.t, "nls");
  for (auto z : s.u) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
}

std::variant<WaveState, NlsState> read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("snapshot: cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  const auto h = nlohmann::json::parse(line);
  GridSpec g{h.at("d").get<int>(), h.at("N").get<int>(), h.at("L").get<double>()};
  g.validate();
  const double t = h.at("t").get<double>();
  const auto kind = h.at("kind").get<std::string>();
  if (kind == "wave") {
    WaveState s{g, RealField(g.size()), RealField(g.size()), t};
    for (auto& v : s.u) v = get_f64(in);
    for (auto& v : s.ut) v = get_f64(in);
    return s;
  }
  if (kind == "nls") {
    NlsState s{g, ComplexField(g.size()), t};
    for (auto& z : s.u) {
      const double re = get_f64(in);
      z = {re, get_f64(in)};
    }
    return s;
  }
  throw std::runtime_error("snapshot: unknown kind '" + kind + "'");
}

}  // namespace supercrit
