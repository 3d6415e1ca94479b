#include "supercrit/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace supercrit {

namespace {

double phi(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::numbers::e * std::exp(1.0 / (s * s - 1.0));
}

// phi'(s) = phi(s) * (-2s / (s^2-1)^2)
double dphi(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = s * s - 1.0;
  return phi(s) * (-2.0 * s / (q * q));
}

template <class Fn>
RealField tensor(const Bump& b, const GridSpec& g, Fn factor) {
  if (!(b.radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
  RealField out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto idx = g.unravel(i);
    double v = b.amplitude;
    for (int a = 0; a < g.d && v != 0.0; ++a) {
      v *= factor(a, (g.coordinate(idx[a]) - b.center[a]) / b.radius);
    }
    out[i] = v;
  }
  return out;
}

}  // namespace

RealField bump_field(const Bump& b, const GridSpec& g) {
  return tensor(b, g, [](int, double s) { return phi(s); });
}

RealField bump_derivative(const Bump& b, const GridSpec& g, int axis) {
  if (axis < 0 || axis >= g.d) throw std::invalid_argument("bump_derivative: bad axis");
  return tensor(b, g, [&](int a, double s) { return a == axis ? dphi(s) / b.radius : phi(s); });
}

WaveState make_wave_data(const GridSpec& g, const Bump& b, VelocityProfile v) {
  g.validate();
  WaveState s{g, bump_field(b, g), RealField(g.size(), 0.0), 0.0};
  if (v == VelocityProfile::Traveling) {
    s.ut = bump_derivative(b, g, 0);
    for (auto& x : s.ut) x = -x;
  }
  return s;
}

NlsState make_nls_data(const GridSpec& g, const Bump& b) {
  g.validate();
  const auto re = bump_field(b, g);
  NlsState s{g, ComplexField(g.size()), 0.0};
  for (std::size_t i = 0; i < re.size(); ++i) s.u[i] = re[i];
  return s;
}

WaveState perturb(const WaveState& s, const Bump& shape, double eps) {
  WaveState out = s;
  const auto p = bump_field(shape, s.grid);
  for (std::size_t i = 0; i < p.size(); ++i) out.u[i] += eps * p[i];
  return out;
}

NlsState perturb(const NlsState& s, const Bump& shape, double eps) {
  NlsState out = s;
  const auto p = bump_field(shape, s.grid);
  for (std::size_t i = 0; i < p.size(); ++i) out.u[i] += eps * p[i];
  return out;
}

}  // namespace supercrit
