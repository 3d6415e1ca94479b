#pragma once

#include <array>

#include "supercrit/state.hpp"

namespace supercrit {

/// Tensor bump a * prod_i phi((x_i - c_i)/r) with phi(s) = e * exp(1/(s^2-1))
/// on |s| < 1, so the peak value is exactly a.
struct Bump {
  double amplitude = 0.5;
  double radius = 1.0;
  std::array<double, 3> center{0.0, 0.0, 0.0};
};

RealField bump_field(const Bump& b, const GridSpec& grid);
/// Analytic d/dx_axis of the bump.
RealField bump_derivative(const Bump& b, const GridSpec& grid, int axis);

enum class VelocityProfile {
  Rest,       // u_t = 0
  Traveling,  // u_t = -d/dx_0 u, a right-moving profile
};

WaveState make_wave_data(const GridSpec& grid, const Bump& b, VelocityProfile v);
NlsState make_nls_data(const GridSpec& grid, const Bump& b);

/// v0 = u0 + eps * shape, velocity untouched.
WaveState perturb(const WaveState& s, const Bump& shape, double eps);
NlsState perturb(const NlsState& s, const Bump& shape, double eps);

}  // namespace supercrit
