#include "supercrit/energy.hpp"

#include <cmath>

#include <fmt/format.h>

#include "supercrit/errors.hpp"
#include "supercrit/numerics.hpp"

namespace supercrit {

double potential_integral(std::span<const double> u, const NonlinearitySpec& spec, const GridSpec& grid) {
  std::vector<double> vals(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) vals[i] = spec.F(u[i]);
  return integrate(vals, grid);
}

double potential_integral(std::span<const std::complex<double>> u, const NlsNonlinearitySpec& spec,
                          const GridSpec& grid) {
  std::vector<double> vals(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) vals[i] = spec.potential(u[i]);
  return integrate(vals, grid);
}

namespace {

void require_finite_potential(double p, double t) {
  if (!std::isfinite(p)) {
    throw NumericalAbort(
        fmt::format("potential energy is not finite at t={}: data amplitude out of safe range", t), t);
  }
}

}  // namespace

EnergyReport wave_energy(const WaveState& s, const NonlinearitySpec& spec, SpectralOps& ops) {
  EnergyReport r;
  r.kinetic = 0.5 * l2_norm_sq(s.ut, s.grid);
  r.gradient = 0.5 * ops.gradient_norm_sq(s.u);
  r.potential = potential_integral(s.u, spec, s.grid);
  require_finite_potential(r.potential, s.t);
  r.total = r.kinetic + r.gradient + r.potential;
  return r;
}

EnergyReport wave_energy(const WaveState& s, const NonlinearitySpec& spec) {
  SpectralOps ops(s.grid);
  return wave_energy(s, spec, ops);
}

EnergyReport nls_energy(const NlsState& s, const NlsNonlinearitySpec& spec, SpectralOps& ops) {
  EnergyReport r;
  r.kinetic = 0.5 * ops.gradient_norm_sq(s.u);
  r.potential = potential_integral(s.u, spec, s.grid);
  require_finite_potential(r.potential, s.t);
  r.mass = l2_norm_sq(s.u, s.grid);
  r.total = r.kinetic + r.potential;
  return r;
}

EnergyReport nls_energy(const NlsState& s, const NlsNonlinearitySpec& spec) {
  SpectralOps ops(s.grid);
  return nls_energy(s, spec, ops);
}

}  // namespace supercrit
