#pragma once

#include "supercrit/nonlinearity.hpp"
#include "supercrit/spectral.hpp"
#include "supercrit/state.hpp"

namespace supercrit {

/// Wave: kinetic = 1/2 |u_t|^2, gradient = 1/2 |grad u|^2.
/// NLS: kinetic = 1/2 |grad u|^2 (the conserved form, see README), gradient = 0,
/// mass = |u|^2.
struct EnergyReport {
  double kinetic = 0.0;
  double gradient = 0.0;
  double potential = 0.0;
  double total = 0.0;
  double mass = 0.0;
};

/// Throws NumericalAbort if the potential overflows.
EnergyReport wave_energy(const WaveState& state, const NonlinearitySpec& spec, SpectralOps& ops);
EnergyReport wave_energy(const WaveState& state, const NonlinearitySpec& spec);

EnergyReport nls_energy(const NlsState& state, const NlsNonlinearitySpec& spec, SpectralOps& ops);
EnergyReport nls_energy(const NlsState& state, const NlsNonlinearitySpec& spec);

/// h^d sum F(u_i).
double potential_integral(std::span<const double> u, const NonlinearitySpec& spec, const GridSpec& grid);
double potential_integral(std::span<const std::complex<double>> u, const NlsNonlinearitySpec& spec,
                          const GridSpec& grid);

}  // namespace supercrit
