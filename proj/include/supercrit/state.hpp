#pragma once

#include "supercrit/grid.hpp"

namespace supercrit {

/// (u, u_t) at time t; Du = (u_t, grad u).
struct WaveState {
  GridSpec grid;
  RealField u;
  RealField ut;
  double t = 0.0;
};

struct NlsState {
  GridSpec grid;
  ComplexField u;
  double t = 0.0;
};

inline WaveState zero_wave_state(const GridSpec& g) {
  return {g, RealField(g.size(), 0.0), RealField(g.size(), 0.0), 0.0};
}
inline NlsState zero_nls_state(const GridSpec& g) { return {g, ComplexField(g.size()), 0.0}; }

}  // namespace supercrit
