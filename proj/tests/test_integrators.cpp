#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "supercrit/errors.hpp"
#include "supercrit/initial_data.hpp"
#include "supercrit/nls.hpp"
#include "supercrit/wave.hpp"

using namespace supercrit;
using std::numbers::pi;

namespace {

WaveRunConfig standing_mode(int N, double dt) {
  WaveRunConfig c;
  c.grid = GridSpec{1, N, 4.0};
  c.spec = zero_nonlinearity();
  // quarter period: cos(wT) = 0, so the error is first order in the phase lag
  c.T = c.grid.L / 4;
  c.dt = dt;
  c.data = zero_wave_state(c.grid);
  for (int j = 0; j < N; ++j) c.data.u[j] = std::sin(2 * pi * c.grid.coordinate(j) / c.grid.L);
  c.snapshot_stride = 1 << 20;
  c.leakage_tol = 10.0;
  return c;
}

double standing_error(int N, double dt) {
  const auto c = standing_mode(N, dt);
  const auto tr = run_wave(c);
  const auto& s = tr.snapshots.back();
  const double w = 2 * pi / c.grid.L;
  double err = 0.0;
  for (int j = 0; j < N; ++j) {
    err = std::max(err, std::abs(s.u[j] - std::cos(w * s.t) * std::sin(w * c.grid.coordinate(j))));
  }
  return err;
}

}  // namespace

TEST_CASE("linear standing mode converges at second order") {
  const double e1 = standing_error(32, 0.02);
  const double e2 = standing_error(32, 0.01);
  CHECK(e1 < 1e-3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("zero data stays zero") {
  WaveRunConfig c;
  c.grid = GridSpec{2, 16, 8.0};
  c.spec = defocusing_exp(1);
  c.T = 0.5;
  c.data = zero_wave_state(c.grid);
  const auto tr = run_wave(c);
  for (double x : tr.snapshots.back().u) CHECK(x == 0.0);
}

TEST_CASE("Verlet is reversible") {
  const GridSpec g{1, 128, 16.0};
  WaveIntegrator integ(g, defocusing_exp(1), 0.25 * g.h());
  auto s = make_wave_data(g, Bump{0.5, 1.0, {}}, VelocityProfile::Traveling);
  const auto u0 = s.u;
  for (int i = 0; i < 100; ++i) integ.step(s);
  for (auto& v : s.ut) v = -v;
  for (int i = 0; i < 100; ++i) integ.step(s);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < u0.size(); ++i) {
    num += (s.u[i] - u0[i]) * (s.u[i] - u0[i]);
    den += u0[i] * u0[i];
  }
  CHECK(std::sqrt(num / den) < 1e-10);
}

TEST_CASE("inactive truncation reproduces the untruncated trajectory") {
  WaveRunConfig c;
  c.grid = GridSpec{1, 128, 16.0};
  c.spec = defocusing_exp(1);
  c.T = 1.0;
  c.data = make_wave_data(c.grid, Bump{0.5, 1.0, {}}, VelocityProfile::Rest);
  const auto a = run_wave(c);
  c.spec = truncate(defocusing_exp(1), find_truncation_abscissae(c.spec, 4.0, 1.0));
  const auto b = run_wave(c);
  for (std::size_t i = 0; i < a.snapshots.back().u.size(); ++i)
    CHECK(std::abs(a.snapshots.back().u[i] - b.snapshots.back().u[i]) < 1e-12);
}

TEST_CASE("energy drift shrinks quadratically with dt") {
  WaveRunConfig c;
  c.grid = GridSpec{1, 256, 8.0};
  c.spec = defocusing_exp(2);
  c.T = 1.0;
  c.data = make_wave_data(c.grid, Bump{0.2, 2.0, {}}, VelocityProfile::Traveling);
  const double d1 = run_wave(c).max_relative_energy_drift();
  c.dt = 0.5 * c.effective_dt();
  const double d2 = run_wave(c).max_relative_energy_drift();
  CHECK(d1 / d2 >= 3.0);
  CHECK(d1 / d2 <= 5.0);
}

TEST_CASE("wave config validation") {
  WaveRunConfig c;
  c.grid = GridSpec{1, 64, 8.0};
  c.spec = defocusing_exp(1);
  c.data = zero_wave_state(c.grid);
  c.dt = 0.3 * c.grid.h();
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.dt = 0.25 * c.grid.h();
  CHECK_NOTHROW(c.validate());
  c.T = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.T = 1.0;
  c.dt = 0.0;
  CHECK(c.effective_dt() * c.steps() == doctest::Approx(c.T).epsilon(1e-15));
  CHECK(c.effective_dt() <= wave_cfl_limit(c.grid));
}

TEST_CASE("non-finite state aborts with the last valid time") {
  const GridSpec g{1, 32, 8.0};
  WaveIntegrator integ(g, defocusing_exp(1), 0.01);
  auto s = zero_wave_state(g);
  s.t = 0.5;
  s.u[3] = std::numeric_limits<double>::quiet_NaN();
  try {
    integ.step(s);
    FAIL("expected NumericalAbort");
  } catch (const NumericalAbort& e) {
    CHECK(e.last_valid_time() == 0.5);
  }
}

TEST_CASE("free Schrodinger flow rotates a plane wave exactly") {
  const GridSpec g{1, 32, 2.0};
  NlsState s = zero_nls_state(g);
  const double k = 2 * pi / g.L;
  for (int j = 0; j < g.N; ++j) s.u[j] = std::polar(1.0, k * g.coordinate(j));
  const auto u0 = s.u;
  linear_flow(s, 0.3);
  for (int j = 0; j < g.N; ++j) CHECK(std::abs(s.u[j] - u0[j] * std::polar(1.0, k * k * 0.3)) < 1e-12);

  NlsState c{g, ComplexField(g.size(), {2.0, -1.0}), 0.0};
  linear_flow(c, 1.7);
  for (auto z : c.u) CHECK(std::abs(z - std::complex<double>(2.0, -1.0)) < 1e-13);
}

TEST_CASE("pointwise nonlinear flow is a modulus-preserving rotation") {
  const GridSpec g{1, 8, 1.0};
  NlsState s{g, ComplexField(g.size(), 1.0), 0.0};
  // F'(s) = 2s gives F'(1/2) = 1 at |u| = 1
  nonlinear_flow(s, 0.4, nls_pure_power(3.0));
  for (auto z : s.u) CHECK(std::abs(z - std::polar(1.0, 0.4)) < 1e-14);

  NlsState r = make_nls_data(GridSpec{1, 64, 16.0}, Bump{0.9, 4.0, {}});
  const auto before = r.u;
  nonlinear_flow(r, 0.37, nls_coercive_exp());
  for (std::size_t i = 0; i < r.u.size(); ++i)
    CHECK(std::abs(std::abs(r.u[i]) - std::abs(before[i])) <= 1e-13 * std::abs(before[i]));
}

TEST_CASE("Strang splitting conserves mass and the Hamiltonian") {
  NlsRunConfig c;
  c.grid = GridSpec{1, 256, 64.0};
  c.spec = nls_coercive_exp();
  c.T = 1.0;
  c.dt = 1e-3;
  c.data = make_nls_data(c.grid, Bump{0.5, 4.0, {}});
  const auto a = run_nls(c);
  CHECK_FALSE(a.leakage_flag);
  CHECK(a.max_relative_mass_drift() < 1e-12);
  CHECK(a.max_relative_hamiltonian_drift() < 1e-6);
  c.dt = 5e-4;
  const auto b = run_nls(c);
  const double ratio = a.max_relative_hamiltonian_drift() / b.max_relative_hamiltonian_drift();
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);

  c.spec = nls_zero();
  c.dt = 1e-2;
  CHECK(run_nls(c).max_relative_hamiltonian_drift() < 1e-12);
}

TEST_CASE("NLS accuracy gate") {
  NlsRunConfig c;
  c.grid = GridSpec{1, 64, 4.0};
  c.spec = nls_zero();
  c.data = zero_nls_state(c.grid);
  c.dt = 2 * c.grid.h();
  CHECK_THROWS_AS(c.validate(), ConfigError);
}
