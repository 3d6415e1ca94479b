#include <cmath>
#include <filesystem>
#include <numbers>

#include <doctest.h>

#include "supercrit/energy.hpp"
#include "supercrit/errors.hpp"
#include "supercrit/grid.hpp"
#include "supercrit/initial_data.hpp"
#include "supercrit/numerics.hpp"
#include "supercrit/snapshot.hpp"
#include "supercrit/spectral.hpp"

using namespace supercrit;
using std::numbers::pi;

TEST_CASE("pairwise sum and trapezoid") {
  std::vector<double> ones(1 << 20, 0.1);
  CHECK(pairwise_sum(ones) == doctest::Approx(0.1 * (1 << 20)).epsilon(1e-13));
  std::vector<double> t{0.0, 0.5, 2.0}, y{0.0, 0.5, 2.0};
  CHECK(trapezoid(t, y) == doctest::Approx(2.0));
  const auto c = cumulative_trapezoid(t, y);
  CHECK(c.front() == 0.0);
  CHECK(c.back() == doctest::Approx(2.0));
}

TEST_CASE("line fit and convergence orders") {
  std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  std::vector<double> e{1.0, 0.25, 0.0625};
  for (double o : convergence_orders(e)) CHECK(o == doctest::Approx(2.0));
}

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a(7), b(7), c(derive_seed(7, 1));
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(Rng(7).next() != c.next());
  Rng r(3);
  for (int i = 0; i < 1000; ++i) CHECK(r.below(5) < 5);
}

TEST_CASE("parallel_for writes by index and rethrows") {
  std::vector<int> out(37, 0);
  parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_for(5, 2, [](std::size_t i) {
                    if (i == 3) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS((GridSpec{1, 100, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((GridSpec{1, 4, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((GridSpec{1, 64, -1.0}.validate()), ConfigError);
  CHECK_NOTHROW((GridSpec{2, 64, 3.0}.validate()));
}

TEST_CASE("spectral laplacian of eigenfunctions") {
  const GridSpec g{1, 64, 5.0};
  RealField u(g.size()), out(g.size());
  for (int j = 0; j < g.N; ++j) u[j] = std::sin(2 * pi * g.coordinate(j) / g.L);
  SpectralOps ops(g);
  ops.laplacian(u, out);
  const double lam = std::pow(2 * pi / g.L, 2);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(out[i] + lam * u[i]) < 1e-12 * lam);

  const GridSpec g2{2, 32, 4.0};
  RealField v(g2.size()), out2(g2.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto idx = g2.unravel(i);
    v[i] = std::sin(2 * pi * g2.coordinate(idx[0]) / g2.L) * std::cos(4 * pi * g2.coordinate(idx[1]) / g2.L);
  }
  const double lam2 = std::pow(2 * pi / g2.L, 2) + std::pow(4 * pi / g2.L, 2);
  laplacian(v, g2).swap(out2);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(out2[i] + lam2 * v[i]) < 1e-12 * lam2);

  RealField c(g.size(), 3.0);
  for (double x : laplacian(c, g)) CHECK(std::abs(x) < 1e-12);
}

TEST_CASE("L2 norms, Parseval and plane-wave energies") {
  const GridSpec g{1, 16, 3.0};
  RealField s(g.size());
  ComplexField z(g.size());
  for (int j = 0; j < g.N; ++j) {
    s[j] = std::sin(2 * pi * g.coordinate(j) / g.L);
    z[j] = std::polar(1.0, 2 * pi * g.coordinate(j) / g.L);
  }
  CHECK(l2_norm_sq(s, g) == doctest::Approx(g.L / 2).epsilon(1e-14));
  SpectralOps ops(g);
  CHECK(ops.fourier_l2_norm_sq(z) == doctest::Approx(l2_norm_sq(z, g)).epsilon(1e-12));

  const NlsState st{g, z, 0.0};
  const auto e = nls_energy(st, nls_zero());
  CHECK(e.mass == doctest::Approx(g.L).epsilon(1e-14));
  CHECK(e.kinetic == doctest::Approx(0.5 * std::pow(2 * pi / g.L, 2) * g.L).epsilon(1e-12));
}

TEST_CASE("wave energy oracles") {
  const GridSpec g{1, 128, 8.0};
  const auto zero = wave_energy(zero_wave_state(g), defocusing_exp(1));
  CHECK(zero.total == 0.0);

  const double a = 0.7;
  const auto data = make_wave_data(g, Bump{a, 1.5, {}}, VelocityProfile::Rest);
  const auto e = wave_energy(data, pure_power(3));
  const auto b = bump_field(Bump{1.0, 1.5, {}}, g);
  double sum = 0.0;
  for (double x : b) sum += std::pow(x, 4);
  CHECK(e.potential == doctest::Approx(std::pow(a, 4) / 4 * g.h() * sum).epsilon(1e-12));
  CHECK(e.total == doctest::Approx(e.kinetic + e.gradient + e.potential).epsilon(1e-12));
  CHECK(e.kinetic == 0.0);
}

TEST_CASE("bump data: peak, support and analytic derivative") {
  const Bump b{0.5, 2.0, {}};
  const GridSpec g{1, 256, 8.0};
  const auto u = bump_field(b, g);
  CHECK(sup_norm(u) == doctest::Approx(0.5).epsilon(1e-12));
  for (int j = 0; j < g.N; ++j)
    if (std::abs(g.coordinate(j)) >= 2.0) CHECK(u[j] == 0.0);

  // smooth but not analytic: spectral error falls faster than any power
  std::vector<double> err;
  for (int N : {256, 512, 1024}) {
    const GridSpec gn{1, N, 8.0};
    const auto v = bump_field(b, gn);
    RealField dv(gn.size());
    SpectralOps ops(gn);
    ops.partial_derivative(v, dv, 0);
    const auto exact = bump_derivative(b, gn, 0);
    double e = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) e = std::max(e, std::abs(dv[i] - exact[i]));
    err.push_back(e);
  }
  CHECK(err[0] / err[1] > 100.0);
  CHECK(err[1] / err[2] > 100.0);
  CHECK(err[2] < 1e-9);
}

TEST_CASE("leakage diagnostic") {
  const GridSpec g{1, 128, 16.0};
  CHECK(boundary_leakage(bump_field(Bump{1.0, 1.0, {}}, g), g, g.L / 4) == 0.0);
  RealField ones(g.size(), 1.0);
  CHECK(boundary_leakage(ones, g, g.L / 4) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("spectral prolongation is exact for band-limited fields") {
  const GridSpec c{1, 32, 4.0}, f{1, 128, 4.0};
  RealField u(c.size());
  for (int j = 0; j < c.N; ++j) u[j] = std::cos(2 * pi * 3 * c.coordinate(j) / c.L);
  const auto v = spectral_prolong(u, c, f);
  for (int j = 0; j < f.N; ++j) CHECK(std::abs(v[j] - std::cos(2 * pi * 3 * f.coordinate(j) / f.L)) < 1e-12);
}

TEST_CASE("snapshot round trip is bit exact") {
  const auto dir = std::filesystem::temp_directory_path() / "supercrit_snapshot_test";
  std::filesystem::create_directories(dir);
  const GridSpec g{2, 16, 3.0};
  auto w = make_wave_data(g, Bump{0.3, 1.0, {}}, VelocityProfile::Traveling);
  w.t = 0.125;
  write_snapshot(dir / "w.snap", w);
  const auto back = std::get<WaveState>(read_snapshot(dir / "w.snap"));
  CHECK(back.grid == g);
  CHECK(back.t == 0.125);
  CHECK(back.u == w.u);
  CHECK(back.ut == w.ut);

  const auto n = make_nls_data(g, Bump{0.3, 1.0, {}});
  write_snapshot(dir / "n.snap", n);
  CHECK(std::get<NlsState>(read_snapshot(dir / "n.snap")).u == n.u);
  std::filesystem::remove_all(dir);
}
