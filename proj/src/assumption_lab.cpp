#include "supercrit/assumption_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "supercrit/errors.hpp"
#include "supercrit/numerics.hpp"

namespace supercrit {

using cplx = std::complex<double>;

std::string_view to_string(Inequality i) {
  switch (i) {
    case Inequality::H1: return "H1";
    case Inequality::H2: return "H2";
    case Inequality::H21: return "H21";
    case Inequality::H11: return "H11";
    case Inequality::H22: return "H22";
    case Inequality::H222: return "H222";
    case Inequality::Gronw4: return "Gronw4";
    case Inequality::Gronw6: return "Gronw6";
    case Inequality::ClaimA: return "ClaimA";
    case Inequality::Coercive: return "Coercive";
    case Inequality::Lower: return "Lower";
    case Inequality::NLS1: return "NLS1";
    case Inequality::NLS2: return "NLS2";
  }
  return "unknown";
}

void InequalityReport::add_violation(const Violation& v) {
  ++violation_count;
  holds = false;
  if (violations.size() < kMaxStoredViolations) violations.push_back(v);
}

double large_w_exponent(int d, const SamplingPlan& plan) {
  const double ts = two_star(d);
  return std::isfinite(ts) ? ts : plan.q_max;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Numerators are reduced by this multiple of the rounding scale of their terms.
constexpr double kRoundingUlps = 64.0;
constexpr double kStabilityTol = 0.05;
constexpr double kVerifySlack = 1e-6;
constexpr double kFloor = 1e-9;

// Stream ids for derive_seed; distinct per sampling purpose.
enum Stream : std::uint64_t { kFirst = 1, kSecond, kRefineA, kRefineB, kShell, kVerify, kShift };

struct Frac {
  double num;
  double den;
};
using PairFn = std::function<Frac(cplx u, cplx w)>;

struct Domain {
  bool complex = false;
  double R = 1.0;
  double w_lo = 1e-3;
  double w_hi = 8.0;
};

struct Best {
  double value = 0.0;
  cplx u{0.0};
  cplx w{0.0};
  bool found = false;
  std::size_t evals = 0;

  void consider(const PairFn& fn, cplx u_, cplx w_) {
    ++evals;
    const Frac fr = fn(u_, w_);
    if (!std::isfinite(fr.num) || !std::isfinite(fr.den) || !(fr.den > 0.0)) return;
    const double r = fr.num / fr.den;
    if (!std::isfinite(r)) return;
    if (!found || r > value) {
      value = r;
      u = u_;
      w = w_;
      found = true;
    }
  }
  void merge(const Best& o) {
    evals += o.evals;
    if (o.found && (!found || o.value > value)) {
      value = o.value;
      u = o.u;
      w = o.w;
      found = true;
    }
  }
};

double draw_magnitude(Rng& rng, double lo, double hi) {
  if (rng.uniform() < 0.5) return rng.uniform(lo, hi);
  return lo * std::exp(rng.uniform() * std::log(hi / lo));
}

cplx draw_u(Rng& rng, const Domain& d) {
  if (!d.complex) return rng.uniform(-d.R, d.R);
  const double r = d.R * std::sqrt(rng.uniform());
  return std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
}

cplx draw_w(Rng& rng, const Domain& d) {
  const double m = draw_magnitude(rng, d.w_lo, d.w_hi);
  if (!d.complex) return rng.uniform() < 0.5 ? -m : m;
  return std::polar(m, 2.0 * std::numbers::pi * rng.uniform());
}

Best sample(const PairFn& fn, const Domain& d, std::size_t n, Rng& rng) {
  Best b;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx u = draw_u(rng, d);
    b.consider(fn, u, draw_w(rng, d));
  }
  return b;
}

std::vector<double> magnitude_ladder(double lo, double hi, int n) {
  std::vector<double> m;
  for (int i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / (n - 1);
    m.push_back(lo + (hi - lo) * s);
    m.push_back(lo * std::pow(hi / lo, s));
  }
  return m;
}

// Quasi-uniform deterministic part of the sample plan.
Best grid_sample(const PairFn& fn, const Domain& d, int points) {
  Best b;
  if (!d.complex) {
    const auto mags = magnitude_ladder(d.w_lo, d.w_hi, points / 2 + 1);
    for (int i = 0; i < points; ++i) {
      const double u = -d.R + 2.0 * d.R * i / (points - 1);
      for (double m : mags) {
        b.consider(fn, u, m);
        b.consider(fn, u, -m);
      }
    }
    return b;
  }
  constexpr int kRadii = 12, kAngles = 12;
  const auto mags = magnitude_ladder(d.w_lo, d.w_hi, kRadii);
  for (int i = 0; i < kRadii; ++i) {
    for (int a = 0; a < kAngles; ++a) {
      const cplx u = std::polar(d.R * i / (kRadii - 1), 2.0 * std::numbers::pi * a / kAngles);
      for (double m : mags) {
        for (int c = 0; c < kAngles; ++c) {
          b.consider(fn, u, std::polar(m, 2.0 * std::numbers::pi * (c + 0.5) / kAngles));
        }
      }
    }
  }
  return b;
}

cplx clamp_u(cplx u, const Domain& d) {
  if (!d.complex) return std::clamp(u.real(), -d.R, d.R);
  const double a = std::abs(u);
  return a > d.R ? u * (d.R / a) : u;
}

cplx clamp_w(cplx w, const Domain& d) {
  const double a = std::abs(w);
  if (a == 0.0) return d.w_lo;
  const double m = std::clamp(a, d.w_lo, d.w_hi);
  return d.complex ? w * (m / a) : cplx(std::copysign(m, w.real()), 0.0);
}

// Shrinking random search around the current maximiser.
Best refine(const PairFn& fn, const Domain& d, Best b, Rng& rng) {
  if (!b.found) return b;
  constexpr int kRounds = 48, kTries = 32;
  for (int r = 0; r < kRounds; ++r) {
    const double shrink = 0.05 * std::pow(0.7, r);
    const double su = d.R * shrink;
    const double sw = std::max(std::abs(b.w), d.w_lo) * shrink;
    const cplx u0 = b.u, w0 = b.w;
    for (int k = 0; k < kTries; ++k) {
      cplx du = su * rng.uniform(-1.0, 1.0);
      cplx dw = sw * rng.uniform(-1.0, 1.0);
      if (d.complex) {
        du += cplx(0.0, su * rng.uniform(-1.0, 1.0));
        dw += cplx(0.0, sw * rng.uniform(-1.0, 1.0));
      }
      b.consider(fn, clamp_u(u0 + du, d), clamp_w(w0 + dw, d));
    }
  }
  return b;
}

struct EstimatorSetup {
  std::string name;
  PairFn fn;
  Domain domain;
  bool check_shells = true;
  bool check_origin = true;
};

Best run_estimator(const EstimatorSetup& s, const SamplingPlan& plan) {
  const std::uint64_t seed = plan.seed;
  Rng r1(derive_seed(seed, kFirst)), r2(derive_seed(seed, kSecond));
  Best a = grid_sample(s.fn, s.domain, plan.grid_points);
  a.merge(sample(s.fn, s.domain, plan.random_pairs, r1));
  Best b = a;
  b.merge(sample(s.fn, s.domain, plan.random_pairs, r2));
  Rng ra(derive_seed(seed, kRefineA)), rb(derive_seed(seed, kRefineB));
  a = refine(s.fn, s.domain, a, ra);
  b = refine(s.fn, s.domain, b, rb);

  if (!b.found) throw EstimateError(fmt::format("{}: no finite samples", s.name));
  const double scale = std::max(std::abs(b.value), kFloor);
  if (std::abs(b.value - a.value) > kStabilityTol * scale) {
    throw EstimateError(fmt::format("{}: estimate not stable under sample doubling ({:.6g} vs {:.6g})",
                                    s.name, a.value, b.value));
  }

  if (s.check_origin && b.value > kFloor) {
    // A sup that keeps growing as the worst pair is scaled towards 0 has no
    // finite bound (f is not C^1 at the origin).
    double prev = b.value;
    int growth = 0;
    for (int j = 1; j <= 3; ++j) {
      const double f = std::ldexp(1.0, -j);
      const Frac fr = s.fn(b.u * f, b.w * f);
      const double r = fr.num / fr.den;
      if (std::isfinite(r) && r > prev * 1.01) ++growth;
      prev = r;
    }
    if (growth == 3) {
      throw EstimateError(fmt::format("{}: unbounded near the origin (ratio {:.6g} at u={}, w={} keeps growing)",
                                      s.name, b.value, b.u.real(), b.w.real()));
    }
  }

  if (s.check_shells) {
    Rng rs(derive_seed(seed, kShell));
    double running = b.value;
    int growth = 0;
    double W = s.domain.w_hi;
    for (int j = 0; j < 3; ++j) {
      Domain shell = s.domain;
      shell.w_lo = W;
      shell.w_hi = 2.0 * W;
      Best sh = sample(s.fn, shell, std::max<std::size_t>(plan.random_pairs / 4, 1000), rs);
      sh = refine(s.fn, shell, sh, rs);
      b.evals += sh.evals;
      if (sh.found && sh.value > running * (1.0 + 1e-6) + 1e-300) {
        ++growth;
        running = sh.value;
      }
      W *= 2.0;
    }
    if (growth == 3) {
      throw EstimateError(fmt::format("{}: unbounded estimate, sup grows over three doublings of W (last {:.6g})",
                                      s.name, running));
    }
  }
  b.evals += a.evals;
  return b;
}

ConstantEstimate to_estimate(const std::string& name, double R, const Best& b) {
  ConstantEstimate c;
  c.name = name;
  c.R = R;
  c.value = std::max(0.0, b.value);
  c.samples = b.evals;
  c.worst_u = b.u;
  c.worst_w = b.w;
  return c;
}

// Fresh-sample confirmation of num <= value (1 + slack) den.
void verify_on_fresh_sample(const EstimatorSetup& s, const SamplingPlan& plan, double value,
                            InequalityReport& rep) {
  Rng rng(derive_seed(plan.seed, kVerify));
  const double c = value * (1.0 + kVerifySlack);
  for (std::size_t i = 0; i < plan.random_pairs; ++i) {
    const cplx u = draw_u(rng, s.domain);
    const cplx w = draw_w(rng, s.domain);
    const Frac fr = s.fn(u, w);
    if (!std::isfinite(fr.num) || !std::isfinite(fr.den)) continue;
    if (fr.num > c * fr.den) rep.add_violation({u, w, fr.num, c * fr.den});
  }
}

EstimatorSetup remainder_setup(const NonlinearitySpec& spec, double R, const SamplingPlan& plan) {
  EstimatorSetup s;
  s.name = fmt::format("H11[{}]", spec.name);
  s.domain = {false, R, plan.w_min, 8.0 * R};
  s.check_origin = false;  // scale-invariant for homogeneous-at-0 entries
  s.fn = [&spec](cplx uc, cplx wc) {
    const double u = uc.real(), w = wc.real();
    const double a = spec.F(u + w), b = spec.F(u), c = spec.f(u) * w;
    const double q = a - b - c;
    const double round = kRoundingUlps * kEps * (std::abs(a) + std::abs(b) + std::abs(c));
    return Frac{std::max(0.0, -q - round), w * w};
  };
  return s;
}

EstimatorSetup taylor_setup(const NonlinearitySpec& spec, double R, int d, const SamplingPlan& plan) {
  const double p = large_w_exponent(d, plan);
  EstimatorSetup s;
  s.name = fmt::format("H22[{}]", spec.name);
  s.domain = {false, R, plan.w_min, 8.0 * R};
  s.fn = [&spec, p](cplx uc, cplx wc) {
    const double u = uc.real(), w = wc.real();
    const double a = spec.f(u + w), b = spec.f(u), c = spec.fprime(u) * w;
    const double round = kRoundingUlps * kEps * (std::abs(a) + std::abs(b) + std::abs(c));
    const double aw = std::abs(w);
    return Frac{std::max(0.0, std::abs(a - b - c) - round), aw * aw + std::pow(aw, p)};
  };
  return s;
}

EstimatorSetup nls_taylor_setup(const NlsNonlinearitySpec& spec, double R, int d, const SamplingPlan& plan) {
  const double p = large_w_exponent(d, plan);
  EstimatorSetup s;
  s.name = fmt::format("H222[{}]", spec.name);
  s.domain = {true, R, plan.w_min, 8.0 * R};
  s.fn = [&spec, p](cplx u, cplx w) {
    const cplx a = spec.force(u + w), b = spec.force(u), c = spec.dforce(u, w);
    const double round = kRoundingUlps * kEps * (std::abs(a) + std::abs(b) + std::abs(c));
    const double aw = std::abs(w);
    return Frac{std::max(0.0, std::abs(a - b - c) - round), aw * aw + std::pow(aw, p)};
  };
  return s;
}

EstimatorSetup cancellation_setup(const NlsNonlinearitySpec& spec, double R, int d, const SamplingPlan& plan) {
  const double p = large_w_exponent(d, plan);
  EstimatorSetup s;
  s.name = fmt::format("Gronw6[{}]", spec.name);
  s.domain = {true, R, plan.w_min, 8.0 * R};
  s.fn = [&spec, p](cplx u, cplx w) {
    const cplx iw(-w.imag(), w.real());
    const double v = dot(spec.force(u) - spec.force(u + w), iw);
    const double aw = std::abs(w);
    return Frac{std::abs(v), aw * aw + std::pow(aw, p)};
  };
  return s;
}

void require_h2_class(const NonlinearitySpec& spec, int d) {
  if (!spec.growth) {
    throw EstimateError(fmt::format("H22 needs a growth bound; {} has none", spec.name));
  }
  const double ts = two_star(d);
  if (std::isfinite(ts) && spec.growth->q >= ts) {
    throw EstimateError(fmt::format("q={} >= 2*={} violates (H2) for {}", spec.growth->q, ts, spec.name));
  }
}

void require_nls1_class(const NlsNonlinearitySpec& spec, int d) {
  if (!spec.growth) throw EstimateError(fmt::format("{} has no growth bound", spec.name));
  const double ts = two_star(d);
  if (std::isfinite(ts) && spec.growth->q >= ts) {
    throw EstimateError(fmt::format("q={} >= 2*={} violates (NLS1) for {}", spec.growth->q, ts, spec.name));
  }
}

// Dense deterministic + seeded random points on [-R, R] for R in {1, 2, 4}.
std::vector<double> line_sample(double R_max) {
  std::vector<double> pts;
  Rng rng(derive_seed(20240611, 99));
  for (double R : {1.0, 2.0, 4.0}) {
    if (R > R_max) break;
    constexpr int kN = 10000;
    for (int i = 0; i <= kN; ++i) pts.push_back(-R + 2.0 * R * i / kN);
    for (int i = 0; i < kN; ++i) pts.push_back(rng.uniform(-R, R));
  }
  if (R_max > 4.0 || R_max < 1.0) {
    for (int i = 0; i <= 10000; ++i) pts.push_back(-R_max + 2.0 * R_max * i / 10000);
  }
  return pts;
}

InequalityReport make_report(Inequality which, const std::string& name, double R, double value,
                             bool complex_valued = false) {
  InequalityReport r;
  r.inequality = which;
  r.complex_valued = complex_valued;
  r.constant.name = name;
  r.constant.R = R;
  r.constant.value = value;
  return r;
}

}  // namespace

ConstantEstimate estimate_remainder_constant(const NonlinearitySpec& spec, double R, const SamplingPlan& plan) {
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  const auto s = remainder_setup(spec, R, plan);
  return to_estimate(s.name, R, run_estimator(s, plan));
}

ConstantEstimate estimate_taylor_constant(const NonlinearitySpec& spec, double R, int d, const SamplingPlan& plan) {
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  require_h2_class(spec, d);
  const auto s = taylor_setup(spec, R, d, plan);
  return to_estimate(s.name, R, run_estimator(s, plan));
}

ConstantEstimate estimate_nls_taylor_constant(const NlsNonlinearitySpec& spec, double R, int d,
                                              const SamplingPlan& plan) {
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  require_nls1_class(spec, d);
  const auto s = nls_taylor_setup(spec, R, d, plan);
  return to_estimate(s.name, R, run_estimator(s, plan));
}

ConstantEstimate estimate_cancellation_constant(const NlsNonlinearitySpec& spec, double R, int d,
                                                const SamplingPlan& plan) {
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  require_nls1_class(spec, d);
  const auto s = cancellation_setup(spec, R, d, plan);
  return to_estimate(s.name, R, run_estimator(s, plan));
}

double min_signed_remainder_ratio(const NonlinearitySpec& spec, double R, double w_max, const SamplingPlan& plan) {
  Rng rng(derive_seed(plan.seed, 42));
  const double w_lo = std::min(1e-2, 0.5 * w_max);
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < plan.random_pairs; ++i) {
    const double u = rng.uniform(-R, R);
    double w = rng.uniform(w_lo, w_max);
    if (rng.uniform() < 0.5) w = -w;
    const double q = spec.F(u + w) - spec.F(u) - spec.f(u) * w;
    if (std::isfinite(q)) m = std::min(m, q / (w * w));
  }
  return m;
}

InequalityReport verify_nls_cancellation(const NlsNonlinearitySpec& spec, std::size_t samples,
                                         std::uint64_t seed, double radius) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  constexpr double kTol = 1e-12;
  InequalityReport rep = make_report(Inequality::Gronw4, fmt::format("Gronw4[{}]", spec.name), radius, 0.0, true);
  Rng rng(derive_seed(seed, kVerify));
  const auto i_times = [](cplx z) { return cplx(-z.imag(), z.real()); };
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const cplx u = std::polar(radius * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
    const cplx w = std::polar(radius * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
    const cplx fu = spec.force(u), fuw = spec.force(u + w);
    const double lhs = dot(fu - fuw, i_times(w));
    const double rhs = dot(fu, i_times(w)) + dot(fuw, i_times(u));
    const double scale = std::abs(fu) * std::abs(w) + std::abs(fuw) * (std::abs(u) + std::abs(w));
    const double rel = scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
    if (!(rel < kTol)) rep.add_violation({u, w, lhs, rhs});
    if (!(rel <= worst)) {
      worst = rel;
      rep.constant.worst_u = u;
      rep.constant.worst_w = w;
    }
  }
  rep.constant.value = worst;
  rep.constant.samples = samples;
  rep.note = "constant.value is the largest relative residual";
  return rep;
}

ConstantEstimate find_convexity_shift(const NlsNonlinearitySpec& spec, double R, const SamplingPlan& plan) {
  if (spec.assumption_class != AssumptionClass::NlsCoercive &&
      spec.assumption_class != AssumptionClass::NlsSubcritGrowth) {
    throw EstimateError(fmt::format("{} is not an NLS class spec", spec.name));
  }
  constexpr double kSlack = 1e-9;
  constexpr double kTol = 1e-3;
  constexpr double kMaxA = 1e6;
  const std::size_t n = std::max<std::size_t>(plan.random_pairs / 5, 1000);

  struct Pt {
    double q, w2;
    cplx u, w;
  };
  // Smallest admissible A for one w-box, by bisection on precomputed pairs.
  auto shift_for_box = [&](double W, std::uint64_t stream) {
    Rng rng(derive_seed(plan.seed, stream));
    Domain d{true, R, 0.0, W};
    std::vector<Pt> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx u = draw_u(rng, d);
      const cplx w = std::polar(W * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
      const double q = spec.potential(u + w) - spec.potential(u) - dot(spec.force(u), w);
      if (std::isfinite(q)) pts.push_back({q, std::norm(w), u, w});
    }
    auto admissible = [&](double A) {
      for (const auto& p : pts)
        if (p.q + (A + 1.0) * p.w2 < -kSlack) return false;
      return true;
    };
    if (admissible(0.0)) return std::pair{0.0, pts};
    double hi = 1.0;
    while (!admissible(hi)) {
      hi *= 2.0;
      if (hi > kMaxA) throw EstimateError(fmt::format("no shift A <= 1e6 found for {}", spec.name));
    }
    double lo = 0.0;
    while (hi - lo > kTol) {
      const double mid = 0.5 * (lo + hi);
      (admissible(mid) ? hi : lo) = mid;
    }
    return std::pair{hi, pts};
  };

  double W = 2.0 * R;
  auto [A, pts] = shift_for_box(W, kShift);
  std::size_t total = pts.size();
  for (int j = 1;; ++j) {
    auto [A2, pts2] = shift_for_box(2.0 * W, kShift + j);
    total += pts2.size();
    W *= 2.0;
    const bool stable = A2 <= A + kTol;
    A = std::max(A, A2);
    pts = std::move(pts2);
    if (stable) break;
    if (j >= 8) throw EstimateError(fmt::format("shift A for {} keeps growing with the w-box", spec.name));
  }
  ConstantEstimate c;
  c.name = fmt::format("ClaimA[{}]", spec.name);
  c.R = R;
  c.value = A;
  c.samples = total;
  // worst pair: the most negative shifted remainder at the chosen A
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    const double v = p.q + (A + 1.0) * p.w2;
    if (v < worst) {
      worst = v;
      c.worst_u = p.u;
      c.worst_w = p.w;
    }
  }
  return c;
}

InequalityReport check_sign_condition(const NonlinearitySpec& spec, double R_max) {
  auto rep = make_report(Inequality::H1, fmt::format("H1[{}]", spec.name), R_max, 0.0);
  const auto pts = line_sample(R_max);
  for (double s : pts) {
    const double v = s * spec.f(s);
    if (v < 0.0) rep.add_violation({s, 0.0, v, 0.0});
  }
  rep.constant.samples = pts.size();
  return rep;
}

InequalityReport check_lower_bound(const NonlinearitySpec& spec, double C, double R_max) {
  auto rep = make_report(Inequality::H21, fmt::format("H21[{}]", spec.name), R_max, C);
  const auto pts = line_sample(R_max);
  for (double s : pts) {
    const double lhs = spec.F(s), rhs = -C * s * s;
    if (lhs < rhs - 1e-12) rep.add_violation({s, 0.0, lhs, rhs});
  }
  rep.constant.samples = pts.size();
  return rep;
}

InequalityReport check_growth(const NonlinearitySpec& spec, double R_max) {
  if (!spec.growth) throw EstimateError(fmt::format("{} has no growth bound", spec.name));
  const auto [q, C] = *spec.growth;
  auto rep = make_report(Inequality::H2, fmt::format("H2[{}]", spec.name), R_max, C);
  const auto pts = line_sample(R_max);
  for (double s : pts) {
    const double lhs = std::abs(spec.f(s)), rhs = C * std::pow(std::abs(s), q);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300) rep.add_violation({s, 0.0, lhs, rhs});
  }
  rep.constant.samples = pts.size();
  rep.note = fmt::format("q={}", q);
  return rep;
}

InequalityReport check_truncation_lower_bound(const NonlinearitySpec& spec, double C,
                                              const std::vector<double>& ladder) {
  const double Cl = spec.lower_C;
  auto rep = make_report(Inequality::Lower, fmt::format("Lower[{}]", spec.name), 0.0, Cl);
  std::size_t count = 0;
  for (double k : ladder) {
    const auto level = find_truncation_abscissae(spec, k, C);
    const auto fk = truncate(spec, level);
    const double span = 4.0 * std::max(level.r_plus, -level.r_minus);
    rep.constant.R = std::max(rep.constant.R, span);
    constexpr int kN = 20000;
    for (int i = 0; i <= kN; ++i) {
      const double u = -span + 2.0 * span * i / kN;
      const double lhs = fk.F(u), rhs = -Cl * u * u;
      ++count;
      if (lhs < rhs - 1e-12 * (1.0 + std::abs(lhs))) rep.add_violation({u, k, lhs, rhs});
    }
  }
  rep.constant.samples = count;
  rep.note = fmt::format("truncation ladder of {} levels, abscissa constant C={}", ladder.size(), C);
  return rep;
}

InequalityReport check_coercivity(const NlsNonlinearitySpec& spec, double s_max) {
  const double C = spec.coercivity_constant;
  auto rep = make_report(Inequality::Coercive, fmt::format("Coercive[{}]", spec.name), std::sqrt(2.0 * s_max), C,
                         true);
  Rng rng(derive_seed(20240611, 98));
  std::vector<double> pts;
  constexpr int kN = 10000;
  for (int i = 0; i <= kN; ++i) pts.push_back(s_max * i / kN);
  for (int i = 0; i < kN; ++i) pts.push_back(rng.uniform(0.0, s_max));
  for (double s : pts) {
    const double mid = std::sqrt(s) * spec.Fsprime(s);
    if (mid < 0.0) rep.add_violation({s, 0.0, mid, 0.0});
    if (s >= spec.coercive_from) {
      const double rhs = C * spec.Fs(s);
      if (mid > rhs * (1.0 + 1e-12)) rep.add_violation({s, 0.0, mid, rhs});
    }
  }
  rep.constant.samples = pts.size();
  rep.note = fmt::format("upper bound checked for s >= {}", spec.coercive_from);
  return rep;
}

InequalityReport check_nls_growth(const NlsNonlinearitySpec& spec, double R_max) {
  if (!spec.growth) throw EstimateError(fmt::format("{} has no growth bound", spec.name));
  const auto [q, C] = *spec.growth;
  auto rep = make_report(Inequality::NLS1, fmt::format("NLS1[{}]", spec.name), R_max, C, true);
  Rng rng(derive_seed(20240611, 97));
  const auto pts = line_sample(R_max);
  for (double r : pts) {
    const cplx u = std::polar(std::abs(r), 2.0 * std::numbers::pi * rng.uniform());
    const double lhs = std::abs(spec.force(u)), rhs = C * std::pow(std::abs(u), q);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300) rep.add_violation({u, 0.0, lhs, rhs});
  }
  rep.constant.samples = pts.size();
  rep.note = fmt::format("q={}", q);
  return rep;
}

InequalityReport check_nls_lower_bound(const NlsNonlinearitySpec& spec, double R_max) {
  const double C = spec.lower_C;
  auto rep = make_report(Inequality::NLS2, fmt::format("NLS2[{}]", spec.name), R_max, C, true);
  const auto pts = line_sample(R_max);
  for (double r : pts) {
    const double lhs = spec.Fs(0.5 * r * r), rhs = -C * r * r;
    if (lhs < rhs - 1e-12) rep.add_violation({r, 0.0, lhs, rhs});
  }
  rep.constant.samples = pts.size();
  return rep;
}

namespace {

template <class Fn>
void guarded(std::vector<InequalityReport>& out, Inequality which, const std::string& name, double R,
             bool complex_valued, Fn&& fn) {
  try {
    out.push_back(fn());
  } catch (const EstimateError& e) {
    auto r = make_report(which, name, R, std::numeric_limits<double>::quiet_NaN(), complex_valued);
    r.holds = false;
    r.note = e.what();
    out.push_back(std::move(r));
  }
}

InequalityReport estimator_report(Inequality which, const EstimatorSetup& s, const SamplingPlan& plan, double R,
                                  bool complex_valued) {
  const Best b = run_estimator(s, plan);
  InequalityReport rep;
  rep.inequality = which;
  rep.complex_valued = complex_valued;
  rep.constant = to_estimate(s.name, R, b);
  verify_on_fresh_sample(s, plan, rep.constant.value, rep);
  return rep;
}

}  // namespace

std::vector<InequalityReport> classify(const NonlinearitySpec& spec, const LabOptions& opt) {
  std::vector<InequalityReport> out;
  const double R = opt.R;
  if (spec.assumption_class == AssumptionClass::Defocusing) {
    out.push_back(check_sign_condition(spec));
    // (H1) implies (H21) with C = 0
    out.push_back(check_lower_bound(spec, 0.0));
  } else {
    out.push_back(check_lower_bound(spec, spec.lower_C));
  }
  if (spec.growth) out.push_back(check_growth(spec));
  guarded(out, Inequality::Lower, fmt::format("Lower[{}]", spec.name), 0.0, false,
          [&] { return check_truncation_lower_bound(spec, opt.truncation_C, opt.truncation_ladder); });
  guarded(out, Inequality::H11, fmt::format("H11[{}]", spec.name), R, false,
          [&] { return estimator_report(Inequality::H11, remainder_setup(spec, R, opt.plan), opt.plan, R, false); });
  if (spec.growth) {
    guarded(out, Inequality::H22, fmt::format("H22[{}]", spec.name), R, false, [&] {
      require_h2_class(spec, opt.d);
      auto rep = estimator_report(Inequality::H22, taylor_setup(spec, R, opt.d, opt.plan), opt.plan, R, false);
      const double ts = two_star(opt.d);
      if (std::isfinite(ts)) rep.note = fmt::format("eta = 2* - q = {}", ts - spec.growth->q);
      else rep.note = fmt::format("2* replaced by q_max = {}", opt.plan.q_max);
      return rep;
    });
  }
  return out;
}

std::vector<InequalityReport> classify(const NlsNonlinearitySpec& spec, const LabOptions& opt) {
  std::vector<InequalityReport> out;
  const double R = opt.R;
  out.push_back(verify_nls_cancellation(spec, 100000, opt.plan.seed));
  if (spec.assumption_class == AssumptionClass::NlsCoercive) out.push_back(check_coercivity(spec));
  out.push_back(check_nls_lower_bound(spec));
  if (spec.assumption_class == AssumptionClass::NlsSubcritGrowth) {
    guarded(out, Inequality::NLS1, fmt::format("NLS1[{}]", spec.name), R, true,
            [&] { return check_nls_growth(spec); });
    guarded(out, Inequality::H222, fmt::format("H222[{}]", spec.name), R, true, [&] {
      require_nls1_class(spec, opt.d);
      return estimator_report(Inequality::H222, nls_taylor_setup(spec, R, opt.d, opt.plan), opt.plan, R, true);
    });
    guarded(out, Inequality::Gronw6, fmt::format("Gronw6[{}]", spec.name), R, true, [&] {
      require_nls1_class(spec, opt.d);
      return estimator_report(Inequality::Gronw6, cancellation_setup(spec, R, opt.d, opt.plan), opt.plan, R, true);
    });
  }
  guarded(out, Inequality::ClaimA, fmt::format("ClaimA[{}]", spec.name), R, true, [&] {
    InequalityReport rep;
    rep.inequality = Inequality::ClaimA;
    rep.complex_valued = true;
    rep.constant = find_convexity_shift(spec, R, opt.plan);
    rep.note = "constant.value is the shift A";
    return rep;
  });
  return out;
}

std::vector<InequalityReport> classify(const AnyNonlinearity& spec, const LabOptions& opt) {
  return std::visit([&](const auto& s) { return classify(s, opt); }, spec);
}

namespace {

nlohmann::json scalar_json(cplx z, bool complex_valued) {
  if (complex_valued) return nlohmann::json::array({z.real(), z.imag()});
  return z.real();
}

// NaN is not representable in JSON.
nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json to_json(const ConstantEstimate& c, bool complex_valued) {
  return {{"name", c.name},
          {"R", number_or_null(c.R)},
          {"value", number_or_null(c.value)},
          {"samples", c.samples},
          {"worst_pair", {{"u", scalar_json(c.worst_u, complex_valued)}, {"w", scalar_json(c.worst_w, complex_valued)}}}};
}

nlohmann::json to_json(const InequalityReport& r) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"u", scalar_json(x.u, r.complex_valued)},
                 {"w", scalar_json(x.w, r.complex_valued)},
                 {"lhs", number_or_null(x.lhs)},
                 {"rhs", number_or_null(x.rhs)}});
  }
  return {{"inequality", std::string(to_string(r.inequality))},
          {"holds", r.holds},
          {"constant", to_json(r.constant, r.complex_valued)},
          {"violation_count", r.violation_count},
          {"violations", v},
          {"note", r.note}};
}

}  // namespace supercrit
