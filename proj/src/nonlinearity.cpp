#include "supercrit/nonlinearity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "supercrit/errors.hpp"

namespace supercrit {

std::string_view to_string(AssumptionClass c) {
  switch (c) {
    case AssumptionClass::Defocusing: return "defocusing";
    case AssumptionClass::Oscillating: return "oscillating";
    case AssumptionClass::NlsCoercive: return "nls_coercive";
    case AssumptionClass::NlsSubcritGrowth: return "nls_subcrit_growth";
  }
  return "unknown";
}

double two_star(int d) {
  if (d <= 2) return std::numeric_limits<double>::infinity();
  return 2.0 * d / (d - 2.0);
}

std::complex<double> NlsNonlinearitySpec::dforce(std::complex<double> u,
                                                 std::complex<double> w) const {
  const double s = 0.5 * std::norm(u);
  return w * Fsprime(s) + u * (Fsprime2(s) * dot(w, u));
}

NonlinearitySpec defocusing_exp(int m) {
  if (m < 1) throw ConfigError({fmt::format("defocusing_exp: m must be >= 1, got {}", m)});
  const int n = 2 * m;
  NonlinearitySpec s;
  s.name = fmt::format("defocusing_exp:m={}", m);
  s.F = [n](double u) { return std::expm1(std::pow(u, n)); };
  s.f = [n](double u) { return n * std::pow(u, n - 1) * std::exp(std::pow(u, n)); };
  s.fprime = [n](double u) {
    const double e = std::exp(std::pow(u, n));
    const double d1 = n * std::pow(u, n - 1);
    return e * (n * (n - 1) * std::pow(u, n - 2) + d1 * d1);
  };
  s.assumption_class = AssumptionClass::Defocusing;
  s.lower_C = 0.0;
  s.smooth_at_origin = m >= 2;
  return s;
}

NonlinearitySpec oscillating_sin(int q) {
  if (q < 1) throw ConfigError({fmt::format("oscillating_sin: q must be >= 1, got {}", q)});
  NonlinearitySpec s;
  s.name = fmt::format("oscillating_sin:q={}", q);
  const double qd = q;
  // g(u) = u|u|^q, g'(u) = (q+1)|u|^q
  s.F = [qd](double u) { return std::sin(u * std::pow(std::abs(u), qd)); };
  s.f = [qd](double u) {
    const double a = std::pow(std::abs(u), qd);
    return (qd + 1.0) * a * std::cos(u * a);
  };
  s.fprime = [qd](double u) {
    const double au = std::abs(u);
    const double a = std::pow(au, qd);
    const double g = u * a;
    const double sgn = (u > 0.0) - (u < 0.0);
    return (qd + 1.0) * qd * std::pow(au, qd - 1.0) * sgn * std::cos(g) -
           (qd + 1.0) * (qd + 1.0) * a * a * std::sin(g);
  };
  s.assumption_class = AssumptionClass::Oscillating;
  s.growth = GrowthBound{qd, qd + 1.0};
  s.lower_C = 1.0;
  s.smooth_at_origin = q >= 2;
  return s;
}

NonlinearitySpec pure_power(double p) {
  if (!(p >= 1.0)) throw ConfigError({fmt::format("pure_power: p must be >= 1, got {}", p)});
  NonlinearitySpec s;
  s.name = fmt::format("pure_power:p={}", p);
  s.F = [p](double u) { return std::pow(std::abs(u), p + 1.0) / (p + 1.0); };
  s.f = [p](double u) { return std::pow(std::abs(u), p - 1.0) * u; };
  s.fprime = [p](double u) { return p * std::pow(std::abs(u), p - 1.0); };
  s.assumption_class = AssumptionClass::Defocusing;
  s.growth = GrowthBound{p, 1.0};
  s.smooth_at_origin = p > 1.0;
  return s;
}

NonlinearitySpec zero_nonlinearity() {
  NonlinearitySpec s;
  s.name = "zero";
  s.F = [](double) { return 0.0; };
  s.f = [](double) { return 0.0; };
  s.fprime = [](double) { return 0.0; };
  s.assumption_class = AssumptionClass::Defocusing;
  return s;
}

NlsNonlinearitySpec nls_coercive_exp() {
  NlsNonlinearitySpec s;
  s.name = "nls_coercive_exp";
  s.Fs = [](double x) { return std::exp(std::sqrt(1.0 + 2.0 * x)) - std::exp(1.0); };
  s.Fsprime = [](double x) {
    const double r = std::sqrt(1.0 + 2.0 * x);
    return std::exp(r) / r;
  };
  s.Fsprime2 = [](double x) {
    const double r = std::sqrt(1.0 + 2.0 * x);
    return std::exp(r) * (r - 1.0) / (r * r * r);
  };
  s.assumption_class = AssumptionClass::NlsCoercive;
  // sqrt(s)F'(s)/F(s) behaves like s^{-1/2} at the origin; on s >= 1/2 it
  // decreases from about 1.474 towards 1/sqrt(2).
  s.coercivity_constant = 1.5;
  s.coercive_from = 0.5;
  s.lower_C = 0.0;
  return s;
}

NlsNonlinearitySpec nls_pure_power(double p) {
  if (!(p >= 3.0)) throw ConfigError({fmt::format("nls_pure_power: p must be >= 3, got {}", p)});
  NlsNonlinearitySpec s;
  s.name = fmt::format("nls_pure_power:p={}", p);
  s.Fs = [p](double x) { return std::pow(2.0 * x, 0.5 * (p + 1.0)) / (p + 1.0); };
  s.Fsprime = [p](double x) { return std::pow(2.0 * x, 0.5 * (p - 1.0)); };
  s.Fsprime2 = [p](double x) { return (p - 1.0) * std::pow(2.0 * x, 0.5 * (p - 3.0)); };
  s.assumption_class = AssumptionClass::NlsSubcritGrowth;
  s.growth = GrowthBound{p, 1.0};
  s.lower_C = 0.0;
  return s;
}

NlsNonlinearitySpec nls_zero() {
  NlsNonlinearitySpec s;
  s.name = "nls_zero";
  s.Fs = [](double) { return 0.0; };
  s.Fsprime = [](double) { return 0.0; };
  s.Fsprime2 = [](double) { return 0.0; };
  s.assumption_class = AssumptionClass::NlsSubcritGrowth;
  return s;
}

Catalog builtin_catalog() {
  Catalog c;
  for (int m : {1, 2}) c.wave.push_back(defocusing_exp(m));
  for (int q : {1, 2, 3}) c.wave.push_back(oscillating_sin(q));
  for (double p : {2.0, 3.0}) c.wave.push_back(pure_power(p));
  c.nls.push_back(nls_coercive_exp());
  c.nls.push_back(nls_pure_power(3.0));
  return c;
}

namespace {

double parse_number(std::string_view name, std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ConfigError({fmt::format("nonlinearity '{}': bad value '{}' for key '{}'", name, text, key)});
  }
  return v;
}

int parse_integer(std::string_view name, std::string_view key, std::string_view text) {
  const double v = parse_number(name, key, text);
  if (v != std::floor(v)) {
    throw ConfigError({fmt::format("nonlinearity '{}': key '{}' must be an integer", name, key)});
  }
  return static_cast<int>(v);
}

}  // namespace

AnyNonlinearity parse_nonlinearity(std::string_view selection) {
  const auto colon = selection.find(':');
  const std::string name(selection.substr(0, colon));
  std::map<std::string, std::string, std::less<>> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = selection.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError({fmt::format("nonlinearity '{}': malformed parameter '{}'", name, item)});
      }
      params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }
  auto take = [&](std::string_view key) -> std::optional<std::string> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    std::string v = it->second;
    params.erase(it);
    return v;
  };
  auto finish = [&](AnyNonlinearity spec) {
    if (!params.empty()) {
      throw ConfigError({fmt::format("nonlinearity '{}': unknown parameter '{}'", name,
                                     params.begin()->first)});
    }
    return spec;
  };

  if (name == "defocusing_exp") {
    auto m = take("m");
    return finish(defocusing_exp(m ? parse_integer(name, "m", *m) : 1));
  }
  if (name == "oscillating_sin") {
    auto q = take("q");
    return finish(oscillating_sin(q ? parse_integer(name, "q", *q) : 1));
  }
  if (name == "pure_power") {
    auto p = take("p");
    return finish(pure_power(p ? parse_number(name, "p", *p) : 3.0));
  }
  if (name == "zero") return finish(zero_nonlinearity());
  if (name == "nls_coercive_exp") return finish(nls_coercive_exp());
  if (name == "nls_pure_power") {
    auto p = take("p");
    return finish(nls_pure_power(p ? parse_number(name, "p", *p) : 3.0));
  }
  if (name == "nls_zero") return finish(nls_zero());
  throw ConfigError({fmt::format("unknown nonlinearity '{}'", name)});
}

NonlinearitySpec truncate(const NonlinearitySpec& spec, const TruncationLevel& level) {
  const double rp = level.r_plus;
  const double rm = level.r_minus;
  if (!(rm < 0.0 && rp > 0.0)) {
    throw InvariantViolation(
        fmt::format("invalid truncation sequence: need r_minus < 0 < r_plus, got ({}, {})", rm, rp));
  }
  const double fp = spec.f(rp);
  const double fm = spec.f(rm);
  if (rp * fp < -level.C * rp * rp || rm * fm < -level.C * rm * rm) {
    throw InvariantViolation(fmt::format(
        "invalid truncation sequence: r f(r) >= -C r^2 fails at k={} (r+={}, r-={}, C={})", level.k,
        rp, rm, level.C));
  }
  const double Fp = spec.F(rp);
  const double Fm = spec.F(rm);

  double lip = 0.0;
  constexpr int kLipSamples = 10000;
  for (int i = 0; i <= kLipSamples; ++i) {
    const double u = rm + (rp - rm) * i / kLipSamples;
    lip = std::max(lip, std::abs(spec.fprime(u)));
  }

  NonlinearitySpec t = spec;
  t.name = fmt::format("{}|trunc[{},{}]", spec.name, rm, rp);
  auto f = spec.f;
  auto F = spec.F;
  auto fprime = spec.fprime;
  t.f = [f, rm, rp, fm, fp](double u) {
    if (u < rm) return fm;
    if (u > rp) return fp;
    return f(u);
  };
  t.F = [F, rm, rp, fm, fp, Fm, Fp](double u) {
    if (u < rm) return Fm + fm * (u - rm);
    if (u > rp) return Fp + fp * (u - rp);
    return F(u);
  };
  t.fprime = [fprime, rm, rp](double u) {
    if (u < rm || u > rp) return 0.0;
    return fprime(u);
  };
  t.lipschitz = lip;
  return t;
}

TruncationLevel find_truncation_abscissae(const NonlinearitySpec& spec, double k, double C) {
  if (!(k > 0.0)) throw ConfigError({fmt::format("truncation height must be positive, got {}", k)});
  if (spec.assumption_class == AssumptionClass::Defocusing) return {k, k, -k, C};

  constexpr int kScan = 1000;
  auto scan = [&](double sign) -> std::optional<double> {
    for (int i = 0; i < kScan; ++i) {
      const double s = sign * (k + k * i / (kScan - 1));
      if (s * spec.f(s) >= -C * s * s) return s;
    }
    return std::nullopt;
  };
  const auto rp = scan(+1.0);
  const auto rm = scan(-1.0);
  if (!rp || !rm) {
    throw EstimateError(fmt::format("no admissible abscissa in [k,2k] for {} at k={} (C={})",
                                    spec.name, k, C));
  }
  return {k, *rp, *rm, C};
}

double beta_cutoff(double s, double k) {
  if (s < 0.0) return -beta_cutoff(-s, k);
  if (s <= k) return s;
  if (s <= 2.0 * k) {
    const double d = s - k;
    return s - d * d / (2.0 * k);
  }
  return 1.5 * k;
}

}  // namespace supercrit
