#include "rwre/lawcheck.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwre/errors.hpp"
#include "rwre/rng.hpp"

namespace rwre::law {

namespace {

constexpr int kGammaCap = 12;

void check_gamma(int gamma) {
  if (gamma < 2) throw ConfigError("law: gamma must be >= 2");
  if (gamma > kGammaCap)
    throw ConfigError("law: closed forms are capped at gamma <= " +
                      std::to_string(kGammaCap));
}

// coeff_i = (-1)^{gamma-1-i} i^{gamma-2} / (i! (gamma-1-i)!), exact
// integer factorials.
std::vector<double> coefficients(int gamma) {
  std::vector<double> c(static_cast<std::size_t>(gamma), 0.0);
  for (int i = 1; i <= gamma - 1; ++i) {
    std::uint64_t fact_i = 1, fact_rest = 1, power = 1;
    for (int k = 2; k <= i; ++k) fact_i *= static_cast<std::uint64_t>(k);
    for (int k = 2; k <= gamma - 1 - i; ++k)
      fact_rest *= static_cast<std::uint64_t>(k);
    for (int k = 0; k < gamma - 2; ++k)
      power *= static_cast<std::uint64_t>(i);
    const double sign = (gamma - 1 - i) % 2 == 0 ? 1.0 : -1.0;
    c[static_cast<std::size_t>(i)] =
        sign * static_cast<double>(power) /
        (static_cast<double>(fact_i) * static_cast<double>(fact_rest));
  }
  return c;
}

// Asymptotic KS tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 lambda^2}.
double ks_pvalue(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0, sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

GoFReport finish_ks(std::size_t n_eff_num, double d, std::size_t n,
                    double level) {
  const double ne = static_cast<double>(n_eff_num);
  const double root = std::sqrt(ne);
  GoFReport rep;
  rep.n = n;
  rep.ks_stat = d;
  rep.p_value = ks_pvalue((root + 0.12 + 0.11 / root) * d);
  rep.level = level;
  rep.passed = rep.p_value > level;
  return rep;
}

}  // namespace

double density_f(int gamma, double x) {
  check_gamma(gamma);
  if (x < 0.0) throw ConfigError("density_f: x must be >= 0");
  const std::vector<double> c = coefficients(gamma);
  double f = 0.0;
  for (int i = 1; i <= gamma - 1; ++i)
    f += c[static_cast<std::size_t>(i)] * std::exp(-x / i);
  return f;
}

double cdf_F(int gamma, double x) {
  check_gamma(gamma);
  if (x < 0.0) throw ConfigError("cdf_F: x must be >= 0");
  const std::vector<double> c = coefficients(gamma);
  double F = 0.0;
  for (int i = 1; i <= gamma - 1; ++i)
    F += c[static_cast<std::size_t>(i)] * i * (1.0 - std::exp(-x / i));
  return std::clamp(F, 0.0, 1.0);
}

double sample_zeta_limit(int gamma, std::uint64_t seed) {
  check_gamma(gamma);
  Rng rng(seed);
  double sum = 0.0;
  for (int i = 1; i <= gamma - 1; ++i)
    sum += rng.exponential(1.0 / static_cast<double>(gamma - i));
  return sum;
}

std::vector<double> sample_zeta_limit_many(int gamma, std::uint64_t seed,
                                           std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(sample_zeta_limit(gamma, split_stream(seed, i)));
  return out;
}

GoFReport ks_statistic(std::vector<double> samples,
                       const std::function<double(double)>& cdf,
                       double level) {
  const std::size_t n = samples.size();
  if (n < 10) throw ConfigError("ks_statistic: need at least 10 samples");
  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double F = cdf(samples[i]);
    d = std::max(d, static_cast<double>(i + 1) / n - F);
    d = std::max(d, F - static_cast<double>(i) / n);
  }
  return finish_ks(n, d, n, level);
}

GoFReport ks_two_sample(std::vector<double> a, std::vector<double> b,
                        double level) {
  if (a.size() < 10 || b.size() < 10)
    throw ConfigError("ks_two_sample: need at least 10 samples per side");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double root = std::sqrt(ne);
  GoFReport rep;
  rep.n = a.size() + b.size();
  rep.ks_stat = d;
  rep.p_value = ks_pvalue((root + 0.12 + 0.11 / root) * d);
  rep.level = level;
  rep.passed = rep.p_value > level;
  return rep;
}

}  // namespace rwre::law
