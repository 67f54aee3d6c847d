#ifndef RWRE_LAWCHECK_HPP
#define RWRE_LAWCHECK_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace rwre::law {

// Limit law of zeta_gamma - gamma(gamma-1)/2: a sum of gamma-1 independent
// exponentials with means 1, 2, ..., gamma-1.
struct ZetaLaw {
  int gamma = 2;
  double offset() const {
    return static_cast<double>(gamma) * (gamma - 1) / 2.0;
  }
};

// Density f_gamma(x) = sum_{i=1}^{gamma-1}
//   (-1)^{gamma-1-i} i^{gamma-2} / (i! (gamma-1-i)!) e^{-x/i}.
// The alternating sum is benign for gamma <= 12 (documented cap).
double density_f(int gamma, double x);

// Termwise antiderivative of density_f; monotone, F(0)=0, F(inf)=1.
double cdf_F(int gamma, double x);

// One draw of zeta - offset, deterministic per seed.
double sample_zeta_limit(int gamma, std::uint64_t seed);

// n independent draws, seeded by counter-splitting `seed`.
std::vector<double> sample_zeta_limit_many(int gamma, std::uint64_t seed,
                                           std::size_t n);

struct GoFReport {
  std::size_t n = 0;
  double ks_stat = 0.0;
  double p_value = 0.0;
  bool passed = false;
  double level = 0.01;
};

// One-sample Kolmogorov-Smirnov test with the asymptotic p-value. Input is
// sorted internally if needed; requires n >= 10.
GoFReport ks_statistic(std::vector<double> samples,
                       const std::function<double(double)>& cdf,
                       double level = 0.01);

// Two-sample KS test, same asymptotic p-value with the effective n.
GoFReport ks_two_sample(std::vector<double> a, std::vector<double> b,
                        double level = 0.01);

}  // namespace rwre::law

#endif  // RWRE_LAWCHECK_HPP
