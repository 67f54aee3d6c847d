// Compares the OpenMP survival-curve kernel against the serial reference.
// Usage: bench_survival [replicas] [workers]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstdint>

#include "rwre/environment.hpp"
#include "rwre/simulate.hpp"

using namespace rwre;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t replicas =
      argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  const int workers = argc > 2 ? std::atoi(argv[2]) : 0;

  const auto law = EnvironmentLaw::bernoulli(std::exp(1.0), std::exp(1.0));
  const Environment env = gen_environment(law, 2000, 42);
  const auto cfg = sim::WalkerConfig::with_defaults(2, 50.0);
  const std::vector<double> grid = {0.0, 1.0, 5.0, 10.0, 25.0, 50.0};

  auto t0 = std::chrono::steady_clock::now();
  const auto serial = sim::survival_curve_serial(
      env, cfg, sim::MeetingMode::FirstPair, grid, replicas, 7);
  const double t_serial = seconds(t0);

  t0 = std::chrono::steady_clock::now();
  const auto parallel = sim::survival_curve(
      env, cfg, sim::MeetingMode::FirstPair, grid, replicas, 7, workers);
  const double t_parallel = seconds(t0);

  std::printf("replicas              %llu\n",
              static_cast<unsigned long long>(replicas));
  std::printf("serial reference      %8.3f s  (%.0f replicas/s)\n", t_serial,
              static_cast<double>(replicas) / t_serial);
  std::printf("openmp kernel         %8.3f s  (%.0f replicas/s)\n", t_parallel,
              static_cast<double>(replicas) / t_parallel);
  std::printf("speedup               %8.2fx\n", t_serial / t_parallel);
  std::printf("results identical     %s\n",
              serial.p == parallel.p ? "yes" : "NO");
  return serial.p == parallel.p ? 0 : 1;
}
