// Timing harness: serial vs OpenMP subset-sum kernels, and the sampling loop.
// Not a test; prints a table and exits 0.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "bf/expectation.hpp"
#include "bf/scenarios.hpp"
#include "bf/transform.hpp"

using namespace bf;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::vector<double> random_table(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(size);
  for (double& x : v) x = dist(rng);
  return v;
}

template <typename F>
double best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_seconds();
    body();
    double dt = now_seconds() - t0;
    if (dt < best) best = dt;
  }
  return best;
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", omp_get_max_threads());

  std::printf("%-8s %-10s %12s %12s %8s\n", "kernel", "n_bits", "serial (s)",
              "parallel (s)", "speedup");
  for (int n_bits = 20; n_bits <= 24; n_bits += 2) {
    const std::size_t size = std::size_t{1} << n_bits;
    std::vector<double> base = random_table(size, 7u * static_cast<unsigned>(n_bits));

    std::vector<double> work;
    double serial_zeta = best_of(3, [&] {
      work = base;
      zeta_in_place(work, n_bits);
    });
    double parallel_zeta = best_of(3, [&] {
      work = base;
      zeta_in_place_parallel(work, n_bits);
    });
    std::printf("%-8s %-10d %12.4f %12.4f %7.2fx\n", "zeta", n_bits, serial_zeta,
                parallel_zeta, serial_zeta / parallel_zeta);

    double serial_mobius = best_of(3, [&] {
      work = base;
      mobius_in_place(work, n_bits);
    });
    double parallel_mobius = best_of(3, [&] {
      work = base;
      mobius_in_place_parallel(work, n_bits);
    });
    std::printf("%-8s %-10d %12.4f %12.4f %7.2fx\n", "mobius", n_bits, serial_mobius,
                parallel_mobius, serial_mobius / parallel_mobius);
  }

  // Sampling loop: trials split across threads, one RNG substream per trial.
  std::printf("\n%-22s %12s %12s %8s\n", "simulate_lln", "1 thread (s)",
              "max threads (s)", "speedup");
  MassFunction<Rational> coin = croupier_factor(Rational(1, 5));
  RandomVariable<Rational> heads = RandomVariable<Rational>::indicator(
      coin.frame_ptr(), encode_subset(coin.frame(), {"h"}));
  const int saved = omp_get_max_threads();

  omp_set_num_threads(1);
  double one = best_of(3, [&] {
    simulate_lln(coin, heads, 5000, 400, 0.05, kDefaultLlnSeed);
  });
  omp_set_num_threads(saved);
  double many = best_of(3, [&] {
    simulate_lln(coin, heads, 5000, 400, 0.05, kDefaultLlnSeed);
  });
  std::printf("%-22s %12.4f %12.4f %7.2fx\n", "n=5000 trials=400", one, many,
              one / many);
  return 0;
}
