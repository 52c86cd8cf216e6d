#include "bf/transform.hpp"

#include <cstdint>

namespace bf {

// Masks with bit j set read only their bit-j-cleared partner, which this pass
// never writes, so the loop parallelizes without changing any result bit.
void zeta_in_place_parallel(std::span<double> a, int n_bits) {
  const std::int64_t size = std::int64_t{1} << n_bits;
  for (int j = 0; j < n_bits; ++j) {
    const std::int64_t bit = std::int64_t{1} << j;
#pragma omp parallel for schedule(static)
    for (std::int64_t mask = 0; mask < size; ++mask)
      if (mask & bit) a[static_cast<std::size_t>(mask)] += a[static_cast<std::size_t>(mask ^ bit)];
  }
}

void mobius_in_place_parallel(std::span<double> a, int n_bits) {
  const std::int64_t size = std::int64_t{1} << n_bits;
  for (int j = 0; j < n_bits; ++j) {
    const std::int64_t bit = std::int64_t{1} << j;
#pragma omp parallel for schedule(static)
    for (std::int64_t mask = 0; mask < size; ++mask)
      if (mask & bit) a[static_cast<std::size_t>(mask)] -= a[static_cast<std::size_t>(mask ^ bit)];
  }
}

}  // namespace bf
