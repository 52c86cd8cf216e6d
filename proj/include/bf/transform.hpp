#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bf {

// Subset-sum (zeta) transform and its inverse (Möbius), in place over a dense
// table of 2^n_bits values indexed by mask. After zeta, out[A] = Σ_{C⊆A} in[C];
// Möbius undoes it exactly (alternating-sum form).
//
// The parallel double kernels split each bit-pass over masks. Within one pass
// every updated slot reads only a slot whose bit j is clear, so iterations are
// independent and the result is bit-identical to the serial kernel.

template <typename S>
void zeta_in_place(std::vector<S>& a, int n_bits) {
  const std::size_t size = std::size_t{1} << n_bits;
  for (int j = 0; j < n_bits; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t mask = 0; mask < size; ++mask)
      if (mask & bit) a[mask] += a[mask ^ bit];
  }
}

template <typename S>
void mobius_in_place(std::vector<S>& a, int n_bits) {
  const std::size_t size = std::size_t{1} << n_bits;
  for (int j = 0; j < n_bits; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t mask = 0; mask < size; ++mask)
      if (mask & bit) a[mask] -= a[mask ^ bit];
  }
}

void zeta_in_place_parallel(std::span<double> a, int n_bits);
void mobius_in_place_parallel(std::span<double> a, int n_bits);

}  // namespace bf
