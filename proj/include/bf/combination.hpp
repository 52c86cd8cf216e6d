#pragma once

#include <cstdint>
#include <vector>

#include "bf/conditioning.hpp"
#include "bf/errors.hpp"
#include "bf/mass.hpp"
#include "bf/products.hpp"

namespace bf {

// Dempster's rule. Kept as a reference implementation for the classical
// approach; nothing else in the library routes inference through it.
template <typename S>
MassFunction<S> dempster_combine(const MassFunction<S>& m1, const MassFunction<S>& m2) {
  using T = scalar_traits<S>;
  if (!m1.frame().same_as(m2.frame()))
    fail(errc::frame_mismatch, "combination needs a shared frame");
  std::vector<typename MassFunction<S>::Entry> out;
  S conflict = T::zero();
  for (const auto& [b1, v1] : m1.entries())
    for (const auto& [b2, v2] : m2.entries()) {
      std::uint32_t meet = b1 & b2;
      if (meet == 0) conflict += v1 * v2;
      else out.emplace_back(meet, v1 * v2);
    }
  S denom = T::one() - conflict;
  if (T::denominator_vanishes(denom))
    fail(errc::total_conflict, "the two masses contradict each other everywhere");
  for (auto& [bits, v] : out) v = v / denom;
  return MassFunction<S>::from_bits(m1.frame_ptr(), std::move(out));
}

template <typename S>
struct DiagonalEquivalence {
  MassFunction<S> combined;      // Dempster's rule directly
  MassFunction<S> via_diagonal;  // independent product conditioned on outcome equality
  bool equal = false;
};

// Builds the independent product on Ω×Ω, conditions it on the diagonal
// (both coordinates equal), folds pairs (ω,ω) back to ω, and compares with
// dempster_combine. Equality is exact in rational mode.
template <typename S>
DiagonalEquivalence<S> diagonal_equivalence_check(const MassFunction<S>& m1,
                                                  const MassFunction<S>& m2) {
  if (!m1.frame().same_as(m2.frame()))
    fail(errc::frame_mismatch, "combination needs a shared frame");
  ProductFrame pf = ProductFrame::make(m1.frame_ptr(), m2.frame_ptr());
  MassFunction<S> joint = independent_product(pf, m1, m2);
  MassFunction<S> on_diagonal = condition_mass(joint, pf.diagonal());

  const int n = m1.frame().size();
  std::vector<typename MassFunction<S>::Entry> folded;
  for (const auto& [bits, v] : on_diagonal.entries()) {
    std::uint32_t collapsed = 0;
    for (int i = 0; i < n; ++i)
      if (bits & (1u << pf.pair_index(i, i))) collapsed |= 1u << i;
    folded.emplace_back(collapsed, v);
  }
  MassFunction<S> via = MassFunction<S>::from_bits(m1.frame_ptr(), std::move(folded));
  MassFunction<S> direct = dempster_combine(m1, m2);
  bool equal = masses_equal(direct, via);
  return DiagonalEquivalence<S>{std::move(direct), std::move(via), equal};
}

}  // namespace bf
