#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "bf/errors.hpp"
#include "bf/mass.hpp"

namespace bf {

// Extreme points of the set of distributions compatible with m: each focal
// set hands its whole mass to one of its elements. Every compatible
// distribution is a convex mixture of these, so linear and linear-fractional
// objectives over the set attain their extrema here.
template <typename S>
std::vector<ProbabilityDistribution<S>> extreme_points(const MassFunction<S>& m) {
  constexpr long long kCap = 1'000'000;
  long long combos = 1;
  std::vector<std::vector<int>> members;  // outcome indices per focal set
  for (const auto& [bits, v] : m.entries()) {
    std::vector<int> idx;
    for (int i = 0; i < m.frame().size(); ++i)
      if (bits & (1u << i)) idx.push_back(i);
    combos *= static_cast<long long>(idx.size());
    if (combos > kCap)
      fail(errc::too_many_extreme_points,
           "allocation count exceeds " + std::to_string(kCap));
    members.push_back(std::move(idx));
  }

  const auto& entries = m.entries();
  const size_t k = entries.size();
  std::set<std::vector<S>> seen;
  std::vector<size_t> choice(k, 0);
  while (true) {
    std::vector<S> weights(static_cast<size_t>(m.frame().size()), scalar_traits<S>::zero());
    for (size_t c = 0; c < k; ++c)
      weights[static_cast<size_t>(members[c][choice[c]])] += entries[c].second;
    seen.insert(std::move(weights));

    size_t pos = 0;
    while (pos < k) {
      if (++choice[pos] < members[pos].size()) break;
      choice[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }

  std::vector<ProbabilityDistribution<S>> out;
  out.reserve(seen.size());
  for (const auto& w : seen)
    out.push_back(ProbabilityDistribution<S>::make(m.frame_ptr(), w));
  return out;
}

// min P(A) over the extreme points. Deliberately enumerative; agreement with
// belief(m, A) is a checked identity, not an assumption.
template <typename S>
S lower_probability(const MassFunction<S>& m, SubsetMask a) {
  require_on_frame(m.frame(), a, "lower_probability");
  auto points = extreme_points(m);
  bool first = true;
  S best = scalar_traits<S>::zero();
  for (const auto& p : points) {
    S val = p.probability(a);
    if (first || val < best) {
      best = val;
      first = false;
    }
  }
  return best;
}

// inf P(A|H) over extreme points with P(H) > 0. Points with P(H) = 0 are
// skipped; if every point has P(H) = 0 the conditional does not exist.
template <typename S>
S fh_conditional_lower(const MassFunction<S>& m, SubsetMask a, SubsetMask h) {
  using T = scalar_traits<S>;
  require_on_frame(m.frame(), a, "fh_conditional_lower");
  require_on_frame(m.frame(), h, "fh_conditional_lower");
  auto points = extreme_points(m);
  bool found = false;
  S best = T::zero();
  for (const auto& p : points) {
    S ph = p.probability(h);
    if (!T::is_positive(ph)) continue;
    S val = p.probability(a & h) / ph;
    if (!found || val < best) {
      best = val;
      found = true;
    }
  }
  if (!found) fail(errc::condition_impossible, "every compatible distribution gives the conditioning set probability 0");
  return best;
}

// inf P(A|H) over extreme points constrained to P(Hᶜ) = B(Hᶜ), the
// distributions that allocate no more mass against H than the evidence
// forces. Equals the conditional belief.
template <typename S>
S compatible_conditional_lower(const MassFunction<S>& m, SubsetMask a, SubsetMask h) {
  using T = scalar_traits<S>;
  require_on_frame(m.frame(), a, "compatible_conditional_lower");
  require_on_frame(m.frame(), h, "compatible_conditional_lower");
  S b_hc = belief(m, h.complement());
  if (T::denominator_vanishes(T::one() - b_hc))
    fail(errc::conditioning_undefined, "belief of the complement is 1");
  auto points = extreme_points(m);
  bool found = false;
  S best = T::zero();
  for (const auto& p : points) {
    if (!T::eq(p.probability(h.complement()), b_hc)) continue;
    S ph = p.probability(h);
    if (!T::is_positive(ph)) continue;
    S val = p.probability(a & h) / ph;
    if (!found || val < best) {
      best = val;
      found = true;
    }
  }
  if (!found) fail(errc::conditioning_undefined, "no compatible distribution meets the constraint");
  return best;
}

}  // namespace bf
