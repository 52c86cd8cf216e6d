#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bf/errors.hpp"
#include "bf/frame.hpp"
#include "bf/mass.hpp"

namespace bf {

// buys are the bets whose total price must dominate; sells the dominated side.
// Either list may be empty and sets may repeat.
struct BetFamily {
  std::vector<SubsetMask> buys;
  std::vector<SubsetMask> sells;
};

enum class BetVerdict { premise_fails, constraint_holds, violation };

inline const char* to_string(BetVerdict v) {
  switch (v) {
    case BetVerdict::premise_fails: return "PremiseFails";
    case BetVerdict::constraint_holds: return "ConstraintHolds";
    case BetVerdict::violation: return "Violation";
  }
  return "?";
}

template <typename S>
struct BetCheck {
  BetVerdict verdict = BetVerdict::constraint_holds;
  // outcome singleton (pointwise mode) or subset (subset mode) breaking the premise
  std::optional<std::uint32_t> premise_witness;
  S buy_total = scalar_traits<S>::zero();
  S sell_total = scalar_traits<S>::zero();
};

enum class BetMode { p2, b2star };

namespace detail {

template <typename S>
void require_family_on_frame(const SetFunction<S>& prices, const BetFamily& fam) {
  for (const SubsetMask& a : fam.buys) require_on_frame(prices.frame(), a, "bet family");
  for (const SubsetMask& b : fam.sells) require_on_frame(prices.frame(), b, "bet family");
}

template <typename S>
BetCheck<S> settle(const SetFunction<S>& prices, const BetFamily& fam,
                   std::optional<std::uint32_t> premise_witness) {
  BetCheck<S> out;
  for (const SubsetMask& a : fam.buys) out.buy_total += prices.value(a.bits());
  for (const SubsetMask& b : fam.sells) out.sell_total += prices.value(b.bits());
  if (premise_witness) {
    out.verdict = BetVerdict::premise_fails;
    out.premise_witness = premise_witness;
  } else if (scalar_traits<S>::mass_negative(out.buy_total - out.sell_total)) {
    out.verdict = BetVerdict::violation;
  } else {
    out.verdict = BetVerdict::constraint_holds;
  }
  return out;
}

}  // namespace detail

// Pointwise premise: under every realization the buys pay out at least as
// often as the sells. When it holds, coherent probability prices must satisfy
// Σ buys ≥ Σ sells.
template <typename S>
BetCheck<S> check_p2(const SetFunction<S>& prices, const BetFamily& fam) {
  detail::require_family_on_frame(prices, fam);
  const int n = prices.frame().size();
  std::optional<std::uint32_t> witness;
  for (int w = 0; w < n && !witness; ++w) {
    int cover = 0;
    for (const SubsetMask& a : fam.buys)
      if (a.contains(w)) ++cover;
    for (const SubsetMask& b : fam.sells)
      if (b.contains(w)) --cover;
    if (cover < 0) witness = std::uint32_t{1} << w;
  }
  return detail::settle(prices, fam, witness);
}

// Subset premise: under every state of knowledge S the buys have at least as
// many guaranteed payouts as the sells. S = ∅ is included, forcing
// |buys| ≥ |sells|. Characterizes belief functions.
template <typename S>
BetCheck<S> check_b2star(const SetFunction<S>& prices, const BetFamily& fam) {
  detail::require_family_on_frame(prices, fam);
  const std::uint32_t subsets = static_cast<std::uint32_t>(prices.frame().subset_count());
  std::optional<std::uint32_t> witness;
  for (std::uint32_t s = 0; s < subsets && !witness; ++s) {
    int cover = 0;
    for (const SubsetMask& a : fam.buys)
      if ((s & a.bits()) == s) ++cover;
    for (const SubsetMask& b : fam.sells)
      if ((s & b.bits()) == s) --cover;
    if (cover < 0) witness = s;
  }
  return detail::settle(prices, fam, witness);
}

template <typename S>
BetCheck<S> check_bets(const SetFunction<S>& prices, const BetFamily& fam, BetMode mode) {
  return mode == BetMode::p2 ? check_p2(prices, fam) : check_b2star(prices, fam);
}

namespace detail {

// Guaranteed-payout counts the premise compares: one slot per outcome in
// pointwise mode, one per subset in subset mode.
template <typename S>
std::vector<int> premise_slots(const SetFunction<S>& prices, BetMode mode) {
  if (mode == BetMode::p2)
    return std::vector<int>(static_cast<size_t>(prices.frame().size()), 0);
  return std::vector<int>(prices.frame().subset_count(), 0);
}

inline void add_bet(std::vector<int>& cover, std::uint32_t bits, BetMode mode, int frame_size,
                    int delta) {
  if (mode == BetMode::p2) {
    for (int w = 0; w < frame_size; ++w)
      if (bits & (std::uint32_t{1} << w)) cover[static_cast<size_t>(w)] += delta;
  } else {
    // all S ⊆ bits, the empty set included
    std::uint32_t s = bits;
    while (true) {
      cover[s] += delta;
      if (s == 0) break;
      s = (s - 1) & bits;
    }
  }
}

// true iff every slot the new sell touches still has cover left
inline bool sell_fits(const std::vector<int>& cover, std::uint32_t bits, BetMode mode,
                      int frame_size) {
  if (mode == BetMode::p2) {
    for (int w = 0; w < frame_size; ++w)
      if ((bits & (std::uint32_t{1} << w)) && cover[static_cast<size_t>(w)] == 0) return false;
    return true;
  }
  std::uint32_t s = bits;
  while (true) {
    if (cover[s] == 0) return false;
    if (s == 0) break;
    s = (s - 1) & bits;
  }
  return true;
}

template <typename S>
bool search_sells(const SetFunction<S>& prices, BetMode mode, std::vector<int>& cover,
                  const S& buy_total, S sell_total, std::uint32_t first, int remaining,
                  std::vector<std::uint32_t>& sells) {
  using T = scalar_traits<S>;
  if (remaining == 0)
    return T::mass_negative(buy_total - sell_total);
  const int n = prices.frame().size();
  const std::uint32_t subsets = static_cast<std::uint32_t>(prices.frame().subset_count());
  for (std::uint32_t y = first; y < subsets; ++y) {
    if (!sell_fits(cover, y, mode, n)) continue;
    add_bet(cover, y, mode, n, -1);
    sells.push_back(y);
    if (search_sells(prices, mode, cover, buy_total, S(sell_total + prices.value(y)), y,
                     remaining - 1, sells))
      return true;
    sells.pop_back();
    add_bet(cover, y, mode, n, +1);
  }
  return false;
}

template <typename S>
bool search_buys(const SetFunction<S>& prices, BetMode mode, std::vector<int>& cover,
                 S buy_total, std::uint32_t first, int remaining, int sell_count,
                 std::vector<std::uint32_t>& buys, std::vector<std::uint32_t>& sells) {
  if (remaining == 0) {
    sells.clear();
    return search_sells(prices, mode, cover, buy_total, scalar_traits<S>::zero(),
                        std::uint32_t{0}, sell_count, sells);
  }
  const std::uint32_t subsets = static_cast<std::uint32_t>(prices.frame().subset_count());
  const int n = prices.frame().size();
  for (std::uint32_t x = first; x < subsets; ++x) {
    add_bet(cover, x, mode, n, +1);
    buys.push_back(x);
    if (search_buys(prices, mode, cover, S(buy_total + prices.value(x)), x, remaining - 1,
                    sell_count, buys, sells))
      return true;
    buys.pop_back();
    add_bet(cover, x, mode, n, -1);
  }
  return false;
}

}  // namespace detail

// Bounded lexicographic search for a family the prices cannot settle
// coherently. Families are scanned by buy count, then sell count, then the
// nondecreasing buy and sell sequences in order, so the first hit is stable.
template <typename S>
std::optional<BetFamily> find_violation(const SetFunction<S>& prices, int max_bets, BetMode mode) {
  if (prices.frame().size() > 5)
    fail(errc::frame_too_large, "violation search is limited to frames of 5");
  if (max_bets < 0 || max_bets > 3)
    fail(errc::resource_limit, "violation search is limited to 3 bets per side");

  std::vector<std::uint32_t> buys, sells;
  for (int n_buys = 0; n_buys <= max_bets; ++n_buys)
    for (int n_sells = 0; n_sells <= max_bets; ++n_sells) {
      std::vector<int> cover = detail::premise_slots(prices, mode);
      buys.clear();
      if (detail::search_buys(prices, mode, cover, scalar_traits<S>::zero(), std::uint32_t{0},
                              n_buys, n_sells, buys, sells)) {
        BetFamily fam;
        const int n = prices.frame().size();
        for (std::uint32_t x : buys) fam.buys.emplace_back(x, n);
        for (std::uint32_t y : sells) fam.sells.emplace_back(y, n);
        return fam;
      }
    }
  return std::nullopt;
}

}  // namespace bf
