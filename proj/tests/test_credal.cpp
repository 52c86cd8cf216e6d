#include <doctest.h>

#include <algorithm>
#include <random>

#include "bf/conditioning.hpp"
#include "bf/credal.hpp"
#include "bf/scenarios.hpp"
#include "test_support.hpp"

using namespace bf;
using bft::error_code_of;
using bft::letters;
using bft::random_mass;

TEST_CASE("the family mass has exactly two extreme points") {
  MassFunction<Rational> m = family_mass();
  auto points = extreme_points(m);
  REQUIRE(points.size() == 2);
  // ordered lexicographically by weight vector: (0,9/10,1/10) then (9/10,0,1/10)
  CHECK(points[0].weight(0) == 0);
  CHECK(points[0].weight(1) == Rational(9, 10));
  CHECK(points[0].weight(2) == Rational(1, 10));
  CHECK(points[1].weight(0) == Rational(9, 10));
  CHECK(points[1].weight(1) == 0);
  CHECK(points[1].weight(2) == Rational(1, 10));
}

TEST_CASE("duplicate allocations collapse to one extreme point") {
  // both focal sets contain outcome b, so two allocations coincide
  FramePtr fr = letters(2);
  auto m = MassFunction<Rational>::make(
      fr, {{SubsetMask::full_set(2), Rational(1, 2)},
           {SubsetMask::singleton(1, 2), Rational(1, 2)}});
  auto points = extreme_points(m);
  REQUIRE(points.size() == 2);  // (1/2,1/2) and (0,1), not three
  CHECK(points[0].weight(0) == 0);
  CHECK(points[1].weight(0) == Rational(1, 2));
}

TEST_CASE("belief is the lower envelope of the compatible distributions") {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 60; ++round) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    MassFunction<Rational> m = random_mass(rng, fr);
    for (std::uint32_t a = 0; a < fr->subset_count(); ++a) {
      SubsetMask set(a, fr->size());
      REQUIRE(lower_probability(m, set) == belief(m, set));
    }
  }
}

TEST_CASE("every extreme point dominates belief outcome-set by outcome-set") {
  std::mt19937_64 rng(79);
  for (int round = 0; round < 30; ++round) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    MassFunction<Rational> m = random_mass(rng, fr);
    for (const auto& p : extreme_points(m))
      for (std::uint32_t a = 0; a < fr->subset_count(); ++a) {
        SubsetMask set(a, fr->size());
        REQUIRE(p.probability(set) >= belief(m, set));
      }
  }
}

TEST_CASE("vertex-wise and evidence-compatible conditioning split on the family") {
  MassFunction<Rational> m = family_mass();
  const Frame& fr = m.frame();
  SubsetMask father = encode_subset(fr, {"Father"});
  SubsetMask h = encode_subset(fr, {"Father", "Son"});

  // the point sending 9/10 to Mother survives the vertex-wise infimum
  CHECK(fh_conditional_lower(m, father, h) == 0);
  // constraining P({Mother}) to its forced value 0 rules that point out
  CHECK(compatible_conditional_lower(m, father, h) == Rational(9, 10));
  CHECK(conditional_belief(m, h, father) == Rational(9, 10));
}

TEST_CASE("evidence-compatible conditioning equals conditional belief") {
  std::mt19937_64 rng(83);
  int done = 0;
  while (done < 50) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    MassFunction<Rational> m = random_mass(rng, fr);
    SubsetMask h(static_cast<std::uint32_t>(1 + rng() % (fr->subset_count() - 1)), fr->size());
    if (belief(m, h.complement()) == 1) continue;
    ++done;
    for (std::uint32_t a = 0; a < fr->subset_count(); ++a) {
      SubsetMask query(a, fr->size());
      REQUIRE(compatible_conditional_lower(m, query, h) == conditional_belief(m, h, query));
    }
  }
}

TEST_CASE("the vertex-wise conditional never exceeds the compatible one") {
  std::mt19937_64 rng(89);
  int done = 0;
  while (done < 50) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    MassFunction<Rational> m = random_mass(rng, fr);
    SubsetMask h(static_cast<std::uint32_t>(1 + rng() % (fr->subset_count() - 1)), fr->size());
    if (belief(m, h.complement()) == 1) continue;
    if (!scalar_traits<Rational>::is_positive(plausibility(m, h))) continue;
    ++done;
    for (std::uint32_t a = 0; a < fr->subset_count(); ++a) {
      SubsetMask query(a, fr->size());
      REQUIRE(fh_conditional_lower(m, query, h) <=
              compatible_conditional_lower(m, query, h));
    }
  }
}

TEST_CASE("croupier: probability the coins match, given a same-face report") {
  Rational p(1, 2);
  MassFunction<Rational> m = croupier_product_mass(p);
  SubsetMask same = croupier_same_face();
  ProductFrame pf = croupier_product_frame();
  SubsetMask hh = pf.rectangle(SubsetMask::singleton(0, 2), SubsetMask::singleton(0, 2));

  Rational lower = fh_conditional_lower(m, hh, same);
  Rational upper = 1 - fh_conditional_lower(m, hh.complement(), same);
  CHECK(lower == Rational(1, 10));
  CHECK(upper == Rational(9, 10));

  // the evidence-compatible value sits inside the vertex-wise interval
  Rational compatible = compatible_conditional_lower(m, hh, same);
  CHECK(lower <= compatible);
  CHECK(compatible == conditional_belief(m, same, hh));
}

TEST_CASE("conditioning on an impossible event fails cleanly") {
  FramePtr fr = letters(2);
  auto point = MassFunction<Rational>::make(fr, {{SubsetMask::singleton(0, 2), Rational(1)}});
  SubsetMask b = SubsetMask::singleton(1, 2);
  CHECK(error_code_of([&] {
          fh_conditional_lower(point, SubsetMask::full_set(2), b);
        }) == errc::condition_impossible);
  CHECK(error_code_of([&] {
          compatible_conditional_lower(point, SubsetMask::full_set(2), b);
        }) == errc::conditioning_undefined);
}

TEST_CASE("the allocation count is capped") {
  // seven 6-element sets and the full set: 6^7 · 7 allocations is past the cap
  FramePtr fr = letters(7);
  std::vector<std::pair<SubsetMask, Rational>> entries;
  for (int i = 0; i < 7; ++i)
    entries.emplace_back(SubsetMask::full_set(7) - SubsetMask::singleton(i, 7), Rational(1, 8));
  entries.emplace_back(SubsetMask::full_set(7), Rational(1, 8));
  auto m = MassFunction<Rational>::make(fr, entries);
  CHECK(error_code_of([&] { extreme_points(m); }) == errc::too_many_extreme_points);
}
