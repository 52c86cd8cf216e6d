#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <random>

#include "bf/expectation.hpp"
#include "bf/products.hpp"
#include "bf/scenarios.hpp"
#include "test_support.hpp"

using namespace bf;
using bft::error_code_of;
using bft::letters;
using bft::random_mass;

namespace {

RandomVariable<Rational> random_rv(std::mt19937_64& rng, const FramePtr& fr) {
  std::vector<Rational> v;
  v.reserve(static_cast<size_t>(fr->size()));
  for (int i = 0; i < fr->size(); ++i)
    v.push_back(make_rational(static_cast<long>(rng() % 13) - 6, static_cast<long>(1 + rng() % 4)));
  return RandomVariable<Rational>::make(fr, std::move(v));
}

}  // namespace

TEST_CASE("random variables validate their shape") {
  FramePtr fr = letters(3);
  CHECK(error_code_of([&] {
          RandomVariable<Rational>::make(fr, {Rational(1), Rational(2)});
        }) == errc::frame_mismatch);
  auto x = RandomVariable<Rational>::make(fr, {Rational(3), Rational(1), Rational(2)});
  CHECK(x.min_on(SubsetMask::full_set(3)) == 1);
  CHECK(x.min_on(SubsetMask(0b101, 3)) == 2);
  CHECK(error_code_of([&] { x.min_on(SubsetMask::empty_set(3)); }) == errc::frame_mismatch);
}

TEST_CASE("the lower expectation of an indicator is the belief of its set") {
  std::mt19937_64 rng(97);
  for (int round = 0; round < 50; ++round) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 4));
    MassFunction<Rational> m = random_mass(rng, fr);
    for (std::uint32_t a = 0; a < fr->subset_count(); ++a) {
      SubsetMask set(a, fr->size());
      REQUIRE(lower_expectation(m, RandomVariable<Rational>::indicator(fr, set)) ==
              belief(m, set));
    }
  }
}

TEST_CASE("lower expectations are superadditive, homogeneous and monotone") {
  std::mt19937_64 rng(101);
  for (int round = 0; round < 60; ++round) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    MassFunction<Rational> m = random_mass(rng, fr);
    auto x = random_rv(rng, fr);
    auto y = random_rv(rng, fr);

    std::vector<Rational> sum, scaled, shifted, dominating;
    Rational c = make_rational(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 3));
    Rational shift(static_cast<long>(rng() % 9) - 4, 1);
    for (int i = 0; i < fr->size(); ++i) {
      sum.push_back(x.value(i) + y.value(i));
      scaled.push_back(c * x.value(i));
      shifted.push_back(x.value(i) + shift);
      dominating.push_back(x.value(i) + Rational(static_cast<long>(rng() % 3), 1));
    }
    Rational ex = lower_expectation(m, x);
    REQUIRE(lower_expectation(m, RandomVariable<Rational>::make(fr, sum)) >=
            ex + lower_expectation(m, y));
    REQUIRE(lower_expectation(m, RandomVariable<Rational>::make(fr, scaled)) == c * ex);
    REQUIRE(lower_expectation(m, RandomVariable<Rational>::make(fr, shifted)) == ex + shift);
    REQUIRE(lower_expectation(m, RandomVariable<Rational>::make(fr, dominating)) >= ex);
  }
}

TEST_CASE("for probabilities the lower expectation is the expectation") {
  std::mt19937_64 rng(103);
  for (int round = 0; round < 30; ++round) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    auto dist = bft::random_distribution(rng, fr);
    auto m = MassFunction<Rational>::from_probability(dist);
    auto x = random_rv(rng, fr);
    Rational classic(0);
    for (int i = 0; i < fr->size(); ++i) classic += dist.weight(i) * x.value(i);
    REQUIRE(lower_expectation(m, x) == classic);
  }
}

TEST_CASE("guaranteed-mean band for the overridable coin flip") {
  Rational p(1, 5);
  MassFunction<Rational> m = croupier_factor(p);
  auto heads = RandomVariable<Rational>::indicator(coin_frame(), SubsetMask::singleton(0, 2));

  REQUIRE(lower_expectation(m, heads) == Rational(2, 5));
  // single draw: guaranteed-heads evidence carries 2/5 of the mass
  CHECK(exact_lln_belief<Rational>(m, heads, 1, Rational(2, 5)) == Rational(2, 5));
  // two draws: mean reaches 2/5 unless both draws are tails-or-unknown
  CHECK(exact_lln_belief<Rational>(m, heads, 2, Rational(2, 5)) == Rational(16, 25));
  // the mean always reaches 0 and never strictly exceeds 1
  CHECK(exact_lln_belief<Rational>(m, heads, 5, Rational(0)) == 1);
  CHECK(exact_lln_belief<Rational>(m, heads, 5, Rational(11, 10)) == 0);
}

TEST_CASE("one draw: the mean event is just the level set") {
  std::mt19937_64 rng(107);
  for (int round = 0; round < 40; ++round) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    MassFunction<Rational> m = random_mass(rng, fr);
    auto x = random_rv(rng, fr);
    Rational alpha(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
    std::uint32_t level = 0;
    for (int i = 0; i < fr->size(); ++i)
      if (x.value(i) >= alpha) level |= 1u << i;
    REQUIRE(exact_lln_belief<Rational>(m, x, 1, alpha) ==
            belief(m, SubsetMask(level, fr->size())));
  }
}

TEST_CASE("two draws: the convolution matches the product-space belief") {
  std::mt19937_64 rng(109);
  for (int round = 0; round < 30; ++round) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    MassFunction<Rational> m = random_mass(rng, fr);
    auto x = random_rv(rng, fr);
    ProductFrame pf = ProductFrame::make(fr, fr);
    MassFunction<Rational> joint = independent_product(pf, m, m);

    for (long da = -1; da <= 1; ++da) {
      Rational alpha = lower_expectation(m, x) + make_rational(da, 7);
      std::uint32_t event = 0;
      for (int i = 0; i < fr->size(); ++i)
        for (int j = 0; j < fr->size(); ++j)
          if (x.value(i) + x.value(j) >= 2 * alpha) event |= 1u << pf.pair_index(i, j);
      REQUIRE(exact_lln_belief<Rational>(m, x, 2, alpha) ==
              belief(joint, SubsetMask(event, pf.product()->size())));
    }
  }
}

TEST_CASE("the float convolution tracks the rational one") {
  std::mt19937_64 rng(113);
  for (int round = 0; round < 25; ++round) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    MassFunction<Rational> m = random_mass(rng, fr);
    // quarters only: exact in binary and on the float kernel's 1e-12 grid
    std::vector<Rational> steps;
    for (int i = 0; i < fr->size(); ++i)
      steps.push_back(make_rational(static_cast<long>(rng() % 25) - 12, 4));
    auto x = RandomVariable<Rational>::make(fr, steps);
    MassFunction<double> mf = to_float_mass(m);
    RandomVariable<double> xf = to_float_rv(x);
    for (long n : {1L, 3L, 7L}) {
      Rational alpha = make_rational(static_cast<long>(rng() % 5) - 2, 2);
      double got = exact_lln_belief<double>(mf, xf, n, to_double(alpha));
      double want = to_double(exact_lln_belief<Rational>(m, x, n, alpha));
      REQUIRE(std::abs(got - want) < 1e-9);
    }
  }
}

TEST_CASE("convolution guards its resource budget") {
  FramePtr fr = coin_frame();
  MassFunction<Rational> m = croupier_factor(Rational(1, 5));
  auto heads = RandomVariable<Rational>::indicator(fr, SubsetMask::singleton(0, 2));
  CHECK(error_code_of([&] {
          exact_lln_belief<Rational>(m, heads, 0, Rational(0));
        }) == errc::resource_limit);
  CHECK(error_code_of([&] {
          exact_lln_belief<Rational>(m, heads, 10'001, Rational(0));
        }) == errc::resource_limit);

  MassFunction<double> mf = to_float_mass(m);
  CHECK(error_code_of([&] {
          exact_lln_belief<double>(
              mf, RandomVariable<double>::make(fr, {1000.0, 0.0}), 5, 0.5);
        }) == errc::resource_limit);
  // incommensurate grid keys make the lattice span blow past the cap
  CHECK(error_code_of([&] {
          exact_lln_belief<double>(
              mf, RandomVariable<double>::make(fr, {1.0, 1e-10}), 5, 0.5);
        }) == errc::resource_limit);
}

TEST_CASE("the simulation is reproducible and thread-count independent") {
  MassFunction<Rational> m = croupier_factor(Rational(1, 5));
  auto heads = RandomVariable<Rational>::indicator(coin_frame(), SubsetMask::singleton(0, 2));

  LLNReport a = simulate_lln(m, heads, 400, 200, 0.1, kDefaultLlnSeed, true);
  LLNReport b = simulate_lln(m, heads, 400, 200, 0.1, kDefaultLlnSeed, true);
  CHECK(a.empirical_lower == b.empirical_lower);
  CHECK(a.empirical_upper == b.empirical_upper);

  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  LLNReport serial = simulate_lln(m, heads, 400, 200, 0.1, kDefaultLlnSeed);
  omp_set_num_threads(4);
  LLNReport wide = simulate_lln(m, heads, 400, 200, 0.1, kDefaultLlnSeed);
  omp_set_num_threads(saved);
  CHECK(serial.empirical_lower == wide.empirical_lower);
  CHECK(serial.empirical_upper == wide.empirical_upper);

  CHECK(a.expectation == doctest::Approx(0.4));
  // at n=400 and ε=0.1 the mean all but surely clears E−ε and not E+ε
  CHECK(a.empirical_lower >= 0.99);
  CHECK(a.empirical_upper <= 0.01);
  REQUIRE(a.exact_lower.has_value());
  REQUIRE(a.exact_upper.has_value());
  CHECK(*a.exact_lower == exact_lln_belief<double>(to_float_mass(m), to_float_rv(heads), 400,
                                                   a.expectation - 0.1));
  CHECK(*a.exact_lower >= 0.99);
  CHECK(*a.exact_upper <= 0.01);
}

TEST_CASE("simulation inputs are validated") {
  MassFunction<Rational> m = croupier_factor(Rational(1, 5));
  auto heads = RandomVariable<Rational>::indicator(coin_frame(), SubsetMask::singleton(0, 2));
  CHECK(error_code_of([&] { simulate_lln(m, heads, 0, 10, 0.1, 1); }) == errc::resource_limit);
  CHECK(error_code_of([&] { simulate_lln(m, heads, 10, 0, 0.1, 1); }) == errc::resource_limit);
  CHECK(error_code_of([&] { simulate_lln(m, heads, 10, 10, 0.0, 1); }) == errc::resource_limit);
  CHECK(error_code_of([&] {
          simulate_lln(m, RandomVariable<Rational>::indicator(letters(3), SubsetMask::empty_set(3)),
                       10, 10, 0.1, 1);
        }) == errc::frame_mismatch);
}
