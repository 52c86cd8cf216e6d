// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bf/betting.hpp"
#include "bf/combination.hpp"
#include "bf/conditioning.hpp"
#include "bf/credal.hpp"
#include "bf/expectation.hpp"
#include "bf/products.hpp"
#include "bf/scenarios.hpp"
#include "test_support.hpp"

using namespace bf;
using bft::letters;
using bft::random_mass;

namespace {

struct Criterion {
  int number;
  const char* title;
  std::function<void()> body;
};

struct Failure {
  std::string detail;
};

void require(bool ok, const std::string& detail) {
  if (!ok) throw Failure{detail};
}

void require_line(const ScenarioReport& rep, size_t idx, const std::string& expected_actual) {
  require(idx < rep.lines.size(), rep.name + ": missing line " + std::to_string(idx));
  const CheckLine& line = rep.lines[idx];
  require(line.pass, rep.name + ": '" + line.label + "' expected " + line.expected + ", got " +
                          line.actual);
  require(line.actual == expected_actual, rep.name + ": '" + line.label + "' should read " +
                                              expected_actual + ", got " + line.actual);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- criterion bodies ----------------------------------------------------

void golden_scenarios() {
  auto start = std::chrono::steady_clock::now();
  require_line(run_scenario("forensic-uniform"), 1, "10/11");
  require_line(run_scenario("forensic-ignorant"), 1, "9/10");
  ScenarioReport coin = run_scenario("dempster-coin");
  require_line(coin, 0, "9/13");
  require_line(coin, 1, "4/13");
  ScenarioReport fh = run_scenario("fh-vs-dempster");
  require_line(fh, 0, "9/10");
  require_line(fh, 1, "0");
  require_line(fh, 2, "9/10");
  ScenarioReport croupier = run_scenario("croupier");
  require_line(croupier, 0, "5/14");
  require_line(croupier, 1, "5/7");
  require_line(croupier, 2, "1/10");
  require_line(croupier, 3, "9/10");
  ScenarioReport paradox = run_scenario("paradox-xy");
  require_line(paradox, 0, "0");
  require_line(paradox, 1, "1/2");
  double elapsed = seconds_since(start);
  require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s, budget is 1 s");
}

void symbolic_sampling() {
  const std::pair<long, long> ps[] = {{1, 10}, {1, 4}, {1, 2}, {3, 4}, {9, 10}};
  for (auto [num, den] : ps) {
    Rational p(num, den);
    std::string tag = " at p=" + to_fraction_string(p);

    MassFunction<Rational> forensic = forensic_ignorant_mass(p);
    Rational engine =
        belief(condition_mass(forensic, forensic_event_e()), forensic_event_g());
    require(engine == 1 - p, "match-given-presence disagrees with 1-p" + tag);

    MassFunction<Rational> pair_mass = croupier_product_mass(p);
    ProductFrame pf = croupier_product_frame();
    SubsetMask hh = encode_subset(*pf.product(), {"(h,h)"});
    Rational q = 1 - p;
    Rational formula = (q * q / 4 + p * q) / (1 - q * q / 2);
    Rational via_engine = belief(condition_mass(pair_mass, croupier_same_face()), hh);
    require(via_engine == formula, "same-face belief disagrees with the closed form" + tag);
  }
}

void transform_round_trip() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(211);
  for (int round = 0; round < 1000; ++round) {
    FramePtr fr = letters(1 + static_cast<int>(rng() % 6));
    MassFunction<Rational> m = random_mass(rng, fr);
    require(masses_equal(m, mobius_inverse(belief_table(m))),
            "round trip failed on a frame of " + std::to_string(fr->size()));
  }
  double elapsed = seconds_since(start);
  require(elapsed < 5.0, "took " + std::to_string(elapsed) + " s, budget is 5 s");
}

void conditioning_oracle() {
  std::mt19937_64 rng(223);
  int done = 0;
  while (done < 200) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    MassFunction<Rational> m = random_mass(rng, fr);
    const std::uint32_t subsets = fr->subset_count();
    bool used = false;
    for (std::uint32_t h = 1; h < subsets; ++h) {
      SubsetMask hm(h, fr->size());
      if (!scalar_traits<Rational>::is_positive(plausibility(m, hm))) continue;
      used = true;
      MassFunction<Rational> cond = condition_mass(m, hm);
      for (std::uint32_t a = 0; a < subsets; ++a) {
        SubsetMask am(a, fr->size());
        require(conditional_belief(m, hm, am) == belief(cond, am),
                "closed form disagrees with condition-then-evaluate");
      }
    }
    if (used) ++done;
  }
}

void credal_identities() {
  std::mt19937_64 rng(227);
  int done = 0;
  while (done < 200) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    MassFunction<Rational> m = random_mass(rng, fr);
    const std::uint32_t subsets = fr->subset_count();
    for (std::uint32_t a = 0; a < subsets; ++a) {
      SubsetMask am(a, fr->size());
      require(lower_probability(m, am) == belief(m, am),
              "lower envelope disagrees with belief");
    }
    for (std::uint32_t h = 1; h < subsets; ++h) {
      SubsetMask hm(h, fr->size());
      if (belief(m, hm.complement()) == 1) continue;
      for (std::uint32_t a = 0; a < subsets; ++a) {
        SubsetMask am(a, fr->size());
        Rational cb = conditional_belief(m, hm, am);
        require(compatible_conditional_lower(m, am, hm) == cb,
                "compatible-vertex infimum disagrees with conditional belief");
        require(fh_conditional_lower(m, am, hm) <= cb,
                "vertex-wise infimum exceeds the conditional belief");
      }
    }
    ++done;
  }

  MassFunction<Rational> fam = family_mass();
  SubsetMask father = encode_subset(fam.frame(), {"Father"});
  SubsetMask h = encode_subset(fam.frame(), {"Father", "Son"});
  require(fh_conditional_lower(fam, father, h) == 0 &&
              compatible_conditional_lower(fam, father, h) == Rational(9, 10),
          "the strict gap between the two conditional readings is gone");
}

void independence_equivalence() {
  std::mt19937_64 rng(229);
  for (int round = 0; round < 500; ++round) {
    FramePtr lf = letters(1 + static_cast<int>(rng() % 3));
    std::vector<std::string> rl;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 3); ++i)
      rl.push_back("r" + std::to_string(i));
    ProductFrame pf = ProductFrame::make(lf, Frame::make(rl));
    // half the samples honestly independent, half arbitrary
    MassFunction<Rational> m =
        round % 2 ? random_mass(rng, pf.product())
                  : independent_product(pf, random_mass(rng, pf.left()),
                                        random_mass(rng, pf.right()));
    auto rep = check_independence(pf, m);
    bool via_cond = rep.concentrates_on_rectangles && rep.cond_invariance;
    bool via_prod = rep.concentrates_on_rectangles && rep.product_form;
    require(via_cond == rep.mass_factorizes && via_prod == rep.mass_factorizes,
            "the three independence statements disagree");
  }

  ProductFrame pf = paradox_frame();
  MassFunction<Rational> bent = MassFunction<Rational>::from_bits(
      pf.product(),
      {{0b1111u, Rational(1, 4)}, {0b0001u, Rational(1, 2)}, {0b0111u, Rational(1, 4)}});
  auto rep1 = check_independence(pf, bent);
  SubsetMask corner = pf.rectangle(SubsetMask::singleton(0, 2), SubsetMask::singleton(0, 2));
  Rational joint = belief(bent, corner);
  Rational split = belief(bent, pf.cylinder_left(SubsetMask::singleton(0, 2))) *
                   belief(bent, pf.cylinder_right(SubsetMask::singleton(0, 2)));
  require(rep1.cond_invariance && !rep1.independent && joint == Rational(1, 2) &&
              split == Rational(1, 4),
          "first counterexample lost its 1/2 vs 1/4 gap");

  MassFunction<Rational> diag =
      MassFunction<Rational>::from_bits(pf.product(), {{pf.diagonal().bits(), Rational(1)}});
  auto rep2 = check_independence(pf, diag);
  SubsetMask x0 = pf.cylinder_left(SubsetMask::singleton(0, 2));
  SubsetMask y0 = pf.cylinder_right(SubsetMask::singleton(0, 2));
  require(rep2.product_form && !rep2.independent && belief(diag, x0) == 0 &&
              conditional_belief(diag, y0, x0) == 1,
          "second counterexample lost its 0 vs 1 gap");
}

void dempster_diagonal() {
  auto coin = diagonal_equivalence_check(coin_report_mass(Rational(3, 5)),
                                         coin_report_mass(Rational(3, 5)));
  require(coin.equal, "coin combination disagrees with diagonal conditioning");
  SubsetMask tails = SubsetMask::singleton(1, 2);
  require(coin.combined.mass(tails) == Rational(4, 13) && Rational(4, 13) < Rational(2, 5),
          "agreeing reports failed to lower the tails mass");

  std::mt19937_64 rng(233);
  int done = 0;
  while (done < 100) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 2));
    MassFunction<Rational> a = random_mass(rng, fr);
    MassFunction<Rational> b = random_mass(rng, fr);
    try {
      require(diagonal_equivalence_check(a, b).equal,
              "combination disagrees with diagonal conditioning");
      ++done;
    } catch (const Error& e) {
      if (e.code() != errc::conditioning_undefined && e.code() != errc::total_conflict) throw;
    }
  }
}

void lln_statistics() {
  auto start = std::chrono::steady_clock::now();

  MassFunction<Rational> coin = croupier_factor(Rational(1, 5));
  RandomVariable<Rational> heads =
      RandomVariable<Rational>::indicator(coin.frame_ptr(), encode_subset(coin.frame(), {"h"}));
  require(lower_expectation(coin, heads) == Rational(2, 5), "coin guaranteed mean moved");
  LLNReport head_run = simulate_lln(coin, heads, 2000, 200, 0.05, kDefaultLlnSeed);
  require(head_run.empirical_lower >= 0.99,
          "lower-band rate " + std::to_string(head_run.empirical_lower));
  require(head_run.empirical_upper <= 0.01,
          "upper-band rate " + std::to_string(head_run.empirical_upper));

  struct Config {
    MassFunction<Rational> m;
    RandomVariable<Rational> x;
    long long n;
    double eps;
  };
  MassFunction<Rational> fam = family_mass();
  MassFunction<Rational> pair_mass = croupier_product_mass(Rational(1, 2));
  FramePtr fam_fr = fam.frame_ptr();
  FramePtr pair_fr = pair_mass.frame_ptr();
  std::vector<Config> configs;
  configs.push_back({coin, heads, 2000, 0.05});
  configs.push_back({croupier_factor(Rational(1, 2)),
                     RandomVariable<Rational>::indicator(coin_frame(), SubsetMask::singleton(0, 2)),
                     1000, 0.05});
  configs.push_back({croupier_factor(Rational(9, 10)),
                     RandomVariable<Rational>::indicator(coin_frame(), SubsetMask::singleton(0, 2)),
                     800, 0.1});
  configs.push_back({coin_report_mass(Rational(3, 5)),
                     RandomVariable<Rational>::indicator(coin_frame(), SubsetMask::singleton(0, 2)),
                     500, 0.05});
  configs.push_back({fam,
                     RandomVariable<Rational>::indicator(
                         fam_fr, encode_subset(*fam_fr, {"Father", "Mother"})),
                     400, 0.05});
  configs.push_back({fam,
                     RandomVariable<Rational>::make(
                         fam_fr, {Rational(1), Rational(1, 2), Rational(0)}),
                     400, 0.05});
  configs.push_back({forensic_ignorant_mass(Rational(1, 10)),
                     RandomVariable<Rational>::indicator(forensic_frame(), forensic_event_e()),
                     600, 0.05});
  configs.push_back({forensic_uniform_mass(Rational(1, 10)),
                     RandomVariable<Rational>::indicator(forensic_frame(), forensic_event_g()),
                     600, 0.05});
  configs.push_back({MassFunction<Rational>::vacuous(letters(3)),
                     RandomVariable<Rational>::make(
                         letters(3), {Rational(0), Rational(1, 2), Rational(1)}),
                     300, 0.05});
  configs.push_back({pair_mass,
                     RandomVariable<Rational>::indicator(pair_fr, croupier_same_face()),
                     600, 0.05});
  require(configs.size() == 10, "expected ten sampling configurations");

  const long long trials = 200;
  for (size_t i = 0; i < configs.size(); ++i) {
    const Config& c = configs[i];
    LLNReport rep = simulate_lln(c.m, c.x, c.n, trials, c.eps, kDefaultLlnSeed + i, true);
    auto sigma = [&](double q) { return std::sqrt(q * (1.0 - q) / static_cast<double>(trials)); };
    double lo_err = std::abs(rep.empirical_lower - *rep.exact_lower);
    double hi_err = std::abs(rep.empirical_upper - *rep.exact_upper);
    require(lo_err <= 4 * sigma(*rep.exact_lower) + 0.02,
            "config " + std::to_string(i) + ": lower-band rate off by " + std::to_string(lo_err));
    require(hi_err <= 4 * sigma(*rep.exact_upper) + 0.02,
            "config " + std::to_string(i) + ": upper-band rate off by " + std::to_string(hi_err));
  }

  std::mt19937_64 rng(239);
  for (int round = 0; round < 20; ++round) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 3));
    MassFunction<Rational> m = random_mass(rng, fr);
    std::vector<Rational> vals;
    for (int i = 0; i < fr->size(); ++i)
      vals.push_back(make_rational(static_cast<long>(rng() % 9) - 4,
                                   1 + static_cast<long>(rng() % 3)));
    auto x = RandomVariable<Rational>::make(fr, vals);
    ProductFrame pf = ProductFrame::make(fr, fr);
    MassFunction<Rational> joint = independent_product(pf, m, m);
    Rational alpha =
        lower_expectation(m, x) + make_rational(static_cast<long>(rng() % 3) - 1, 5);
    std::uint32_t event = 0;
    for (int i = 0; i < fr->size(); ++i)
      for (int j = 0; j < fr->size(); ++j)
        if (x.value(i) + x.value(j) >= 2 * alpha) event |= 1u << pf.pair_index(i, j);
    require(exact_lln_belief<Rational>(m, x, 2, alpha) ==
                belief(joint, SubsetMask(event, pf.product()->size())),
            "two-draw convolution disagrees with the product-space oracle");
  }

  double elapsed = seconds_since(start);
  require(elapsed < 30.0, "took " + std::to_string(elapsed) + " s, budget is 30 s");
}

void betting_soundness() {
  std::mt19937_64 rng(241);
  for (int round = 0; round < 120; ++round) {
    FramePtr fr = letters(2 + static_cast<int>(rng() % 2));
    SetFunction<Rational> beliefs = belief_table(random_mass(rng, fr));
    require(find_violation(beliefs, 2, BetMode::b2star) == std::nullopt,
            "a belief table lost a subset-mode book");
    auto prob = MassFunction<Rational>::from_probability(bft::random_distribution(rng, fr));
    require(find_violation(belief_table(prob), 2, BetMode::p2) == std::nullopt,
            "a probability measure lost a pointwise book");
  }

  SetFunction<Rational> ignorant = belief_table(MassFunction<Rational>::vacuous(letters(2)));
  auto p2_hit = find_violation(ignorant, 2, BetMode::p2);
  require(p2_hit.has_value() &&
              check_p2(ignorant, *p2_hit).verdict == BetVerdict::violation &&
              p2_hit->buys.size() == 2 && p2_hit->sells.size() == 1 &&
              p2_hit->sells[0] == SubsetMask::full_set(2),
          "ignorant prices escaped the pointwise book search");

  SetFunction<Rational> hinge = SetFunction<Rational>::zeros(letters(3));
  hinge.set(0b111, Rational(1));
  hinge.set(0b011, Rational(1));
  hinge.set(0b110, Rational(1));
  hinge.set(0b010, Rational(1, 2));
  auto b2_hit = find_violation(hinge, 2, BetMode::b2star);
  require(b2_hit.has_value() && check_b2star(hinge, *b2_hit).verdict == BetVerdict::violation,
          "the overpaid-intersection prices escaped the subset-mode book search");
}

void total_belief_law() {
  std::mt19937_64 rng(251);
  for (int round = 0; round < 100; ++round) {
    const int n = 2 + static_cast<int>(rng() % 3);
    FramePtr fr = letters(n);

    // random partition, then a mass built inside its parts so the premise holds
    std::vector<std::uint32_t> parts;
    {
      std::vector<std::uint32_t> blocks(2);
      for (int i = 0; i < n; ++i) blocks[static_cast<size_t>(rng() % 2)] |= 1u << i;
      if (!blocks[0] || !blocks[1]) {
        blocks[0] = 1u;
        blocks[1] = static_cast<std::uint32_t>((1u << n) - 2);
      }
      parts = blocks;
    }

    std::vector<std::pair<SubsetMask, Rational>> entries;
    const long den = 2 * static_cast<long>(parts.size());
    for (std::uint32_t block : parts) {
      for (int rep = 0; rep < 2; ++rep) {
        std::uint32_t sub = block;
        // random nonempty subset of the block
        std::uint32_t keep = static_cast<std::uint32_t>(rng());
        if ((sub & keep) != 0) sub &= keep;
        entries.emplace_back(SubsetMask(sub, n), Rational(1, den));
      }
    }
    MassFunction<Rational> m = MassFunction<Rational>::make(fr, entries);

    std::vector<SubsetMask> masks;
    for (std::uint32_t block : parts) masks.emplace_back(block, n);
    auto report = total_belief_check(m, masks);
    require(report.premise_holds, "constructed partition lost the premise");
    require(report.identity_holds, "decomposition identity failed under the premise");
    require(report.part_belief_sum == 1, "part beliefs stopped summing to 1");
  }

  ProductFrame pf = paradox_frame();
  MassFunction<Rational> m = paradox_mass();
  std::vector<SubsetMask> rows = {pf.cylinder_right(SubsetMask::singleton(0, 2)),
                                  pf.cylinder_right(SubsetMask::singleton(1, 2))};
  auto rep = total_belief_check(m, rows);
  require(!rep.premise_holds && !rep.identity_holds, "the row split stopped failing");
  require(rep.violating_set.has_value() &&
              *rep.violating_set == pf.cylinder_left(SubsetMask::singleton(0, 2)).bits(),
          "the decomposition counterexample moved away from the x=0 column");
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "golden scenario values, exact, under 1 s", golden_scenarios},
      {2, "conditioning engine matches the closed forms at five trace rates", symbolic_sampling},
      {3, "1000 belief-table round trips on frames up to 6, under 5 s", transform_round_trip},
      {4, "closed-form conditioning equals condition-then-evaluate on 200 models",
       conditioning_oracle},
      {5, "credal envelopes: lower probability, compatible and vertex-wise conditionals",
       credal_identities},
      {6, "independence statements coincide on 500 product masses, counterexamples split",
       independence_equivalence},
      {7, "combination equals diagonal conditioning on 100 factor pairs plus the coin",
       dempster_diagonal},
      {8, "sampled mean bands match the exact convolution, under 30 s", lln_statistics},
      {9, "bounded books never beat belief or probability prices, known books found",
       betting_soundness},
      {10, "total-belief decomposition holds under the premise, fails off it", total_belief_law},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    try {
      c.body();
      std::printf("[PASS] %2d %s\n", c.number, c.title);
    } catch (const Failure& f) {
      ++failures;
      std::printf("[FAIL] %2d %s: %s\n", c.number, c.title, f.detail.c_str());
    } catch (const Error& e) {
      ++failures;
      std::printf("[FAIL] %2d %s: unexpected error: %s\n", c.number, c.title, e.what());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] %2d %s: unexpected exception: %s\n", c.number, c.title, e.what());
    }
  }
  if (failures) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
