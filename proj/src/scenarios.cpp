#include "bf/scenarios.hpp"

#include <cstdio>

#include "bf/combination.hpp"
#include "bf/conditioning.hpp"
#include "bf/credal.hpp"
#include "bf/expectation.hpp"

namespace bf {

FramePtr forensic_frame() { return build_frame({"EG", "EGc", "EcG", "EcGc"}); }

SubsetMask forensic_event_e() { return encode_subset(*forensic_frame(), {"EG", "EGc"}); }

SubsetMask forensic_event_g() { return encode_subset(*forensic_frame(), {"EG", "EcG"}); }

MassFunction<Rational> forensic_ignorant_mass(const Rational& p) {
  FramePtr fr = forensic_frame();
  // Eᶜ carries everything the match statistic cannot touch; E only what the
  // statistic forces; the mixed term covers "absent, or present and matching".
  return MassFunction<Rational>::make(
      fr, {{encode_subset(*fr, {"EcG", "EcGc"}), 1 - p},
           {encode_subset(*fr, {"EG", "EGc"}), p * p},
           {encode_subset(*fr, {"EG", "EcG", "EcGc"}), p * (1 - p)}});
}

MassFunction<Rational> forensic_uniform_mass(const Rational& p) {
  FramePtr fr = forensic_frame();
  return MassFunction<Rational>::make(fr, {{encode_subset(*fr, {"EG"}), p / 2},
                                           {encode_subset(*fr, {"EcG"}), (1 - p) / 2},
                                           {encode_subset(*fr, {"EGc"}), p * p / 2},
                                           {encode_subset(*fr, {"EcGc"}), (1 - p * p) / 2}});
}

FramePtr coin_frame() { return build_frame({"h", "t"}); }

MassFunction<Rational> croupier_factor(const Rational& p) {
  FramePtr fr = coin_frame();
  return MassFunction<Rational>::make(fr, {{encode_subset(*fr, {"h"}), (1 - p) / 2},
                                           {encode_subset(*fr, {"t"}), (1 - p) / 2},
                                           {SubsetMask::full_set(fr->size()), p}});
}

ProductFrame croupier_product_frame() { return ProductFrame::make(coin_frame(), coin_frame()); }

MassFunction<Rational> croupier_product_mass(const Rational& p) {
  ProductFrame pf = croupier_product_frame();
  return independent_product(pf, croupier_factor(p), croupier_factor(p));
}

SubsetMask croupier_same_face() {
  ProductFrame pf = croupier_product_frame();
  return encode_subset(*pf.product(), {"(h,h)", "(t,t)"});
}

MassFunction<Rational> coin_report_mass(const Rational& heads) {
  FramePtr fr = coin_frame();
  return MassFunction<Rational>::make(
      fr, {{encode_subset(*fr, {"h"}), heads}, {encode_subset(*fr, {"t"}), 1 - heads}});
}

ProductFrame paradox_frame() {
  return ProductFrame::make(build_frame({"x0", "x1"}), build_frame({"y0", "y1"}));
}

MassFunction<Rational> paradox_mass() {
  ProductFrame pf = paradox_frame();
  SubsetMask ys = SubsetMask::full_set(pf.right()->size());
  Rational half(1, 2);
  return MassFunction<Rational>::make(
      pf.product(), {{pf.rectangle(SubsetMask::singleton(0, 2), ys), half},
                     {pf.rectangle(SubsetMask::singleton(1, 2), ys), half}});
}

MassFunction<Rational> family_mass() {
  FramePtr fr = build_frame({"Father", "Mother", "Son"});
  return MassFunction<Rational>::make(fr, {{encode_subset(*fr, {"Father", "Mother"}), {9, 10}},
                                           {encode_subset(*fr, {"Son"}), {1, 10}}});
}

FramePtr island_frame(int size) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(size > 0 ? size : 0));
  for (int i = 1; i <= size; ++i) labels.push_back("i" + std::to_string(i));
  return build_frame(std::move(labels));
}

namespace {

CheckLine exact_line(std::string label, const Rational& expected, const Rational& actual) {
  CheckLine line;
  line.label = std::move(label);
  line.expected = to_fraction_string(expected);
  line.actual = to_fraction_string(actual);
  line.pass = expected == actual;
  return line;
}

CheckLine bool_line(std::string label, bool actual) {
  CheckLine line;
  line.label = std::move(label);
  line.expected = "true";
  line.actual = actual ? "true" : "false";
  line.pass = actual;
  return line;
}

CheckLine bound_line(std::string label, const char* relation, double bound, double actual) {
  CheckLine line;
  line.label = std::move(label);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s %.4g", relation, bound);
  line.expected = buf;
  std::snprintf(buf, sizeof buf, "%.6g", actual);
  line.actual = buf;
  line.pass = relation[0] == '>' ? actual >= bound : actual <= bound;
  return line;
}

void finish(ScenarioReport& rep) {
  for (const CheckLine& line : rep.lines)
    if (!line.pass) rep.pass = false;
}

ScenarioReport run_island(const ScenarioParams& params) {
  ScenarioReport rep;
  rep.name = "island";
  rep.summary = "total ignorance inside a known population";
  const int size = params.island_size.value_or(12);
  FramePtr fr = island_frame(size);
  MassFunction<Rational> m = MassFunction<Rational>::vacuous(fr);
  Rational worst(0);
  for (int i = 0; i < fr->size(); ++i) {
    Rational b = belief(m, SubsetMask::singleton(i, fr->size()));
    if (b > worst) worst = b;
  }
  rep.lines.push_back(exact_line("belief in each single inhabitant", Rational(0), worst));
  rep.lines.push_back(
      exact_line("belief in the population as a whole", Rational(1),
                 belief(m, SubsetMask::full_set(fr->size()))));
  finish(rep);
  return rep;
}

ScenarioReport run_forensic_ignorant(const ScenarioParams& params) {
  ScenarioReport rep;
  rep.name = "forensic-ignorant";
  rep.summary = "conditioning an ignorance prior on presence at the scene";
  const Rational p = params.p.value_or(Rational(1, 10));
  MassFunction<Rational> m = forensic_ignorant_mass(p);
  SubsetMask e = forensic_event_e(), g = forensic_event_g();
  rep.lines.push_back(exact_line("prior belief in a match", Rational(0), belief(m, g)));
  rep.lines.push_back(
      exact_line("belief in a match given presence", 1 - p, belief(condition_mass(m, e), g)));
  rep.lines.push_back(bool_line("stays below the uniform-prior answer",
                                1 - p < Rational(1) / (1 + p)));
  finish(rep);
  return rep;
}

ScenarioReport run_forensic_uniform(const ScenarioParams& params) {
  ScenarioReport rep;
  rep.name = "forensic-uniform";
  rep.summary = "the same question under a uniform Bayesian prior";
  const Rational p = params.p.value_or(Rational(1, 10));
  MassFunction<Rational> m = forensic_uniform_mass(p);
  SubsetMask e = forensic_event_e(), g = forensic_event_g();
  rep.lines.push_back(exact_line("prior belief in a match", Rational(1, 2), belief(m, g)));
  rep.lines.push_back(exact_line("belief in a match given presence", Rational(1) / (1 + p),
                                 belief(condition_mass(m, e), g)));
  finish(rep);
  return rep;
}

ScenarioReport run_croupier(const ScenarioParams& params) {
  ScenarioReport rep;
  rep.name = "croupier";
  rep.summary = "two tampered flips, conditioned on showing the same face";
  const Rational p = params.p.value_or(Rational(1, 2));
  const Rational q = 1 - p;
  MassFunction<Rational> m = croupier_product_mass(p);
  ProductFrame pf = croupier_product_frame();
  SubsetMask same = croupier_same_face();
  SubsetMask hh = encode_subset(*pf.product(), {"(h,h)"});
  SubsetMask tt = encode_subset(*pf.product(), {"(t,t)"});

  MassFunction<Rational> cond = condition_mass(m, same);
  Rational b_hh = belief(cond, hh);
  Rational b_tt = belief(cond, tt);
  rep.lines.push_back(exact_line("belief in (h,h) given same faces",
                                 (q * q / 4 + p * q) / (1 - q * q / 2), b_hh));
  // The two conditional beliefs fall short of 1 by exactly the conditional
  // mass still sitting on the whole surviving set: normalized p^2.
  rep.lines.push_back(exact_line("belief in (h,h) plus belief in (t,t)",
                                 1 - p * p / (1 - q * q / 2), b_hh + b_tt));
  rep.lines.push_back(exact_line("classical lower bound for (h,h)",
                                 q * q / 2 / (1 + p * p), fh_conditional_lower(m, hh, same)));
  rep.lines.push_back(exact_line(
      "classical upper bound for (h,h)", (1 + p) * (1 + p) / 2 / (1 + p * p),
      1 - fh_conditional_lower(m, hh.complement(), same)));
  finish(rep);
  return rep;
}

ScenarioReport run_dempster_coin(const ScenarioParams&) {
  ScenarioReport rep;
  rep.name = "dempster-coin";
  rep.summary = "two agreeing reports on one biased coin, pooled by intersection";
  MassFunction<Rational> report = coin_report_mass({3, 5});
  MassFunction<Rational> combined = dempster_combine(report, report);
  FramePtr fr = report.frame_ptr();
  Rational heads = belief(combined, encode_subset(*fr, {"h"}));
  Rational tails = belief(combined, encode_subset(*fr, {"t"}));
  rep.lines.push_back(exact_line("pooled belief in heads", {9, 13}, heads));
  rep.lines.push_back(exact_line("pooled belief in tails", {4, 13}, tails));
  rep.lines.push_back(
      bool_line("agreeing reports still lower the tails belief", tails < Rational(2, 5)));
  finish(rep);
  return rep;
}

ScenarioReport run_paradox(const ScenarioParams&) {
  ScenarioReport rep;
  rep.name = "paradox-xy";
  rep.summary = "conditioning creates belief in x=y out of nothing";
  ProductFrame pf = paradox_frame();
  MassFunction<Rational> m = paradox_mass();
  SubsetMask agree = pf.diagonal();
  SubsetMask y0 = pf.cylinder_right(SubsetMask::singleton(0, 2));
  rep.lines.push_back(exact_line("belief that x equals y", Rational(0), belief(m, agree)));
  rep.lines.push_back(
      exact_line("belief that x equals y given y=0", Rational(1, 2),
                 belief(condition_mass(m, y0), agree)));
  std::vector<SubsetMask> y_parts = {y0, pf.cylinder_right(SubsetMask::singleton(1, 2))};
  auto report = total_belief_check(m, y_parts);
  rep.lines.push_back(bool_line("decomposition premise fails over the y-split",
                                !report.premise_holds));
  CheckLine witness;
  witness.label = "witness set breaking the decomposition";
  witness.expected = to_string(*pf.product(), pf.cylinder_left(SubsetMask::singleton(0, 2)));
  witness.actual = report.violating_set
                       ? to_string(*pf.product(), SubsetMask(*report.violating_set, 4))
                       : "none";
  witness.pass = witness.expected == witness.actual;
  rep.lines.push_back(std::move(witness));
  finish(rep);
  return rep;
}

ScenarioReport run_fh_vs_dempster(const ScenarioParams&) {
  ScenarioReport rep;
  rep.name = "fh-vs-dempster";
  rep.summary = "the same conditioning question under two credal readings";
  MassFunction<Rational> m = family_mass();
  FramePtr fr = m.frame_ptr();
  SubsetMask father = encode_subset(*fr, {"Father"});
  SubsetMask h = encode_subset(*fr, {"Father", "Son"});
  rep.lines.push_back(
      exact_line("conditional belief in Father", {9, 10}, conditional_belief(m, h, father)));
  rep.lines.push_back(exact_line("vertex-wise lower probability of Father", Rational(0),
                                 fh_conditional_lower(m, father, h)));
  rep.lines.push_back(exact_line("lower probability over compatible vertices", {9, 10},
                                 compatible_conditional_lower(m, father, h)));
  finish(rep);
  return rep;
}

ScenarioReport run_lln_coin(const ScenarioParams& params) {
  ScenarioReport rep;
  rep.name = "lln-coin";
  rep.summary = "sample means of the tampered coin against the guaranteed mean";
  rep.statistical = true;
  const Rational p = params.p.value_or(Rational(1, 5));
  const long long n = params.n.value_or(2000);
  const long long trials = params.trials.value_or(200);
  const double epsilon = params.epsilon.value_or(0.05);
  const std::uint64_t seed = params.seed.value_or(kDefaultLlnSeed);

  MassFunction<Rational> m = croupier_factor(p);
  RandomVariable<Rational> heads =
      RandomVariable<Rational>::indicator(m.frame_ptr(), encode_subset(m.frame(), {"h"}));

  CheckLine mean_line = exact_line("guaranteed mean of the heads indicator", (1 - p) / 2,
                                   lower_expectation(m, heads));
  rep.lines.push_back(std::move(mean_line));

  LLNReport sim = simulate_lln(m, heads, n, trials, epsilon, seed);
  rep.lines.push_back(bound_line("trials with mean above the guarantee minus eps", ">=", 0.99,
                                 sim.empirical_lower));
  rep.lines.push_back(bound_line("trials with mean above the guarantee plus eps", "<=", 0.01,
                                 sim.empirical_upper));
  finish(rep);
  return rep;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "island",        "forensic-uniform", "forensic-ignorant", "croupier",
      "dempster-coin", "paradox-xy",       "fh-vs-dempster",    "lln-coin"};
  return names;
}

ScenarioReport run_scenario(const std::string& name, const ScenarioParams& params) {
  if (name == "island") return run_island(params);
  if (name == "forensic-uniform") return run_forensic_uniform(params);
  if (name == "forensic-ignorant") return run_forensic_ignorant(params);
  if (name == "croupier") return run_croupier(params);
  if (name == "dempster-coin") return run_dempster_coin(params);
  if (name == "paradox-xy") return run_paradox(params);
  if (name == "fh-vs-dempster") return run_fh_vs_dempster(params);
  if (name == "lln-coin") return run_lln_coin(params);
  fail(errc::unknown_scenario, "no scenario named '" + name + "'");
}

}  // namespace bf
