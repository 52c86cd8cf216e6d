#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bf/mass.hpp"
#include "bf/products.hpp"
#include "bf/rational.hpp"

namespace bf {

// Model zoo shared by the scenario registry and the test suite.

// Outcomes split by presence at the scene (E) and a matching trace (G).
FramePtr forensic_frame();  // EG, EGc, EcG, EcGc
SubsetMask forensic_event_e();
SubsetMask forensic_event_g();
// Ignorance prior: no belief about the suspect beyond the match statistics.
MassFunction<Rational> forensic_ignorant_mass(const Rational& p);
// Uniform Bayesian prior over the same frame.
MassFunction<Rational> forensic_uniform_mass(const Rational& p);

FramePtr coin_frame();  // h, t
// Fair flip that a croupier may override with chance p; the override rule is unknown.
MassFunction<Rational> croupier_factor(const Rational& p);
ProductFrame croupier_product_frame();
MassFunction<Rational> croupier_product_mass(const Rational& p);
SubsetMask croupier_same_face();  // {(h,h),(t,t)}

// Single report on a biased coin: mass `heads` on {h}, the rest on {t}.
MassFunction<Rational> coin_report_mass(const Rational& heads);

// Unknown x, y a copy of x; mass sits on the two x-columns.
ProductFrame paradox_frame();  // (x0|x1) × (y0|y1)
MassFunction<Rational> paradox_mass();

MassFunction<Rational> family_mass();  // {Father,Mother}: 9/10, {Son}: 1/10

FramePtr island_frame(int size);  // i1..iN

inline constexpr std::uint64_t kDefaultLlnSeed = 20260817;

struct ScenarioParams {
  std::optional<Rational> p;
  std::optional<int> island_size;
  std::optional<long long> n;
  std::optional<long long> trials;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
};

struct CheckLine {
  std::string label;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct ScenarioReport {
  std::string name;
  std::string summary;
  bool statistical = false;
  std::vector<CheckLine> lines;
  bool pass = true;
};

const std::vector<std::string>& scenario_names();
ScenarioReport run_scenario(const std::string& name, const ScenarioParams& params = {});

}  // namespace bf
