#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bf/betting.hpp"
#include "bf/combination.hpp"
#include "bf/conditioning.hpp"
#include "bf/credal.hpp"
#include "bf/expectation.hpp"
#include "bf/model_io.hpp"
#include "bf/products.hpp"
#include "bf/scenarios.hpp"

namespace {

using bf::Error;
using bf::errc;
using json = nlohmann::ordered_json;

struct Options {
  std::string numeric = "rational";
  bool as_json = false;

  std::string model_path;
  std::string other_path;  // second operand of product / dempster
  std::string set_text;
  std::string on_text;
  std::string query_text;
  std::string axis = "left";
  std::string given_text;
  std::string credal_mode = "fh";
  std::string rv_name;
  long long n = 2000;
  long long trials = 200;
  double epsilon = 0.05;
  std::uint64_t seed = bf::kDefaultLlnSeed;
  bool with_exact = false;
  std::string bet_mode = "b2star";
  bool find = false;
  int max_bets = 2;
  std::vector<std::string> buy_texts;
  std::vector<std::string> sell_texts;
  std::string scenario_name;
  std::string p_text;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) bf::fail(errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Splits on commas outside parentheses, so pair labels like "(h,t)" survive.
std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  for (std::string& label : out) {
    size_t a = label.find_first_not_of(" \t");
    size_t b = label.find_last_not_of(" \t");
    label = a == std::string::npos ? std::string() : label.substr(a, b - a + 1);
  }
  return out;
}

bf::SubsetMask parse_set(const bf::Frame& frame, const std::string& text) {
  return encode_subset(frame, split_labels(text));
}

template <typename S>
std::string fmt(const S& v) {
  return bf::detail::scalar_to_text<S>(v);
}

template <typename S>
void print_mass(const bf::Model<S>& model, const Options& opt) {
  if (opt.as_json) {
    std::cout << bf::save_model(model);
    return;
  }
  const bf::Frame& fr = *model.frame;
  std::cout << "frame:";
  for (int i = 0; i < fr.size(); ++i) std::cout << ' ' << fr.label(i);
  std::cout << '\n';
  for (const auto& [bits, v] : model.mass->entries())
    std::cout << "  " << to_string(fr, bf::SubsetMask(bits, fr.size())) << "  " << fmt(v) << '\n';
}

template <typename S>
bf::Model<S> wrap_mass(bf::MassFunction<S> m, std::optional<bf::ProductFrame> product = {}) {
  bf::Model<S> model;
  model.frame = m.frame_ptr();
  model.product = std::move(product);
  model.mass = std::move(m);
  return model;
}

template <typename S>
int cmd_validate(const Options& opt) {
  bf::Model<S> model = bf::load_model<S>(read_file(opt.model_path));
  if (model.price_table) {
    if (opt.as_json)
      std::cout << json{{"ok", true}, {"kind", "prices"}}.dump(2) << '\n';
    else
      std::cout << "ok: candidate prices on " << model.frame->size() << " outcomes\n";
    return 0;
  }
  auto v = bf::validate_mass(*model.mass);
  if (opt.as_json) {
    std::cout << json{{"ok", v.ok},
                      {"kind", "mass"},
                      {"focal_sets", v.focal_count},
                      {"normalization_defect", fmt(v.defect)}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "ok: " << v.focal_count << " focal sets on " << model.frame->size()
              << " outcomes, defect " << fmt(v.defect) << '\n';
  }
  return v.ok ? 0 : 1;
}

template <typename S>
int cmd_belief(const Options& opt) {
  bf::Model<S> model = bf::load_model<S>(read_file(opt.model_path));
  const bf::MassFunction<S>& m = model.require_mass();
  bf::SubsetMask a = parse_set(*model.frame, opt.set_text);
  S bel = belief(m, a);
  S pl = plausibility(m, a);
  if (opt.as_json) {
    std::cout << json{{"set", to_string(*model.frame, a)},
                      {"belief", fmt(bel)},
                      {"plausibility", fmt(pl)}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "belief" << to_string(*model.frame, a) << " = " << fmt(bel)
              << "   plausibility = " << fmt(pl) << '\n';
  }
  return 0;
}

template <typename S>
int cmd_condition(const Options& opt) {
  bf::Model<S> model = bf::load_model<S>(read_file(opt.model_path));
  const bf::MassFunction<S>& m = model.require_mass();
  bf::SubsetMask h = parse_set(*model.frame, opt.on_text);
  bf::MassFunction<S> cond = condition_mass(m, h);
  if (!opt.query_text.empty()) {
    bf::SubsetMask a = parse_set(*model.frame, opt.query_text);
    S bel = belief(cond, a);
    if (opt.as_json) {
      std::cout << json{{"given", to_string(*model.frame, h)},
                        {"set", to_string(*model.frame, a)},
                        {"belief", fmt(bel)}}
                       .dump(2)
                << '\n';
    } else {
      std::cout << "belief" << to_string(*model.frame, a) << " given "
                << to_string(*model.frame, h) << " = " << fmt(bel) << '\n';
    }
    return 0;
  }
  print_mass(wrap_mass(std::move(cond), model.product), opt);
  return 0;
}

template <typename S>
int cmd_marginal(const Options& opt) {
  bf::Model<S> model = bf::load_model<S>(read_file(opt.model_path));
  const bf::MassFunction<S>& m = model.require_mass();
  if (!model.product) bf::fail(errc::frame_mismatch, "marginal needs a product-frame model");
  bf::Axis axis = opt.axis == "left" ? bf::Axis::left : bf::Axis::right;
  print_mass(wrap_mass(marginal(*model.product, m, axis)), opt);
  return 0;
}

template <typename S>
int cmd_product(const Options& opt) {
  bf::Model<S> left = bf::load_model<S>(read_file(opt.model_path));
  bf::Model<S> right = bf::load_model<S>(read_file(opt.other_path));
  if (left.product || right.product)
    bf::fail(errc::frame_mismatch, "product operands must be plain-frame models");
  bf::ProductFrame pf = bf::ProductFrame::make(left.frame, right.frame);
  bf::MassFunction<S> prod = independent_product(pf, left.require_mass(), right.require_mass());
  print_mass(wrap_mass(std::move(prod), std::move(pf)), opt);
  return 0;
}

template <typename S>
int cmd_dempster(const Options& opt) {
  bf::Model<S> first = bf::load_model<S>(read_file(opt.model_path));
  bf::Model<S> second = bf::load_model<S>(read_file(opt.other_path));
  if (!first.frame->same_as(*second.frame))
    bf::fail(errc::frame_mismatch, "operands live on different frames");
  print_mass(wrap_mass(dempster_combine(first.require_mass(), second.require_mass())), opt);
  return 0;
}

template <typename S>
int cmd_credal(const Options& opt) {
  bf::Model<S> model = bf::load_model<S>(read_file(opt.model_path));
  const bf::MassFunction<S>& m = model.require_mass();
  bf::SubsetMask a = parse_set(*model.frame, opt.set_text);
  S lower;
  json out;
  if (opt.given_text.empty()) {
    lower = lower_probability(m, a);
    out = json{{"set", to_string(*model.frame, a)}, {"lower", fmt(lower)}};
  } else {
    bf::SubsetMask h = parse_set(*model.frame, opt.given_text);
    lower = opt.credal_mode == "fh" ? fh_conditional_lower(m, a, h)
                                    : compatible_conditional_lower(m, a, h);
    out = json{{"set", to_string(*model.frame, a)},
               {"given", to_string(*model.frame, h)},
               {"mode", opt.credal_mode},
               {"lower", fmt(lower)}};
  }
  if (opt.as_json)
    std::cout << out.dump(2) << '\n';
  else
    std::cout << "lower probability = " << fmt(lower) << '\n';
  return 0;
}

template <typename S>
int cmd_expect(const Options& opt) {
  bf::Model<S> model = bf::load_model<S>(read_file(opt.model_path));
  const bf::MassFunction<S>& m = model.require_mass();
  const bf::RandomVariable<S>& x = model.require_rv(opt.rv_name);
  S e = lower_expectation(m, x);
  if (opt.as_json)
    std::cout << json{{"rv", opt.rv_name}, {"lower_expectation", fmt(e)}}.dump(2) << '\n';
  else
    std::cout << "lower expectation of " << opt.rv_name << " = " << fmt(e) << '\n';
  return 0;
}

template <typename S>
int cmd_lln(const Options& opt) {
  bf::Model<S> model = bf::load_model<S>(read_file(opt.model_path));
  const bf::MassFunction<S>& m = model.require_mass();
  const bf::RandomVariable<S>& x = model.require_rv(opt.rv_name);
  bf::LLNReport rep =
      simulate_lln(m, x, opt.n, opt.trials, opt.epsilon, opt.seed, opt.with_exact);
  if (opt.as_json) {
    json out{{"n", rep.n},
             {"trials", rep.trials},
             {"epsilon", rep.epsilon},
             {"expectation", rep.expectation},
             {"empirical_lower", rep.empirical_lower},
             {"empirical_upper", rep.empirical_upper},
             {"seed", rep.seed},
             {"generator", rep.generator}};
    if (rep.exact_lower) out["exact_lower"] = *rep.exact_lower;
    if (rep.exact_upper) out["exact_upper"] = *rep.exact_upper;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "guaranteed mean " << rep.expectation << ", n=" << rep.n
              << ", trials=" << rep.trials << ", eps=" << rep.epsilon << ", seed=" << rep.seed
              << '\n';
    std::cout << "  mean >= guarantee - eps in " << rep.empirical_lower * 100 << "% of trials\n";
    std::cout << "  mean >= guarantee + eps in " << rep.empirical_upper * 100 << "% of trials\n";
    if (rep.exact_lower)
      std::cout << "  exact chances: " << *rep.exact_lower << " and " << *rep.exact_upper << '\n';
  }
  return 0;
}

template <typename S>
int cmd_bets(const Options& opt) {
  bf::Model<S> model = bf::load_model<S>(read_file(opt.model_path));
  bf::SetFunction<S> prices =
      model.price_table ? *model.price_table : belief_table(*model.mass);
  bf::BetMode mode = opt.bet_mode == "p2" ? bf::BetMode::p2 : bf::BetMode::b2star;

  if (!opt.buy_texts.empty() || !opt.sell_texts.empty()) {
    bf::BetFamily fam;
    for (const std::string& t : opt.buy_texts) fam.buys.push_back(parse_set(*model.frame, t));
    for (const std::string& t : opt.sell_texts) fam.sells.push_back(parse_set(*model.frame, t));
    bf::BetCheck<S> check = check_bets(prices, fam, mode);
    if (opt.as_json) {
      json out{{"mode", opt.bet_mode},
               {"verdict", to_string(check.verdict)},
               {"buy_total", fmt(check.buy_total)},
               {"sell_total", fmt(check.sell_total)}};
      if (check.premise_witness)
        out["premise_witness"] =
            to_string(*model.frame, bf::SubsetMask(*check.premise_witness, model.frame->size()));
      std::cout << out.dump(2) << '\n';
    } else {
      std::cout << to_string(check.verdict) << ": buys " << fmt(check.buy_total) << ", sells "
                << fmt(check.sell_total) << '\n';
    }
    return check.verdict == bf::BetVerdict::violation ? 1 : 0;
  }

  auto found = find_violation(prices, opt.max_bets, mode);
  if (opt.as_json) {
    json out{{"mode", opt.bet_mode}, {"max_bets", opt.max_bets}, {"violation", found.has_value()}};
    if (found) {
      json buys = json::array(), sells = json::array();
      for (bf::SubsetMask a : found->buys) buys.push_back(to_string(*model.frame, a));
      for (bf::SubsetMask b : found->sells) sells.push_back(to_string(*model.frame, b));
      out["family"] = json{{"buys", buys}, {"sells", sells}};
    }
    std::cout << out.dump(2) << '\n';
  } else if (found) {
    std::cout << "Violation within " << opt.max_bets << " bets per side:\n  buys:";
    for (bf::SubsetMask a : found->buys) std::cout << ' ' << to_string(*model.frame, a);
    std::cout << "\n  sells:";
    for (bf::SubsetMask b : found->sells) std::cout << ' ' << to_string(*model.frame, b);
    std::cout << '\n';
  } else {
    std::cout << "ConstraintHolds: no violation within " << opt.max_bets << " bets per side\n";
  }
  return found ? 1 : 0;
}

int cmd_scenario(const Options& opt) {
  std::vector<std::string> names;
  if (opt.scenario_name == "all")
    names = bf::scenario_names();
  else
    names.push_back(opt.scenario_name);

  bf::ScenarioParams params;
  if (!opt.p_text.empty()) params.p = bf::rational_from_string(opt.p_text);

  bool all_pass = true;
  json out = json::array();
  for (const std::string& name : names) {
    bf::ScenarioReport rep = bf::run_scenario(name, params);
    all_pass = all_pass && rep.pass;
    if (opt.as_json) {
      json lines = json::array();
      for (const bf::CheckLine& line : rep.lines)
        lines.push_back(json{{"label", line.label},
                             {"expected", line.expected},
                             {"actual", line.actual},
                             {"pass", line.pass}});
      out.push_back(json{{"name", rep.name},
                         {"summary", rep.summary},
                         {"statistical", rep.statistical},
                         {"pass", rep.pass},
                         {"lines", lines}});
    } else {
      std::cout << (rep.pass ? "[ ok ] " : "[FAIL] ") << rep.name << ": " << rep.summary << '\n';
      for (const bf::CheckLine& line : rep.lines)
        std::cout << "    " << (line.pass ? "ok   " : "FAIL ") << line.label << ": expected "
                  << line.expected << ", got " << line.actual << '\n';
    }
  }
  if (opt.as_json) std::cout << out.dump(2) << '\n';
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calculus for belief functions on finite outcome spaces"};
  app.require_subcommand(1);
  Options opt;

  app.add_option("--numeric", opt.numeric, "arithmetic backend")
      ->check(CLI::IsMember({"rational", "float"}))
      ->capture_default_str();
  app.add_flag("--json", opt.as_json, "machine-readable output");

  auto* validate = app.add_subcommand("validate", "check a model file");
  validate->add_option("model", opt.model_path)->required();

  auto* belief = app.add_subcommand("belief", "belief and plausibility of a set");
  belief->add_option("model", opt.model_path)->required();
  belief->add_option("--set", opt.set_text, "comma-separated outcome labels")->required();

  auto* condition = app.add_subcommand("condition", "condition a mass on a set");
  condition->add_option("model", opt.model_path)->required();
  condition->add_option("--on", opt.on_text, "conditioning set")->required();
  condition->add_option("--query", opt.query_text, "report belief of this set instead of the mass");

  auto* marg = app.add_subcommand("marginal", "project a product-frame mass to one coordinate");
  marg->add_option("model", opt.model_path)->required();
  marg->add_option("--axis", opt.axis)->check(CLI::IsMember({"left", "right"}))->required();

  auto* product = app.add_subcommand("product", "independent product of two masses");
  product->add_option("left", opt.model_path)->required();
  product->add_option("right", opt.other_path)->required();

  auto* dempster = app.add_subcommand("dempster", "combine two masses by intersection");
  dempster->add_option("first", opt.model_path)->required();
  dempster->add_option("second", opt.other_path)->required();

  auto* credal = app.add_subcommand("credal", "lower probability over the compatible measures");
  credal->add_option("model", opt.model_path)->required();
  credal->add_option("--lower", opt.set_text, "target set")->required();
  credal->add_option("--given", opt.given_text, "conditioning set");
  credal->add_option("--mode", opt.credal_mode)->check(CLI::IsMember({"fh", "compatible"}));

  auto* expect = app.add_subcommand("expect", "lower expectation of a random variable");
  expect->add_option("model", opt.model_path)->required();
  expect->add_option("--rv", opt.rv_name)->required();

  auto* lln = app.add_subcommand("lln", "Monte Carlo check of the sample-mean guarantee");
  lln->add_option("model", opt.model_path)->required();
  lln->add_option("--rv", opt.rv_name)->required();
  lln->add_option("-n", opt.n, "samples per trial")->capture_default_str();
  lln->add_option("--trials", opt.trials)->capture_default_str();
  lln->add_option("--eps", opt.epsilon)->capture_default_str();
  lln->add_option("--seed", opt.seed)->capture_default_str();
  lln->add_flag("--exact", opt.with_exact, "also compute the exact chances by convolution");

  auto* bets = app.add_subcommand("bets", "coherence of candidate prices");
  bets->add_option("model", opt.model_path, "mass model (prices = its belief table) or prices file")
      ->required();
  bets->add_option("--mode", opt.bet_mode)->check(CLI::IsMember({"p2", "b2star"}));
  bets->add_flag("--find", opt.find, "search for a violating family");
  bets->add_option("--max-bets", opt.max_bets, "bets per side in the search")
      ->capture_default_str();
  bets->add_option("--buy", opt.buy_texts, "check this family: a bought set (repeatable)");
  bets->add_option("--sell", opt.sell_texts, "check this family: a sold set (repeatable)");

  auto* scenario = app.add_subcommand("scenario", "run named worked examples");
  scenario->add_option("name", opt.scenario_name, "scenario name or 'all'")->required();
  scenario->add_option("--p", opt.p_text, "override the scenario parameter p");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const bool rational = opt.numeric == "rational";
  try {
    if (validate->parsed()) return rational ? cmd_validate<bf::Rational>(opt) : cmd_validate<double>(opt);
    if (belief->parsed()) return rational ? cmd_belief<bf::Rational>(opt) : cmd_belief<double>(opt);
    if (condition->parsed())
      return rational ? cmd_condition<bf::Rational>(opt) : cmd_condition<double>(opt);
    if (marg->parsed()) return rational ? cmd_marginal<bf::Rational>(opt) : cmd_marginal<double>(opt);
    if (product->parsed())
      return rational ? cmd_product<bf::Rational>(opt) : cmd_product<double>(opt);
    if (dempster->parsed())
      return rational ? cmd_dempster<bf::Rational>(opt) : cmd_dempster<double>(opt);
    if (credal->parsed()) return rational ? cmd_credal<bf::Rational>(opt) : cmd_credal<double>(opt);
    if (expect->parsed()) return rational ? cmd_expect<bf::Rational>(opt) : cmd_expect<double>(opt);
    if (lln->parsed()) return rational ? cmd_lln<bf::Rational>(opt) : cmd_lln<double>(opt);
    if (bets->parsed()) return rational ? cmd_bets<bf::Rational>(opt) : cmd_bets<double>(opt);
    if (scenario->parsed()) return cmd_scenario(opt);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return 1;
  }
  return 2;
}
