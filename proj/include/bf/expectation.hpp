#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bf/errors.hpp"
#include "bf/frame.hpp"
#include "bf/mass.hpp"
#include "bf/rng.hpp"

namespace bf {

template <typename S>
class RandomVariable {
 public:
  static RandomVariable make(FramePtr frame, std::vector<S> values) {
    if (static_cast<int>(values.size()) != frame->size())
      fail(errc::frame_mismatch, "random variable needs one value per outcome");
    return RandomVariable(std::move(frame), std::move(values));
  }

  static RandomVariable indicator(FramePtr frame, SubsetMask a) {
    require_on_frame(*frame, a, "indicator");
    std::vector<S> v(static_cast<size_t>(frame->size()), scalar_traits<S>::zero());
    for (int i = 0; i < frame->size(); ++i)
      if (a.contains(i)) v[static_cast<size_t>(i)] = scalar_traits<S>::one();
    return RandomVariable(std::move(frame), std::move(v));
  }

  const Frame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  const S& value(int i) const { return values_[static_cast<size_t>(i)]; }
  const std::vector<S>& values() const { return values_; }

  // min over the members of c; the value the evidence c guarantees.
  S min_on(SubsetMask c) const {
    require_on_frame(*frame_, c, "min_on");
    if (c.is_empty()) fail(errc::frame_mismatch, "min over the empty set");
    bool first = true;
    S best = scalar_traits<S>::zero();
    for (int i = 0; i < frame_->size(); ++i) {
      if (!c.contains(i)) continue;
      if (first || values_[static_cast<size_t>(i)] < best) best = values_[static_cast<size_t>(i)];
      first = false;
    }
    return best;
  }

 private:
  RandomVariable(FramePtr frame, std::vector<S> values)
      : frame_(std::move(frame)), values_(std::move(values)) {}
  FramePtr frame_;
  std::vector<S> values_;
};

// Σ m(C)·min_{ω∈C} X(ω): the guaranteed lower bound on long-run averages.
template <typename S>
S lower_expectation(const MassFunction<S>& m, const RandomVariable<S>& x) {
  if (!m.frame().same_as(x.frame()))
    fail(errc::frame_mismatch, "mass and random variable disagree on the frame");
  S total = scalar_traits<S>::zero();
  for (const auto& [bits, v] : m.entries())
    total += v * x.min_on(SubsetMask(bits, m.frame().size()));
  return total;
}

template <typename S>
MassFunction<double> to_float_mass(const MassFunction<S>& m) {
  std::vector<MassFunction<double>::Entry> entries;
  entries.reserve(m.entries().size());
  for (const auto& [bits, v] : m.entries())
    entries.emplace_back(bits, scalar_traits<S>::as_double(v));
  return MassFunction<double>::from_bits(m.frame_ptr(), std::move(entries));
}

template <typename S>
RandomVariable<double> to_float_rv(const RandomVariable<S>& x) {
  std::vector<double> v;
  v.reserve(x.values().size());
  for (const S& s : x.values()) v.push_back(scalar_traits<S>::as_double(s));
  return RandomVariable<double>::make(x.frame_ptr(), std::move(v));
}

namespace detail {

// Distribution of X̂ = min of X over a focal set drawn from m.
template <typename S>
void reduced_support(const MassFunction<S>& m, const RandomVariable<S>& x,
                     std::vector<S>& values, std::vector<S>& probs) {
  std::map<S, S> support;
  for (const auto& [bits, v] : m.entries()) {
    S xhat = x.min_on(SubsetMask(bits, m.frame().size()));
    auto [it, fresh] = support.emplace(std::move(xhat), v);
    if (!fresh) it->second += v;
  }
  for (auto& [val, p] : support) {
    values.push_back(val);
    probs.push_back(p);
  }
}

inline std::int64_t bucket_key(double v) {
  return std::llround(v * 1e12);
}

}  // namespace detail

// Exact value of B_n(mean of the n iid copies ≥ alpha). The n-fold product
// never gets materialized: belief of the coordinatewise mean event equals the
// classical probability that the iid X̂ sum reaches n·alpha, which a
// convolution over n steps computes directly.
template <typename S>
S exact_lln_belief(const MassFunction<S>& m, const RandomVariable<S>& x, long long n,
                   const S& alpha);

template <>
inline Rational exact_lln_belief<Rational>(const MassFunction<Rational>& m,
                                           const RandomVariable<Rational>& x, long long n,
                                           const Rational& alpha) {
  if (n < 1 || n > 10'000) fail(errc::resource_limit, "n must be between 1 and 10000");
  if (!m.frame().same_as(x.frame()))
    fail(errc::frame_mismatch, "mass and random variable disagree on the frame");
  std::vector<Rational> values, probs;
  detail::reduced_support(m, x, values, probs);

  constexpr size_t kStateCap = 4'000'000;
  std::map<Rational, Rational> sums;
  sums.emplace(Rational(0), Rational(1));
  for (long long step = 0; step < n; ++step) {
    std::map<Rational, Rational> next;
    for (const auto& [sum, p] : sums)
      for (size_t i = 0; i < values.size(); ++i) {
        auto [it, fresh] = next.emplace(sum + values[i], p * probs[i]);
        if (!fresh) it->second += p * probs[i];
      }
    if (next.size() > kStateCap) fail(errc::resource_limit, "convolution table too large");
    sums = std::move(next);
  }
  Rational threshold = Rational(static_cast<long>(n)) * alpha;
  Rational total(0);
  for (const auto& [sum, p] : sums)
    if (sum >= threshold) total += p;
  return total;
}

template <>
inline double exact_lln_belief<double>(const MassFunction<double>& m,
                                       const RandomVariable<double>& x, long long n,
                                       const double& alpha) {
  if (n < 1 || n > 10'000) fail(errc::resource_limit, "n must be between 1 and 10000");
  if (!m.frame().same_as(x.frame()))
    fail(errc::frame_mismatch, "mass and random variable disagree on the frame");
  std::vector<double> values, probs;
  detail::reduced_support(m, x, values, probs);

  // Values bucketed to a 1e-12 grid; sums then live on the lattice spanned by
  // the bucket keys, so the convolution runs over a dense vector.
  std::vector<std::int64_t> keys;
  keys.reserve(values.size());
  for (double v : values) {
    // |key·n| must stay well inside int64 range
    if (std::abs(v) > 100.0) fail(errc::resource_limit, "values too large for the 1e-12 grid");
    keys.push_back(detail::bucket_key(v));
  }
  std::int64_t g = 0;
  for (std::int64_t k : keys) g = std::gcd(g, k);
  if (g == 0) g = 1;
  std::int64_t kmin = *std::min_element(keys.begin(), keys.end());
  std::int64_t kmax = *std::max_element(keys.begin(), keys.end());
  const std::int64_t span = (kmax - kmin) / g;

  constexpr std::int64_t kStateCap = 4'000'000;
  if (span * n + 1 > kStateCap) fail(errc::resource_limit, "convolution table too large");

  // state index s represents the sum kmin·step + s·g over `step` samples
  std::vector<double> dist(1, 1.0);
  std::vector<double> next;
  for (long long step = 0; step < n; ++step) {
    next.assign(dist.size() + static_cast<size_t>(span), 0.0);
    for (size_t s = 0; s < dist.size(); ++s) {
      if (dist[s] == 0.0) continue;
      for (size_t i = 0; i < keys.size(); ++i)
        next[s + static_cast<size_t>((keys[i] - kmin) / g)] += dist[s] * probs[i];
    }
    dist.swap(next);
  }

  // sum ≥ n·alpha, with one-bucket-per-sample slack against rounding
  const double target = static_cast<double>(n) * alpha;
  double total = 0.0;
  for (size_t s = 0; s < dist.size(); ++s) {
    std::int64_t key_sum = kmin * n + static_cast<std::int64_t>(s) * g;
    if (static_cast<double>(key_sum) + static_cast<double>(n) >= target * 1e12) total += dist[s];
  }
  return std::min(total, 1.0);
}

struct LLNReport {
  long long n = 0;
  long long trials = 0;
  double epsilon = 0.0;
  double expectation = 0.0;
  double empirical_lower = 0.0;  // fraction of trials with sample mean ≥ E−ε
  double empirical_upper = 0.0;  // fraction with sample mean ≥ E+ε
  std::optional<double> exact_lower;
  std::optional<double> exact_upper;
  std::uint64_t seed = 0;
  const char* generator = "mt19937_64+splitmix64";
};

// Monte Carlo check of the weak law: per trial, draw n focal sets iid from m,
// average X̂ over them, and test the mean against E±ε. Each trial runs on its
// own substream, so results do not depend on thread count.
template <typename S>
LLNReport simulate_lln(const MassFunction<S>& m, const RandomVariable<S>& x, long long n,
                       long long trials, double epsilon, std::uint64_t seed,
                       bool with_exact = false) {
  if (n < 1) fail(errc::resource_limit, "n must be positive");
  if (trials < 1) fail(errc::resource_limit, "trials must be positive");
  if (!(epsilon > 0)) fail(errc::resource_limit, "epsilon must be positive");
  if (!m.frame().same_as(x.frame()))
    fail(errc::frame_mismatch, "mass and random variable disagree on the frame");

  MassFunction<double> mf = to_float_mass(m);
  RandomVariable<double> xf = to_float_rv(x);

  std::vector<double> xhat;
  std::vector<double> cdf;
  double acc = 0.0;
  for (const auto& [bits, v] : mf.entries()) {
    xhat.push_back(xf.min_on(SubsetMask(bits, mf.frame().size())));
    acc += v;
    cdf.push_back(acc);
  }
  cdf.back() = 1.0;

  const double expectation = lower_expectation(mf, xf);
  const double lo_target = static_cast<double>(n) * (expectation - epsilon) - 1e-9;
  const double hi_target = static_cast<double>(n) * (expectation + epsilon) - 1e-9;

  long long lo_count = 0, hi_count = 0;
#pragma omp parallel for reduction(+ : lo_count, hi_count) schedule(static)
  for (long long t = 0; t < trials; ++t) {
    std::mt19937_64 eng(substream_seed(seed, static_cast<std::uint64_t>(t)));
    double sum = 0.0;
    for (long long j = 0; j < n; ++j) {
      double u = uniform01(eng);
      size_t idx =
          static_cast<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      if (idx >= xhat.size()) idx = xhat.size() - 1;
      sum += xhat[idx];
    }
    if (sum >= lo_target) ++lo_count;
    if (sum >= hi_target) ++hi_count;
  }

  LLNReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.epsilon = epsilon;
  rep.expectation = expectation;
  rep.empirical_lower = static_cast<double>(lo_count) / static_cast<double>(trials);
  rep.empirical_upper = static_cast<double>(hi_count) / static_cast<double>(trials);
  rep.seed = seed;
  if (with_exact) {
    double lo_alpha = expectation - epsilon;
    double hi_alpha = expectation + epsilon;
    rep.exact_lower = exact_lln_belief<double>(mf, xf, n, lo_alpha);
    rep.exact_upper = exact_lln_belief<double>(mf, xf, n, hi_alpha);
  }
  return rep;
}

}  // namespace bf
