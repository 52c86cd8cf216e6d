#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bf/errors.hpp"
#include "bf/frame.hpp"
#include "bf/numeric.hpp"
#include "bf/transform.hpp"

namespace bf {

template <typename S>
class MassFunction;

// Per-outcome weights, nonnegative and summing to 1.
template <typename S>
class ProbabilityDistribution {
 public:
  static ProbabilityDistribution make(FramePtr frame, std::vector<S> weights) {
    using T = scalar_traits<S>;
    if (static_cast<int>(weights.size()) != frame->size())
      fail(errc::frame_mismatch, "distribution needs one weight per outcome");
    S total = T::zero();
    for (const S& w : weights) {
      if (T::mass_negative(w)) fail(errc::negative_mass, "outcome weight below zero");
      total += w;
    }
    if (!T::sum_is_one(total)) fail(errc::mass_not_normalized, "outcome weights do not sum to 1");
    return ProbabilityDistribution(std::move(frame), std::move(weights));
  }

  static ProbabilityDistribution uniform(FramePtr frame) {
    std::vector<S> w(static_cast<size_t>(frame->size()));
    if constexpr (scalar_traits<S>::exact) {
      S share = S(1) / S(frame->size());
      for (auto& x : w) x = share;
    } else {
      for (auto& x : w) x = 1.0 / frame->size();
    }
    return ProbabilityDistribution(std::move(frame), std::move(w));
  }

  const Frame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  const S& weight(int i) const { return weights_[static_cast<size_t>(i)]; }

  S probability(SubsetMask a) const {
    require_on_frame(*frame_, a, "probability");
    S total = scalar_traits<S>::zero();
    for (int i = 0; i < frame_->size(); ++i)
      if (a.contains(i)) total += weights_[static_cast<size_t>(i)];
    return total;
  }

 private:
  ProbabilityDistribution(FramePtr frame, std::vector<S> weights)
      : frame_(std::move(frame)), weights_(std::move(weights)) {}
  FramePtr frame_;
  std::vector<S> weights_;
};

// Dense table of one scalar per subset, indexed by mask bits. Used for belief
// tables and candidate price functions.
template <typename S>
class SetFunction {
 public:
  SetFunction(FramePtr frame, std::vector<S> values)
      : frame_(std::move(frame)), values_(std::move(values)) {
    if (values_.size() != frame_->subset_count())
      fail(errc::frame_mismatch, "table needs one value per subset");
  }

  static SetFunction zeros(FramePtr frame) {
    std::vector<S> v(frame->subset_count(), scalar_traits<S>::zero());
    return SetFunction(std::move(frame), std::move(v));
  }

  const Frame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  const std::vector<S>& values() const { return values_; }

  const S& value(std::uint32_t bits) const { return values_[bits]; }
  void set(std::uint32_t bits, S v) { values_[bits] = std::move(v); }

  const S& at(SubsetMask a) const {
    require_on_frame(*frame_, a, "SetFunction::at");
    return values_[a.bits()];
  }

 private:
  FramePtr frame_;
  std::vector<S> values_;
};

// Basic belief assignment: strictly positive masses on nonempty subsets,
// summing to 1. Entries are kept sorted by mask bits.
template <typename S>
class MassFunction {
 public:
  using Entry = std::pair<std::uint32_t, S>;
  using Traits = scalar_traits<S>;

  static MassFunction make(FramePtr frame, const std::vector<std::pair<SubsetMask, S>>& entries) {
    std::vector<Entry> raw;
    raw.reserve(entries.size());
    for (const auto& [mask, v] : entries) {
      require_on_frame(*frame, mask, "MassFunction");
      raw.emplace_back(mask.bits(), v);
    }
    return from_bits(std::move(frame), std::move(raw));
  }

  static MassFunction from_bits(FramePtr frame, std::vector<Entry> raw) {
    std::map<std::uint32_t, S> merged;
    for (auto& [bits, v] : raw) {
      if (bits >= frame->subset_count())
        fail(errc::frame_mismatch, "focal set is not on this frame");
      auto [it, fresh] = merged.emplace(bits, v);
      if (!fresh) it->second += v;
    }
    for (const auto& [bits, v] : merged)
      if (Traits::mass_negative(v))
        fail(errc::negative_mass, "negative mass on " + to_string(*frame, SubsetMask(bits, frame->size())), bits);
    if (auto it = merged.find(0); it != merged.end()) {
      if (!effectively_zero(it->second))
        fail(errc::empty_set_mass, "the empty set cannot carry mass");
      merged.erase(it);
    }
    std::vector<Entry> focal;
    S total = Traits::zero();
    for (auto& [bits, v] : merged) {
      if (effectively_zero(v)) continue;
      total += v;
      focal.emplace_back(bits, std::move(v));
    }
    if (!Traits::sum_is_one(total))
      fail(errc::mass_not_normalized, "masses sum to " + std::to_string(Traits::as_double(total)) + ", not 1");
    return MassFunction(std::move(frame), std::move(focal));
  }

  static MassFunction vacuous(FramePtr frame) {
    std::vector<Entry> focal{{(1u << frame->size()) - 1u, Traits::one()}};
    return MassFunction(std::move(frame), std::move(focal));
  }

  static MassFunction from_probability(const ProbabilityDistribution<S>& p) {
    std::vector<Entry> focal;
    for (int i = 0; i < p.frame().size(); ++i)
      if (!effectively_zero(p.weight(i))) focal.emplace_back(1u << i, p.weight(i));
    return from_bits(p.frame_ptr(), std::move(focal));
  }

  const Frame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  const std::vector<Entry>& entries() const { return focal_; }
  int focal_count() const { return static_cast<int>(focal_.size()); }

  S mass(SubsetMask a) const {
    require_on_frame(*frame_, a, "mass");
    auto it = std::lower_bound(focal_.begin(), focal_.end(), a.bits(),
                               [](const Entry& e, std::uint32_t b) { return e.first < b; });
    if (it != focal_.end() && it->first == a.bits()) return it->second;
    return Traits::zero();
  }

  bool bayesian() const {
    for (const auto& [bits, v] : focal_)
      if (std::popcount(bits) != 1) return false;
    return true;
  }

 private:
  MassFunction(FramePtr frame, std::vector<Entry> focal)
      : frame_(std::move(frame)), focal_(std::move(focal)) {}

  static bool effectively_zero(const S& v) {
    if constexpr (Traits::exact) return Traits::is_zero(v);
    else return v <= Traits::norm_tol && v >= -Traits::norm_tol;
  }

  FramePtr frame_;
  std::vector<Entry> focal_;  // sorted by bits
};

struct MassValidation {
  bool ok = true;
  double defect = 0.0;  // |Σ masses − 1| as double
  int focal_count = 0;
};

template <typename S>
MassValidation validate_mass(const MassFunction<S>& m) {
  using T = scalar_traits<S>;
  S total = T::zero();
  for (const auto& [bits, v] : m.entries()) {
    if (bits == 0) fail(errc::empty_set_mass, "the empty set cannot carry mass");
    if (T::mass_negative(v)) fail(errc::negative_mass, "negative mass", bits);
    total += v;
  }
  if (!T::sum_is_one(total)) fail(errc::mass_not_normalized, "masses do not sum to 1");
  return MassValidation{true, T::defect_from_one(total), m.focal_count()};
}

template <typename S>
S belief(const MassFunction<S>& m, SubsetMask a) {
  require_on_frame(m.frame(), a, "belief");
  S total = scalar_traits<S>::zero();
  for (const auto& [bits, v] : m.entries())
    if ((bits & ~a.bits()) == 0) total += v;
  return total;
}

template <typename S>
S plausibility(const MassFunction<S>& m, SubsetMask a) {
  return scalar_traits<S>::one() - belief(m, a.complement());
}

template <typename S>
SetFunction<S> belief_table(const MassFunction<S>& m) {
  const Frame& f = m.frame();
  if (f.size() > Frame::kMaxSize) fail(errc::frame_too_large, "dense table too large");
  std::vector<S> table(f.subset_count(), scalar_traits<S>::zero());
  for (const auto& [bits, v] : m.entries()) table[bits] = v;
  if constexpr (scalar_traits<S>::exact) {
    zeta_in_place(table, f.size());
  } else {
    if (f.size() >= 16) zeta_in_place_parallel(std::span<double>(table), f.size());
    else zeta_in_place(table, f.size());
  }
  return SetFunction<S>(m.frame_ptr(), std::move(table));
}

// Alternating-sum inverse of belief_table. Rejects tables whose implied mass
// goes negative (beyond tolerance in float mode), naming the offending set.
template <typename S>
MassFunction<S> mobius_inverse(const SetFunction<S>& f) {
  using T = scalar_traits<S>;
  const Frame& fr = f.frame();
  if (!T::exact) {
    if (std::abs(T::as_double(f.value(0))) > scalar_traits<double>::norm_tol)
      fail(errc::nonzero_empty_set, "table value at the empty set must be 0");
  } else if (!T::is_zero(f.value(0))) {
    fail(errc::nonzero_empty_set, "table value at the empty set must be 0");
  }
  std::vector<S> table = f.values();
  if constexpr (T::exact) {
    mobius_in_place(table, fr.size());
  } else {
    if (fr.size() >= 16) mobius_in_place_parallel(std::span<double>(table), fr.size());
    else mobius_in_place(table, fr.size());
  }
  for (std::uint32_t bits = 0; bits < fr.subset_count(); ++bits)
    if (T::mobius_negative(table[bits]))
      fail(errc::not_a_belief_function,
           "implied mass is negative on " + to_string(fr, SubsetMask(bits, fr.size())), bits);
  std::vector<typename MassFunction<S>::Entry> focal;
  for (std::uint32_t bits = 1; bits < fr.subset_count(); ++bits)
    focal.emplace_back(bits, std::move(table[bits]));
  return MassFunction<S>::from_bits(f.frame_ptr(), std::move(focal));
}

template <typename S>
struct BeliefFunctionCheck {
  bool ok = false;
  std::string reason;  // empty when ok
  std::optional<std::uint32_t> negative_set;
  // A,B with f(A∪B)+f(A∩B) < f(A)+f(B), when the frame is small enough to scan.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> additivity_pair;
};

template <typename S>
BeliefFunctionCheck<S> is_belief_function(const SetFunction<S>& f) {
  using T = scalar_traits<S>;
  const Frame& fr = f.frame();
  BeliefFunctionCheck<S> out;

  auto find_pair = [&]() {
    if (fr.size() > 12) return;
    const std::uint32_t n = fr.subset_count();
    for (std::uint32_t a = 0; a < n && !out.additivity_pair; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b) {
        S lhs = f.value(a | b) + f.value(a & b);
        S rhs = f.value(a) + f.value(b);
        bool violated;
        if constexpr (T::exact) violated = lhs < rhs;
        else violated = rhs - lhs > T::norm_tol;
        if (violated) {
          out.additivity_pair = {a, b};
          break;
        }
      }
  };

  bool empty_zero;
  if constexpr (T::exact) empty_zero = T::is_zero(f.value(0));
  else empty_zero = std::abs(f.value(0)) <= T::norm_tol;
  if (!empty_zero) {
    out.reason = "value at the empty set is not 0";
    find_pair();
    return out;
  }
  if (!T::sum_is_one(f.value(f.frame().subset_count() - 1))) {
    out.reason = "value at the full set is not 1";
    find_pair();
    return out;
  }

  std::vector<S> table = f.values();
  mobius_in_place(table, fr.size());
  for (std::uint32_t bits = 0; bits < fr.subset_count(); ++bits) {
    if (T::mobius_negative(table[bits])) {
      out.negative_set = bits;
      out.reason = "implied mass is negative on " + to_string(fr, SubsetMask(bits, fr.size()));
      find_pair();
      return out;
    }
  }
  out.ok = true;
  return out;
}

// Entrywise comparison over the union of focal sets (exact in rational mode,
// within tolerance in float mode).
template <typename S>
bool masses_equal(const MassFunction<S>& a, const MassFunction<S>& b) {
  using T = scalar_traits<S>;
  if (!a.frame().same_as(b.frame())) return false;
  size_t ia = 0, ib = 0;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  while (ia < ea.size() || ib < eb.size()) {
    if (ia < ea.size() && (ib == eb.size() || ea[ia].first < eb[ib].first)) {
      if (!T::eq(ea[ia].second, T::zero())) return false;
      ++ia;
    } else if (ib < eb.size() && (ia == ea.size() || eb[ib].first < ea[ia].first)) {
      if (!T::eq(eb[ib].second, T::zero())) return false;
      ++ib;
    } else {
      if (!T::eq(ea[ia].second, eb[ib].second)) return false;
      ++ia;
      ++ib;
    }
  }
  return true;
}

}  // namespace bf
