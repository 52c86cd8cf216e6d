#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bf/errors.hpp"
#include "bf/frame.hpp"
#include "bf/mass.hpp"

namespace bf {

// Mass conditioned on H: focal sets meeting H are cut down to their part
// inside H and renormalized. Undefined when no focal set meets H (all
// evidence contradicts H), detected exactly in rational mode and by a 1e-12
// denominator floor in float mode.
template <typename S>
MassFunction<S> condition_mass(const MassFunction<S>& m, SubsetMask h) {
  using T = scalar_traits<S>;
  require_on_frame(m.frame(), h, "condition_mass");
  std::vector<typename MassFunction<S>::Entry> cut;
  S denom = T::zero();
  for (const auto& [bits, v] : m.entries()) {
    std::uint32_t inside = bits & h.bits();
    if (inside == 0) continue;
    denom += v;
    cut.emplace_back(inside, v);
  }
  if (T::denominator_vanishes(denom))
    fail(errc::conditioning_undefined, "no evidence is compatible with the conditioning set");
  for (auto& [bits, v] : cut) v = v / denom;
  return MassFunction<S>::from_bits(m.frame_ptr(), std::move(cut));
}

// Closed form B_H(A) = (B(A∪Hᶜ) − B(Hᶜ)) / (1 − B(Hᶜ)). Agrees with
// belief(condition_mass(m,H), A) on every defined input, exactly in rational
// mode.
template <typename S>
S conditional_belief(const MassFunction<S>& m, SubsetMask h, SubsetMask a) {
  using T = scalar_traits<S>;
  require_on_frame(m.frame(), h, "conditional_belief");
  require_on_frame(m.frame(), a, "conditional_belief");
  SubsetMask hc = h.complement();
  S b_hc = belief(m, hc);
  S denom = T::one() - b_hc;
  if (T::denominator_vanishes(denom))
    fail(errc::conditioning_undefined, "belief of the complement is 1");
  return (belief(m, a | hc) - b_hc) / denom;
}

// The mass seen as a probability distribution over its own focal sets.
// Belief and conditioning can be recovered from this lifted view: belief is
// the probability of {C : C ⊆ A}, and conditioning is classical conditioning
// on {C : C∩H ≠ ∅} followed by lumping C ↦ C∩H.
template <typename S>
class Lift {
 public:
  explicit Lift(const MassFunction<S>& m) : base_(m.frame_ptr()) {
    outcomes_.reserve(m.entries().size());
    weights_.reserve(m.entries().size());
    for (const auto& [bits, v] : m.entries()) {
      outcomes_.push_back(bits);
      weights_.push_back(v);
    }
  }

  const FramePtr& base_frame() const { return base_; }
  const std::vector<std::uint32_t>& outcomes() const { return outcomes_; }
  const std::vector<S>& weights() const { return weights_; }

  // Frame whose outcomes are the focal sets, labeled by their set strings.
  FramePtr derived_frame() const {
    std::vector<std::string> labels;
    labels.reserve(outcomes_.size());
    for (std::uint32_t bits : outcomes_)
      labels.push_back(to_string(*base_, SubsetMask(bits, base_->size())));
    return Frame::make(std::move(labels));
  }

  ProbabilityDistribution<S> distribution() const {
    return ProbabilityDistribution<S>::make(derived_frame(), weights_);
  }

  // P({C : C ⊆ A}); equals belief(m, A).
  S probability_of_implying(SubsetMask a) const {
    require_on_frame(*base_, a, "probability_of_implying");
    S total = scalar_traits<S>::zero();
    for (size_t i = 0; i < outcomes_.size(); ++i)
      if ((outcomes_[i] & ~a.bits()) == 0) total += weights_[i];
    return total;
  }

  S probability_meeting(SubsetMask h) const {
    require_on_frame(*base_, h, "probability_meeting");
    S total = scalar_traits<S>::zero();
    for (size_t i = 0; i < outcomes_.size(); ++i)
      if ((outcomes_[i] & h.bits()) != 0) total += weights_[i];
    return total;
  }

  // Classical conditioning of the lifted distribution on {C : C∩H ≠ ∅},
  // then lumping each survivor to C∩H. Equals condition_mass(m, H).
  MassFunction<S> condition_and_lump(SubsetMask h) const {
    using T = scalar_traits<S>;
    require_on_frame(*base_, h, "condition_and_lump");
    S denom = probability_meeting(h);
    if (T::denominator_vanishes(denom))
      fail(errc::conditioning_undefined, "the conditioning collection has probability 0");
    std::vector<typename MassFunction<S>::Entry> lumped;
    for (size_t i = 0; i < outcomes_.size(); ++i) {
      std::uint32_t inside = outcomes_[i] & h.bits();
      if (inside == 0) continue;
      lumped.emplace_back(inside, weights_[i] / denom);
    }
    return MassFunction<S>::from_bits(base_, std::move(lumped));
  }

  // P({C : ∅ ≠ C∩H ⊆ A}) / P({C : C∩H ≠ ∅}); equals conditional_belief.
  S conditional_belief_via_lift(SubsetMask h, SubsetMask a) const {
    using T = scalar_traits<S>;
    require_on_frame(*base_, h, "conditional_belief_via_lift");
    require_on_frame(*base_, a, "conditional_belief_via_lift");
    S denom = probability_meeting(h);
    if (T::denominator_vanishes(denom))
      fail(errc::conditioning_undefined, "the conditioning collection has probability 0");
    S num = T::zero();
    for (size_t i = 0; i < outcomes_.size(); ++i) {
      std::uint32_t inside = outcomes_[i] & h.bits();
      if (inside != 0 && (inside & ~a.bits()) == 0) num += weights_[i];
    }
    return num / denom;
  }

 private:
  FramePtr base_;
  std::vector<std::uint32_t> outcomes_;
  std::vector<S> weights_;
};

template <typename S>
Lift<S> lift_to_powerset(const MassFunction<S>& m) {
  return Lift<S>(m);
}

// Decomposition law over a partition {B_i}: when every part carries positive
// belief and every focal set sits inside one part, B(A) = Σ B(B_i)·B_{B_i}(A)
// for every A, and the part beliefs sum to 1.
template <typename S>
struct TotalBeliefReport {
  bool parts_positive = false;   // every part has belief > 0
  bool focal_covered = false;    // every focal set lies inside some part
  bool premise_holds = false;    // both of the above
  bool identity_holds = false;   // dense scan of the decomposition over all A
  S part_belief_sum;
  std::optional<std::uint32_t> violating_set;  // first A breaking the identity
};

template <typename S>
TotalBeliefReport<S> total_belief_check(const MassFunction<S>& m,
                                        const std::vector<SubsetMask>& parts) {
  using T = scalar_traits<S>;
  const Frame& fr = m.frame();
  if (parts.empty()) fail(errc::not_a_partition, "no parts given");
  std::uint32_t covered = 0;
  for (SubsetMask p : parts) {
    require_on_frame(fr, p, "total_belief_check");
    if (p.is_empty()) fail(errc::not_a_partition, "parts must be nonempty");
    if (covered & p.bits()) fail(errc::not_a_partition, "parts overlap");
    covered |= p.bits();
  }
  if (covered != (fr.subset_count() - 1)) fail(errc::not_a_partition, "parts do not cover the frame");

  TotalBeliefReport<S> out;
  out.part_belief_sum = T::zero();
  out.parts_positive = true;
  std::vector<S> part_belief;
  part_belief.reserve(parts.size());
  for (SubsetMask p : parts) {
    S b = belief(m, p);
    out.part_belief_sum += b;
    if (!T::is_positive(b)) out.parts_positive = false;
    part_belief.push_back(std::move(b));
  }
  out.focal_covered = true;
  for (const auto& [bits, v] : m.entries()) {
    bool inside = false;
    for (SubsetMask p : parts)
      if ((bits & ~p.bits()) == 0) {
        inside = true;
        break;
      }
    if (!inside) {
      out.focal_covered = false;
      break;
    }
  }
  out.premise_holds = out.parts_positive && out.focal_covered;

  // Dense scan of B(A) = Σ_i B(B_i)·B_{B_i}(A). Parts with belief 0 contribute
  // nothing; their conditionals never enter with positive weight.
  SetFunction<S> table = belief_table(m);
  std::vector<std::optional<SetFunction<S>>> cond_tables(parts.size());
  for (size_t i = 0; i < parts.size(); ++i)
    if (T::is_positive(part_belief[i]))
      cond_tables[i] = belief_table(condition_mass(m, parts[i]));

  out.identity_holds = true;
  for (std::uint32_t a = 0; a < fr.subset_count(); ++a) {
    S rhs = T::zero();
    for (size_t i = 0; i < parts.size(); ++i)
      if (cond_tables[i]) rhs += part_belief[i] * cond_tables[i]->value(a);
    if (!T::eq(table.value(a), rhs)) {
      out.identity_holds = false;
      if (!out.violating_set) out.violating_set = a;
    }
  }
  return out;
}

}  // namespace bf
