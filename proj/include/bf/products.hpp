#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bf/errors.hpp"
#include "bf/frame.hpp"
#include "bf/mass.hpp"
#include "bf/numeric.hpp"

namespace bf {

enum class Axis { left, right };

// Two coordinate frames and their pair frame. Pair (i,j) sits at index
// i·|right| + j and is labeled "(l,r)". Projections treat a subset of the
// pair frame as evidence about each coordinate separately.
class ProductFrame {
 public:
  static ProductFrame make(FramePtr left, FramePtr right) {
    long total = static_cast<long>(left->size()) * right->size();
    if (total > Frame::kMaxSize)
      fail(errc::frame_too_large, "product frame would have " + std::to_string(total) + " outcomes");
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(total));
    for (int i = 0; i < left->size(); ++i)
      for (int j = 0; j < right->size(); ++j)
        labels.push_back("(" + left->label(i) + "," + right->label(j) + ")");
    return ProductFrame(std::move(left), std::move(right), Frame::make(std::move(labels)));
  }

  const FramePtr& left() const { return left_; }
  const FramePtr& right() const { return right_; }
  const FramePtr& product() const { return product_; }

  int pair_index(int i, int j) const { return i * right_->size() + j; }

  SubsetMask rectangle(SubsetMask a, SubsetMask b) const {
    require_on_frame(*left_, a, "rectangle");
    require_on_frame(*right_, b, "rectangle");
    std::uint32_t bits = 0;
    for (int i = 0; i < left_->size(); ++i) {
      if (!a.contains(i)) continue;
      bits |= static_cast<std::uint32_t>(b.bits()) << pair_index(i, 0);
    }
    return SubsetMask(bits, product_->size());
  }

  SubsetMask cylinder_left(SubsetMask a) const {
    return rectangle(a, SubsetMask::full_set(*right_));
  }
  SubsetMask cylinder_right(SubsetMask b) const {
    return rectangle(SubsetMask::full_set(*left_), b);
  }

  SubsetMask project_left(SubsetMask c) const {
    require_on_frame(*product_, c, "project_left");
    std::uint32_t bits = 0;
    for (int i = 0; i < left_->size(); ++i)
      for (int j = 0; j < right_->size(); ++j)
        if (c.contains(pair_index(i, j))) bits |= 1u << i;
    return SubsetMask(bits, left_->size());
  }

  SubsetMask project_right(SubsetMask c) const {
    require_on_frame(*product_, c, "project_right");
    std::uint32_t bits = 0;
    for (int i = 0; i < left_->size(); ++i)
      for (int j = 0; j < right_->size(); ++j)
        if (c.contains(pair_index(i, j))) bits |= 1u << j;
    return SubsetMask(bits, right_->size());
  }

  bool is_rectangle(SubsetMask c) const {
    if (c.is_empty()) return true;
    return rectangle(project_left(c), project_right(c)) == c;
  }

  // {(i,i)}; both coordinates must have the same size.
  SubsetMask diagonal() const {
    if (left_->size() != right_->size())
      fail(errc::frame_mismatch, "diagonal needs coordinates of equal size");
    std::uint32_t bits = 0;
    for (int i = 0; i < left_->size(); ++i) bits |= 1u << pair_index(i, i);
    return SubsetMask(bits, product_->size());
  }

 private:
  ProductFrame(FramePtr left, FramePtr right, FramePtr product)
      : left_(std::move(left)), right_(std::move(right)), product_(std::move(product)) {}

  FramePtr left_;
  FramePtr right_;
  FramePtr product_;
};

// Mass of A under the marginal = total mass of focal sets projecting exactly
// to A.
template <typename S>
MassFunction<S> marginal(const ProductFrame& pf, const MassFunction<S>& m, Axis axis) {
  if (!m.frame().same_as(*pf.product()))
    fail(errc::frame_mismatch, "mass is not on this product frame");
  std::vector<typename MassFunction<S>::Entry> out;
  for (const auto& [bits, v] : m.entries()) {
    SubsetMask c(bits, pf.product()->size());
    SubsetMask p = axis == Axis::left ? pf.project_left(c) : pf.project_right(c);
    out.emplace_back(p.bits(), v);
  }
  FramePtr target = axis == Axis::left ? pf.left() : pf.right();
  return MassFunction<S>::from_bits(std::move(target), std::move(out));
}

// Mass m1(A)·m2(B) on every rectangle A×B of focal factors.
template <typename S>
MassFunction<S> independent_product(const ProductFrame& pf, const MassFunction<S>& m1,
                                    const MassFunction<S>& m2) {
  if (!m1.frame().same_as(*pf.left()) || !m2.frame().same_as(*pf.right()))
    fail(errc::frame_mismatch, "factors do not match the product frame");
  std::vector<typename MassFunction<S>::Entry> out;
  out.reserve(m1.entries().size() * m2.entries().size());
  for (const auto& [abits, av] : m1.entries())
    for (const auto& [bbits, bv] : m2.entries()) {
      SubsetMask rect = pf.rectangle(SubsetMask(abits, pf.left()->size()),
                                     SubsetMask(bbits, pf.right()->size()));
      out.emplace_back(rect.bits(), av * bv);
    }
  return MassFunction<S>::from_bits(pf.product(), std::move(out));
}

struct IndependenceReport {
  bool concentrates_on_rectangles = false;
  bool cond_invariance = false;  // conditioning on one coordinate never moves the other's belief
  bool product_form = false;     // B(X∈A; Y∈B) = B(X∈A)·B(Y∈B) for all A,B
  bool mass_factorizes = false;  // m(A×B) = m1(A)·m2(B) for all nonempty A,B
  bool independent = false;      // mass_factorizes, the defining condition
};

// Dense scans over all coordinate subsets. Conditioning cases with an
// undefined denominator are skipped, matching how the invariance statement is
// scoped.
template <typename S>
IndependenceReport check_independence(const ProductFrame& pf, const MassFunction<S>& m) {
  using T = scalar_traits<S>;
  if (!m.frame().same_as(*pf.product()))
    fail(errc::frame_mismatch, "mass is not on this product frame");
  const std::uint32_t nl = pf.left()->subset_count();
  const std::uint32_t nr = pf.right()->subset_count();

  IndependenceReport rep;

  rep.concentrates_on_rectangles = true;
  for (const auto& [bits, v] : m.entries())
    if (!pf.is_rectangle(SubsetMask(bits, pf.product()->size()))) {
      rep.concentrates_on_rectangles = false;
      break;
    }

  SetFunction<S> table = belief_table(m);
  auto bel = [&](SubsetMask s) -> const S& { return table.value(s.bits()); };

  MassFunction<S> m1 = marginal(pf, m, Axis::left);
  MassFunction<S> m2 = marginal(pf, m, Axis::right);

  rep.product_form = true;
  for (std::uint32_t a = 0; a < nl && rep.product_form; ++a) {
    SubsetMask am(a, pf.left()->size());
    S ba = bel(pf.cylinder_left(am));
    for (std::uint32_t b = 0; b < nr; ++b) {
      SubsetMask bm(b, pf.right()->size());
      S lhs = bel(pf.rectangle(am, bm));
      if (!T::eq(lhs, ba * bel(pf.cylinder_right(bm)))) {
        rep.product_form = false;
        break;
      }
    }
  }

  rep.mass_factorizes = true;
  for (std::uint32_t a = 1; a < nl && rep.mass_factorizes; ++a) {
    SubsetMask am(a, pf.left()->size());
    S ma = m1.mass(am);
    for (std::uint32_t b = 1; b < nr; ++b) {
      SubsetMask bm(b, pf.right()->size());
      if (!T::eq(m.mass(pf.rectangle(am, bm)), ma * m2.mass(bm))) {
        rep.mass_factorizes = false;
        break;
      }
    }
  }

  // B_{Y∈B}(X∈A) = B(X∈A) whenever B(Y∈Bᶜ) ≠ 1, and with the axes swapped.
  auto invariant_under = [&](bool condition_on_right) {
    const std::uint32_t nh = condition_on_right ? nr : nl;
    const std::uint32_t nq = condition_on_right ? nl : nr;
    for (std::uint32_t h = 0; h < nh; ++h) {
      SubsetMask hm = condition_on_right ? SubsetMask(h, pf.right()->size())
                                         : SubsetMask(h, pf.left()->size());
      SubsetMask big_h = condition_on_right ? pf.cylinder_right(hm) : pf.cylinder_left(hm);
      S denom = T::one() - bel(big_h.complement());
      if (T::denominator_vanishes(denom)) continue;
      for (std::uint32_t q = 0; q < nq; ++q) {
        SubsetMask qm = condition_on_right ? SubsetMask(q, pf.left()->size())
                                           : SubsetMask(q, pf.right()->size());
        SubsetMask big_q = condition_on_right ? pf.cylinder_left(qm) : pf.cylinder_right(qm);
        S lhs = (bel(big_q | big_h.complement()) - bel(big_h.complement())) / denom;
        if (!T::eq(lhs, bel(big_q))) return false;
      }
    }
    return true;
  };
  rep.cond_invariance = invariant_under(true) && invariant_under(false);

  rep.independent = rep.mass_factorizes;
  return rep;
}

}  // namespace bf
