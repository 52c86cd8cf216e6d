#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bf/errors.hpp"

namespace bf {

class Frame;
using FramePtr = std::shared_ptr<const Frame>;

// Finite outcome space. Label order is canonical (insertion order, never
// sorted); bit i of every SubsetMask on this frame refers to names()[i].
// Capped at 24 outcomes so dense 2^n tables stay in memory.
class Frame {
 public:
  static constexpr int kMaxSize = 24;

  static FramePtr make(std::vector<std::string> labels);

  int size() const noexcept { return static_cast<int>(names_.size()); }
  std::uint32_t subset_count() const noexcept { return 1u << names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& label(int i) const { return names_[static_cast<size_t>(i)]; }
  int index_of(std::string_view label) const;  // throws unknown_label
  bool has_label(std::string_view label) const;
  bool same_as(const Frame& other) const { return names_ == other.names_; }

 private:
  explicit Frame(std::vector<std::string> labels);
  std::vector<std::string> names_;
};

// A subset of a frame as an index bitmask. Immutable value type; frame
// identity is tracked by size only, which is what FrameMismatch checks.
class SubsetMask {
 public:
  constexpr SubsetMask() noexcept : bits_(0), frame_size_(0) {}
  SubsetMask(std::uint32_t bits, int frame_size) : bits_(bits), frame_size_(frame_size) {
    if (frame_size > Frame::kMaxSize)
      fail(errc::frame_too_large, "frame size " + std::to_string(frame_size));
    if (frame_size <= 0)
      fail(errc::frame_mismatch, "frame size " + std::to_string(frame_size));
    if (frame_size < 32 && bits >= (1u << frame_size))
      fail(errc::frame_mismatch, "mask bits exceed frame size");
  }

  static SubsetMask empty_set(int frame_size) { return SubsetMask(0, frame_size); }
  static SubsetMask empty_set(const Frame& f) { return empty_set(f.size()); }
  static SubsetMask full_set(int frame_size) {
    return SubsetMask((1u << frame_size) - 1, frame_size);
  }
  static SubsetMask full_set(const Frame& f) { return full_set(f.size()); }
  static SubsetMask singleton(int i, int frame_size) { return SubsetMask(1u << i, frame_size); }

  std::uint32_t bits() const noexcept { return bits_; }
  int frame_size() const noexcept { return frame_size_; }
  std::uint32_t universe_bits() const noexcept { return (1u << frame_size_) - 1; }

  bool contains(int i) const noexcept { return (bits_ >> i) & 1u; }
  int cardinality() const noexcept { return std::popcount(bits_); }
  bool is_empty() const noexcept { return bits_ == 0; }
  bool is_full() const noexcept { return bits_ == universe_bits(); }

  SubsetMask operator|(SubsetMask o) const {
    check(o);
    return SubsetMask(bits_ | o.bits_, frame_size_);
  }
  SubsetMask operator&(SubsetMask o) const {
    check(o);
    return SubsetMask(bits_ & o.bits_, frame_size_);
  }
  SubsetMask operator-(SubsetMask o) const {
    check(o);
    return SubsetMask(bits_ & ~o.bits_, frame_size_);
  }
  SubsetMask complement() const { return SubsetMask(~bits_ & universe_bits(), frame_size_); }

  bool subset_of(SubsetMask o) const {
    check(o);
    return (bits_ & ~o.bits_) == 0;
  }
  bool intersects(SubsetMask o) const {
    check(o);
    return (bits_ & o.bits_) != 0;
  }

  bool operator==(const SubsetMask& o) const noexcept {
    return bits_ == o.bits_ && frame_size_ == o.frame_size_;
  }
  bool operator!=(const SubsetMask& o) const noexcept { return !(*this == o); }

 private:
  void check(SubsetMask o) const {
    if (frame_size_ != o.frame_size_)
      fail(errc::frame_mismatch, "masks belong to frames of different size");
  }

  std::uint32_t bits_;
  int frame_size_;
};

FramePtr build_frame(std::vector<std::string> labels);
SubsetMask encode_subset(const Frame& frame, const std::vector<std::string>& members);
std::vector<std::string> decode_subset(const Frame& frame, SubsetMask mask);
std::string to_string(const Frame& frame, SubsetMask mask);  // "{a,b}"

inline void require_on_frame(const Frame& frame, SubsetMask mask, const char* where) {
  if (mask.frame_size() != frame.size())
    fail(errc::frame_mismatch, std::string(where) + ": mask is not on this frame");
}

}  // namespace bf
