#include "bf/frame.hpp"

#include <unordered_set>

namespace bf {

Frame::Frame(std::vector<std::string> labels) : names_(std::move(labels)) {
  if (names_.empty() || names_.size() > kMaxSize)
    fail(errc::frame_too_large,
         "frame must have between 1 and " + std::to_string(kMaxSize) + " outcomes, got " +
             std::to_string(names_.size()));
  std::unordered_set<std::string_view> seen;
  for (const auto& name : names_) {
    if (name.empty()) fail(errc::empty_label, "outcome labels must be nonempty");
    if (!seen.insert(name).second) fail(errc::duplicate_label, "duplicate outcome label '" + name + "'");
  }
}

FramePtr Frame::make(std::vector<std::string> labels) {
  return FramePtr(new Frame(std::move(labels)));
}

int Frame::index_of(std::string_view label) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == label) return static_cast<int>(i);
  fail(errc::unknown_label, "label '" + std::string(label) + "' is not in the frame");
}

bool Frame::has_label(std::string_view label) const {
  for (const auto& name : names_)
    if (name == label) return true;
  return false;
}

FramePtr build_frame(std::vector<std::string> labels) { return Frame::make(std::move(labels)); }

SubsetMask encode_subset(const Frame& frame, const std::vector<std::string>& members) {
  std::uint32_t bits = 0;
  for (const auto& label : members) bits |= 1u << frame.index_of(label);
  return SubsetMask(bits, frame.size());
}

std::vector<std::string> decode_subset(const Frame& frame, SubsetMask mask) {
  require_on_frame(frame, mask, "decode_subset");
  std::vector<std::string> out;
  for (int i = 0; i < frame.size(); ++i)
    if (mask.contains(i)) out.push_back(frame.label(i));
  return out;
}

std::string to_string(const Frame& frame, SubsetMask mask) {
  require_on_frame(frame, mask, "to_string");
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < frame.size(); ++i) {
    if (!mask.contains(i)) continue;
    if (!first) out += ",";
    out += frame.label(i);
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace bf
