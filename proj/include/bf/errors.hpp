#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace bf {

enum class errc {
  duplicate_label,
  empty_label,
  frame_too_large,
  unknown_label,
  frame_mismatch,
  empty_set_mass,
  negative_mass,
  mass_not_normalized,
  not_a_belief_function,
  nonzero_empty_set,
  conditioning_undefined,
  total_conflict,
  too_many_extreme_points,
  condition_impossible,
  not_a_partition,
  resource_limit,
  parse_error,
  unknown_scenario,
};

inline const char* to_string(errc c) {
  switch (c) {
    case errc::duplicate_label: return "DuplicateLabel";
    case errc::empty_label: return "EmptyLabel";
    case errc::frame_too_large: return "FrameTooLarge";
    case errc::unknown_label: return "UnknownLabel";
    case errc::frame_mismatch: return "FrameMismatch";
    case errc::empty_set_mass: return "EmptySetMass";
    case errc::negative_mass: return "NegativeMass";
    case errc::mass_not_normalized: return "MassNotNormalized";
    case errc::not_a_belief_function: return "NotABeliefFunction";
    case errc::nonzero_empty_set: return "NonzeroEmptySet";
    case errc::conditioning_undefined: return "ConditioningUndefined";
    case errc::total_conflict: return "TotalConflict";
    case errc::too_many_extreme_points: return "TooManyExtremePoints";
    case errc::condition_impossible: return "ConditionImpossible";
    case errc::not_a_partition: return "NotAPartition";
    case errc::resource_limit: return "ResourceLimit";
    case errc::parse_error: return "ParseError";
    case errc::unknown_scenario: return "UnknownScenario";
  }
  return "UnknownError";
}

// Library-wide exception. `subset_bits` optionally carries the offending
// subset (e.g. the negative-mass set of a failed Möbius inversion).
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what,
        std::optional<std::uint32_t> subset_bits = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        subset_bits_(subset_bits) {}

  errc code() const noexcept { return code_; }
  std::optional<std::uint32_t> subset_bits() const noexcept { return subset_bits_; }

 private:
  errc code_;
  std::optional<std::uint32_t> subset_bits_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg,
                              std::optional<std::uint32_t> subset_bits = std::nullopt) {
  throw Error(code, msg, subset_bits);
}

}  // namespace bf
