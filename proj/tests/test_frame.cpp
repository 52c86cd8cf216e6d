#include <doctest.h>

#include "bf/frame.hpp"
#include "test_support.hpp"

using namespace bf;
using bft::error_code_of;

TEST_CASE("frame construction and label lookup") {
  FramePtr fr = build_frame({"h", "t"});
  CHECK(fr->size() == 2);
  CHECK(fr->subset_count() == 4);
  CHECK(fr->label(0) == "h");
  CHECK(fr->index_of("t") == 1);
  CHECK(fr->has_label("h"));
  CHECK(!fr->has_label("x"));
  CHECK(error_code_of([&] { fr->index_of("x"); }) == errc::unknown_label);
}

TEST_CASE("frame construction rejects bad label lists") {
  CHECK(error_code_of([] { build_frame({}); }) == errc::frame_too_large);
  CHECK(error_code_of([] { build_frame({"a", "a"}); }) == errc::duplicate_label);
  CHECK(error_code_of([] { build_frame({"a", ""}); }) == errc::empty_label);
  std::vector<std::string> too_many;
  for (int i = 0; i < 25; ++i) too_many.push_back("w" + std::to_string(i));
  CHECK(error_code_of([&] { build_frame(too_many); }) == errc::frame_too_large);
  CHECK(build_frame(std::vector<std::string>(too_many.begin(), too_many.begin() + 24))->size() ==
        24);
}

TEST_CASE("subset mask algebra") {
  const int n = 3;
  SubsetMask a(0b011, n), b(0b110, n);
  CHECK((a | b).bits() == 0b111);
  CHECK((a & b).bits() == 0b010);
  CHECK((a - b).bits() == 0b001);
  CHECK(a.complement().bits() == 0b100);
  CHECK(a.cardinality() == 2);
  CHECK(a.contains(0));
  CHECK(!a.contains(2));
  CHECK(a.intersects(b));
  CHECK(!SubsetMask::empty_set(n).intersects(a));
  CHECK(SubsetMask(0b010, n).subset_of(a));
  CHECK(!a.subset_of(b));
  CHECK(SubsetMask::empty_set(n).subset_of(a));
  CHECK(SubsetMask::full_set(n).is_full());
  CHECK(SubsetMask::singleton(2, n).bits() == 0b100);
}

TEST_CASE("subset mask construction stays inside the frame") {
  CHECK(error_code_of([] { SubsetMask(0b1000, 3); }) == errc::frame_mismatch);
  CHECK(error_code_of([] { SubsetMask(1, 0); }) == errc::frame_mismatch);
  SubsetMask a(0b01, 2), b(0b001, 3);
  CHECK(error_code_of([&] { (void)(a | b); }) == errc::frame_mismatch);
  CHECK(error_code_of([&] { (void)a.subset_of(b); }) == errc::frame_mismatch);
}

TEST_CASE("encode and decode subsets by label") {
  FramePtr fr = build_frame({"a", "b", "c"});
  SubsetMask ac = encode_subset(*fr, {"a", "c"});
  CHECK(ac.bits() == 0b101);
  CHECK(decode_subset(*fr, ac) == std::vector<std::string>{"a", "c"});
  CHECK(to_string(*fr, ac) == "{a,c}");
  CHECK(to_string(*fr, SubsetMask::empty_set(3)) == "{}");
  // repeated labels collapse
  CHECK(encode_subset(*fr, {"a", "a"}).bits() == 0b001);
  CHECK(encode_subset(*fr, {}).is_empty());
  CHECK(error_code_of([&] { encode_subset(*fr, {"a", "z"}); }) == errc::unknown_label);
}

TEST_CASE("pair labels survive a product frame round trip") {
  FramePtr fr = build_frame({"(h,h)", "(h,t)", "(t,h)", "(t,t)"});
  SubsetMask diag = encode_subset(*fr, {"(h,h)", "(t,t)"});
  CHECK(to_string(*fr, diag) == "{(h,h),(t,t)}");
}
