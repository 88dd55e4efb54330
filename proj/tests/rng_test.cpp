#include "kmmix/rng.hpp"

#include <gtest/gtest.h>

namespace kmmix {
namespace {

// Known-answer vectors from the Random123 distribution.
TEST(Philox, ZeroKeyZeroCounter) {
  const Philox4x32 gen(Philox4x32::Key{0, 0});
  const auto out = gen({0, 0, 0, 0});
  EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5U, 0xe169c58dU, 0xbc57ac4cU, 0x9b00dbd8U}));
}

TEST(Philox, AllOnes) {
  const Philox4x32 gen(Philox4x32::Key{0xffffffffU, 0xffffffffU});
  const auto out = gen({0xffffffffU, 0xffffffffU, 0xffffffffU, 0xffffffffU});
  EXPECT_EQ(out, (Philox4x32::Counter{0x408f276dU, 0x41c83b0eU, 0xa20bc7c6U, 0x6d5451fdU}));
}

TEST(Philox, PiDigits) {
  const Philox4x32 gen(Philox4x32::Key{0xa4093822U, 0x299f31d0U});
  const auto out = gen({0x243f6a88U, 0x85a308d3U, 0x13198a2eU, 0x03707344U});
  EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09U, 0x94fdccebU, 0x5001e420U, 0x24126ea1U}));
}

TEST(Philox, UsableAtCompileTime) {
  constexpr Philox4x32 gen(std::uint64_t{0});
  constexpr auto out = gen({0, 0, 0, 0});
  static_assert(out[0] == 0x6627e8d5U);
}

TEST(Philox, SeedSplitsIntoKeyWords) {
  const Philox4x32 a(std::uint64_t{0x0000000200000001ULL});
  const Philox4x32 b(Philox4x32::Key{1, 2});
  EXPECT_EQ(a({5, 6, 7, 8}), b({5, 6, 7, 8}));
}

TEST(UnitInterval, Range) {
  EXPECT_EQ(to_unit_interval(0, 0), 0.0);
  EXPECT_LT(to_unit_interval(0xffffffffU, 0xffffffffU), 1.0);
  EXPECT_DOUBLE_EQ(to_unit_interval(0x80000000U, 0), 0.5);
}

}  // namespace
}  // namespace kmmix
