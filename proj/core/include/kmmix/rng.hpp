#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A block of
// four 32-bit words is a pure function of (key, counter), so any replica's
// stream can be regenerated without touching shared state.

#include <array>
#include <cstdint>

namespace kmmix {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit constexpr Philox4x32(Key key) noexcept : key_(key) {}
  explicit constexpr Philox4x32(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  constexpr Counter operator()(Counter ctr) const noexcept {
    Key key = key_;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t prod0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t prod1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(prod0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(prod0);
      const auto hi1 = static_cast<std::uint32_t>(prod1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(prod1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53U;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57U;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9U;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85U;

  Key key_;
};

// Uniform double in [0, 1) with 53 random bits.
constexpr double to_unit_interval(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

}  // namespace kmmix
