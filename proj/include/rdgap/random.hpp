// rdgap: random.hpp
// Counter-based random streams.
//
// Every random quantity in the library is drawn from a Philox4x32-10 block
// cipher keyed by (seed, domain). The 128-bit counter is split into a 64-bit
// stream index and a 64-bit block index, so the i-th trial (or codeword, or
// W batch) always sees the same numbers no matter which thread evaluates it
// or in which order.
#pragma once

#include <array>
#include <cstdint>

namespace rdgap {

/// Identity of the generator, recorded in run manifests.
inline constexpr const char* kGeneratorName = "philox4x32-10/box-muller";

/// Domain tags keep independent uses of one user seed apart.
enum class StreamDomain : std::uint64_t {
  kCodebook = 1,
  kTrial = 2,
  kRotation = 3,
  kSpectrumSample = 4,
  kSearch = 5,
  kSuccessCodeword = 6,
};

/// SplitMix64 finalizer; used for key derivation only.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  static Block encrypt(Block ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kW0;
      key[1] += kW1;
    }
    return ctr;
  }
};

/// One independent stream of uniform and Gaussian variates.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, StreamDomain domain, std::uint64_t stream)
      : stream_(stream) {
    const std::uint64_t k =
        mix64(seed ^ mix64(static_cast<std::uint64_t>(domain)));
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  }

  std::uint32_t next_u32() {
    if (lane_ == 4) refill();
    return buffer_[lane_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open0() { return 1.0 - uniform(); }

  /// Standard normal via Box-Muller; the second variate of each pair is
  /// cached.
  double normal();

 private:
  void refill() {
    const Philox4x32::Block ctr = {
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    buffer_ = Philox4x32::encrypt(ctr, key_);
    ++block_;
    lane_ = 0;
  }

  std::array<std::uint32_t, 2> key_{};
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32::Block buffer_{};
  int lane_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rdgap
