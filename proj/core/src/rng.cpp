#include "selfinv/rng.hpp"

#include "selfinv/special.hpp"

namespace selfinv {
namespace {

constexpr std::uint64_t kPhiloxMul = 0xD2B74407B1CE6E93ull;
constexpr std::uint64_t kPhiloxBump = 0x9E3779B97F4A7C15ull;

// philox2x64-10 (Salmon et al. 2011). Returns output word 0 of the block.
std::uint64_t philox2x64(std::uint64_t c0, std::uint64_t c1, std::uint64_t key) {
  for (int round = 0; round < 10; ++round) {
    const auto product = static_cast<unsigned __int128>(kPhiloxMul) * c0;
    const auto hi = static_cast<std::uint64_t>(product >> 64);
    const auto lo = static_cast<std::uint64_t>(product);
    c0 = hi ^ key ^ c1;
    c1 = lo;
    key += kPhiloxBump;
  }
  return c0;
}

// splitmix64 finalizer; full-avalanche 64-bit mix.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RandomStream::next_word() {
  return philox2x64(counter_++, key_.stream_id, key_.seed);
}

double RandomStream::uniform01() {
  // 53 high bits; never reaches 1.0.
  return static_cast<double>(next_word() >> 11) * 0x1.0p-53;
}

double RandomStream::normal01() {
  // Open-interval uniform keeps the quantile finite at both ends.
  const double p = (static_cast<double>(next_word() >> 11) + 0.5) * 0x1.0p-53;
  return normal_quantile(p);
}

int RandomStream::bernoulli_half() {
  return static_cast<int>(next_word() >> 63);
}

RandomStream RandomStream::split() {
  return RandomStream(StreamKey{key_.seed, mix64(next_word())});
}

}  // namespace selfinv
