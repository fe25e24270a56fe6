#pragma once

#include <cstdint>

namespace selfinv {

// Identifies one reproducible draw sequence. Equal keys yield identical
// sequences; distinct stream ids under the same seed yield sequences with no
// shared state.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

// Counter-based stream. Word k of stream (seed, id) is
//
//   philox2x64-10(key = seed, counter = (k, id)), output word 0,
//
// so selecting a stream id is O(1) and streams carry no hidden state beyond
// the draw counter.
//
// Fixed output transforms (the exact bit recipes matter for replaying
// published numbers at a given seed):
//   uniform01:      (w >> 11) * 2^-53, in [0, 1)
//   normal01:       AS 241 inverse normal cdf (Wichura 1988, PPND16) applied
//                   to the open-interval uniform ((w >> 11) + 0.5) * 2^-53;
//                   one word per variate
//   bernoulli_half: top bit of w
class RandomStream {
 public:
  RandomStream() = default;
  explicit RandomStream(StreamKey key) : key_(key) {}

  StreamKey key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  // Next raw 64-bit word; the counter advances by one.
  std::uint64_t next_word();

  double uniform01();
  double normal01();
  int bernoulli_half();

  // Child stream with an unrelated stream id, derived from the next word of
  // this stream. Each call consumes one word, so successive splits (and any
  // draws in between) give distinct children. Used wherever one logical task
  // hands sub-tasks their own randomness.
  RandomStream split();

 private:
  StreamKey key_{};
  std::uint64_t counter_ = 0;
};

inline RandomStream new_stream(StreamKey key) { return RandomStream(key); }

}  // namespace selfinv
