#pragma once

#include <cstdint>

namespace qres {

/// Counter-based random stream keyed by (seed, stream_index).
///
/// Draw k of a stream is a pure function of (seed, stream_index, k), so any
/// number of streams can be advanced concurrently, in any order, and still
/// reproduce the same values. The mixing function is the SplitMix64
/// finalizer; it uses only integer arithmetic and is identical on every
/// platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }
  std::uint64_t position() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept;

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double next_uniform() noexcept;

  // Standard normal (Marsaglia polar method).
  double next_normal() noexcept;

  // +1 or -1 with equal probability.
  double next_sign() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qres
