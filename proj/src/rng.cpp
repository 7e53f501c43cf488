#include "qres/rng.hpp"

#include <cmath>

namespace qres {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index) noexcept
    : seed_(seed),
      stream_index_(stream_index),
      key_(mix64(mix64(seed + kGolden) ^ mix64(stream_index * kGolden + 0x632BE59BD9B4E019ULL))) {}

std::uint64_t RngStream::next_u64() noexcept {
  ++counter_;
  // Two rounds so that adjacent keys do not produce correlated sequences.
  return mix64(mix64(key_ + counter_ * kGolden) ^ key_);
}

double RngStream::next_uniform() noexcept {
  // (k + 0.5) / 2^53 for k in [0, 2^53) never hits 0 or 1.
  const std::uint64_t k = next_u64() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() noexcept {
  for (;;) {
    const double u = 2.0 * next_uniform() - 1.0;
    const double v = 2.0 * next_uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double RngStream::next_sign() noexcept {
  return (next_u64() >> 63) != 0 ? 1.0 : -1.0;
}

}  // namespace qres
