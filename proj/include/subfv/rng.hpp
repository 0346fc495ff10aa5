#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace subfv {

/// SplitMix64 finaliser. Bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the substream owned by replicate `replicate` of a run seeded
/// with `seed`.
///
/// The derivation is counter based: the replicate index is mixed into the
/// hashed master seed with the golden-ratio increment and hashed again, so
/// stream k depends only on (seed, k) and never on evaluation order.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t replicate) noexcept;

/// Standard normal variates for one replicate.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t replicate);

  double operator()() { return dist_(engine_); }
  void fill(std::span<double> out);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace subfv
