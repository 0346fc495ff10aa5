#include "subfv/rng.hpp"

namespace subfv {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t replicate) noexcept {
  return splitmix64(splitmix64(seed) + (replicate + 1) * 0x9e3779b97f4a7c15ULL);
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t replicate)
    : engine_(stream_seed(seed, replicate)) {}

void NormalStream::fill(std::span<double> out) {
  for (double& z : out) z = dist_(engine_);
}

}  // namespace subfv
