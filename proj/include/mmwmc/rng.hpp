#pragma once

#include <cstdint>
#include <random>

namespace mmwmc {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Used to decorrelate seeds derived from small integers.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the random stream for trial `index` under `base_seed`.
///
/// Rule: splitmix64(splitmix64(base_seed) ^ splitmix64(index + 1)). Each trial owns
/// its stream, so results do not depend on how trials are scheduled across threads.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept
{
  return splitmix64(splitmix64(base_seed) ^ splitmix64(index + 1));
}

inline Rng make_trial_rng(std::uint64_t base_seed, std::uint64_t index)
{
  return Rng{derive_seed(base_seed, index)};
}

} // namespace mmwmc
