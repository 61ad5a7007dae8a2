#pragma once

#include <cstddef>
#include <cstdint>

namespace plr::detail {

inline std::size_t mix(std::size_t seed, std::uint64_t v) noexcept {
  // splitmix64 finalizer folded into a boost-style combine
  v += 0x9e3779b97f4a7c15ull;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
  v ^= v >> 31;
  return seed ^ (static_cast<std::size_t>(v) + 0x9e3779b9u + (seed << 6) + (seed >> 2));
}

}  // namespace plr::detail
