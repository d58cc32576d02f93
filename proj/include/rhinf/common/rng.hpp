#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace rhinf {

// All randomness in a run flows from one master seed through named
// substreams, so results do not depend on scheduling or call order
// across components (env i, policy init, q sampler, ...).
inline std::uint64_t substream_seed(std::uint64_t master, std::string_view name,
                                    std::uint64_t index = 0) {
  // FNV-1a over (name, index), then splitmix64 finalizer.
  std::uint64_t h = 1469598103934665603ull ^ master;
  for (char c : name) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 1099511628211ull;
  }
  h ^= index;
  h *= 1099511628211ull;
  h += 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
  return h ^ (h >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t master, std::string_view name,
                                std::uint64_t index = 0) {
  return std::mt19937_64(substream_seed(master, name, index));
}

inline std::string save_rng(const std::mt19937_64& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

inline void load_rng(std::mt19937_64& rng, const std::string& s) {
  std::istringstream is(s);
  is >> rng;
}

}  // namespace rhinf
