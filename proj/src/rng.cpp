#include "lmmns/bench.hpp"

namespace lmmns {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t StreamRng::bits(std::uint64_t trial, std::uint64_t user, std::uint64_t resource,
                              Stream stream, std::uint64_t attempt) const {
  // Chain the key components through the mixer so nearby keys decorrelate.
  std::uint64_t h = splitmix64(seed_);
  h = splitmix64(h ^ trial);
  h = splitmix64(h ^ user);
  h = splitmix64(h ^ resource);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return splitmix64(h ^ attempt);
}

double StreamRng::uniform(std::uint64_t trial, std::uint64_t user, std::uint64_t resource,
                          Stream stream, std::uint64_t attempt) const {
  return static_cast<double>(bits(trial, user, resource, stream, attempt) >> 11) * 0x1.0p-53;
}

}  // namespace lmmns
