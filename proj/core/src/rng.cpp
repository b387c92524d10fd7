#include "sentinel/rng.hpp"

namespace sentinel {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng make_stream(std::uint64_t seed, std::string_view name, std::uint64_t a, std::uint64_t b,
                std::uint64_t c) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ fnv1a(name));
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  return Rng(h);
}

}  // namespace sentinel
