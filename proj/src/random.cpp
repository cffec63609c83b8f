#include "patternbench/random.hpp"

#include "patternbench/errors.hpp"

namespace patternbench {

std::uint64_t stable_hash(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = mix64(parent);
  for (std::uint64_t k : keys) h = mix64(h ^ mix64(k));
  return h;
}

std::uint64_t derive_seed(std::uint64_t parent, std::string_view key) noexcept {
  return derive_seed(parent, {stable_hash(key)});
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw PreconditionError("uniform_int: empty range");
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

double uniform_unit(Rng& rng) {
  // generate_canonical can round up to 1.0 on some standard libraries.
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return u < 1.0 ? u : 0x1.fffffffffffffp-1;
}

}  // namespace patternbench
