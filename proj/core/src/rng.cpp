#include "pinnedgeo/rng.hpp"

#include <cmath>
#include <numbers>

namespace pinnedgeo::rng {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b,
                   std::uint64_t c) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ stream);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  return mix64(h ^ c);
}

double uniform(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

double uniform_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b,
                  std::uint64_t c) {
  return uniform(hash(seed, stream, a, b, c));
}

void normals(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b,
             double* out, int count) {
  for (int p = 0; 2 * p < count; ++p) {
    const std::uint64_t h = hash(seed, stream, a, b, static_cast<std::uint64_t>(p));
    const double u1 = uniform(h);
    const double u2 = uniform(mix64(h ^ 0x5851f42d4c957f2dULL));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    out[2 * p] = r * std::cos(th);
    if (2 * p + 1 < count) out[2 * p + 1] = r * std::sin(th);
  }
}

}  // namespace pinnedgeo::rng
