#pragma once

#include <cstdint>

namespace pinnedgeo {

// Counter-based generator: every draw is a pure function of its key, so
// samples can be produced in any order or on any worker.
namespace rng {

// Stream tags keep unrelated uses of one seed independent.
enum Stream : std::uint64_t {
  kIncrements = 1,
  kCompetitors = 2,
  kModelParams = 3,
  kVectorField = 4,
  kMisc = 5,
};

std::uint64_t mix64(std::uint64_t z);
std::uint64_t hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t a,
                   std::uint64_t b, std::uint64_t c);

// Uniform in the open interval (0, 1).
double uniform(std::uint64_t bits);

// Fills out[0..count) with i.i.d. standard normals for key (seed, stream, a, b).
void normals(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b,
             double* out, int count);

double uniform_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b,
                  std::uint64_t c);

}  // namespace rng
}  // namespace pinnedgeo
