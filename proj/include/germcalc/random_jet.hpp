#pragma once

#include <cstdint>
#include <random>

#include "germcalc/jet.hpp"

namespace germcalc {

/// Deterministic random source. mt19937_64 has a pinned standard algorithm
/// and the value mapping below avoids the implementation-defined standard
/// distributions, so streams are identical across platforms.
class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  /// Uniform-ish integer in [lo, hi] via modulo; the slight bias is
  /// irrelevant here and the result is reproducible everywhere.
  long uniform(long lo, long hi);

private:
  std::mt19937_64 eng_;
};

/// Random element of Q(i): numerators in +-[1, bound], denominators in
/// [1, bound], each component independently.
GaussianRational random_gaussian_rational(SeededRng& rng, long bound);

/// Seeded random jet with every coefficient slot |alpha| <= order filled by a
/// nonzero random Gaussian rational. A heuristic stand-in for functions in
/// general position; nothing here certifies any transcendence property.
Jet generate_random_jet(int dim, int order, std::uint64_t seed, long coeff_bound);

/// Same, based at the given point.
Jet generate_random_jet_at(int dim, int order, std::uint64_t seed, long coeff_bound,
                           Point base);

}  // namespace germcalc
