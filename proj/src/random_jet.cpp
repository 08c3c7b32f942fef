#include "germcalc/random_jet.hpp"

#include "germcalc/errors.hpp"

namespace germcalc {

long SeededRng::uniform(long lo, long hi) {
  require(lo <= hi, ErrorKind::BadArgument, "empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

GaussianRational random_gaussian_rational(SeededRng& rng, long bound) {
  require(bound >= 1, ErrorKind::BadArgument, "coefficient bound must be >= 1");
  auto component = [&]() {
    long num = rng.uniform(1, bound);
    if (rng.uniform(0, 1) == 1) num = -num;
    long den = rng.uniform(1, bound);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  };
  mpq_class re = component();
  mpq_class im = component();
  return GaussianRational(re, im);
}

Jet generate_random_jet_at(int dim, int order, std::uint64_t seed, long coeff_bound,
                           Point base) {
  require(coeff_bound >= 1, ErrorKind::BadArgument, "coefficient bound must be >= 1");
  SeededRng rng(seed);
  Jet::CoeffMap c;
  for (const auto& alpha : multi_indices_up_to(dim, order))
    c.emplace(alpha, random_gaussian_rational(rng, coeff_bound));
  return Jet(dim, order, std::move(base), std::move(c));
}

Jet generate_random_jet(int dim, int order, std::uint64_t seed, long coeff_bound) {
  return generate_random_jet_at(dim, order, seed, coeff_bound,
                                Point(static_cast<std::size_t>(dim), GaussianRational(0)));
}

}  // namespace germcalc
