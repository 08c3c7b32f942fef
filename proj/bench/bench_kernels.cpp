// Benchmark: production (OpenMP) kernels against the serial reference, on
// growing jet sizes. Results are exact, so equality is asserted as it runs.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "germcalc/kernels.hpp"
#include "germcalc/operators.hpp"
#include "germcalc/random_jet.hpp"

using namespace germcalc;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, seconds(t0));
  }
  return best;
}

void bench_mul(int dim, int order) {
  Jet a = generate_random_jet(dim, order, 42, 6);
  Jet b = generate_random_jet(dim, order, 43, 6);
  Jet out_par = mul(a, b);
  Jet out_ser = reference::mul_jets(a, b);
  if (out_par != out_ser) {
    std::printf("MISMATCH in mul dim=%d order=%d\n", dim, order);
    std::exit(1);
  }
  double t_par = time_best_of(3, [&] { (void)mul(a, b); });
  double t_ser = time_best_of(3, [&] { (void)reference::mul_jets(a, b); });
  std::printf("mul      dim=%d order=%2d  serial %8.3f ms  parallel %8.3f ms  speedup %.2fx\n",
              dim, order, t_ser * 1e3, t_par * 1e3, t_ser / t_par);
}

void bench_compose(int dim, int order) {
  Jet f = generate_random_jet(dim, order, 44, 6);
  std::vector<Jet> g;
  for (int i = 0; i < dim; ++i) {
    Jet gi = generate_random_jet(dim, order, 45 + static_cast<std::uint64_t>(i), 6);
    g.push_back(gi.with_coeff(MultiIndex::zero(dim),
                              f.base()[static_cast<std::size_t>(i)]));
  }
  Jet out_par = compose(f, g);
  Jet out_ser = reference::compose_jets(f, g);
  if (out_par != out_ser) {
    std::printf("MISMATCH in compose dim=%d order=%d\n", dim, order);
    std::exit(1);
  }
  double t_par = time_best_of(3, [&] { (void)compose(f, g); });
  double t_ser = time_best_of(3, [&] { (void)reference::compose_jets(f, g); });
  std::printf("compose  dim=%d order=%2d  serial %8.3f ms  parallel %8.3f ms  speedup %.2fx\n",
              dim, order, t_ser * 1e3, t_par * 1e3, t_ser / t_par);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; both columns run serially\n");
#endif
  for (int order : {8, 16, 32, 48}) bench_mul(2, order);
  for (int order : {8, 12, 16}) bench_mul(3, order);
  for (int order : {8, 16, 24}) bench_compose(2, order);
  for (int order : {6, 10}) bench_compose(3, order);
  return 0;
}
