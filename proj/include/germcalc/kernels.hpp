#pragma once

#include <vector>

#include "germcalc/jet.hpp"

namespace germcalc {
namespace kernels {

/// Production truncated Cauchy product. Dense inner loop over the output
/// coefficient simplex, parallelized with OpenMP above a size threshold.
/// Exact in Q(i), so the result is bit-identical to the serial path.
Jet mul_jets(const Jet& f, const Jet& g);

/// Work estimate used by the parallel dispatch and the benchmark.
std::size_t mul_work(const Jet& f, const Jet& g);

}  // namespace kernels

namespace reference {

/// Straightforward serial product over coefficient pairs. Kept as the
/// independent reference the kernel tests and the benchmark compare against.
Jet mul_jets(const Jet& f, const Jet& g);

/// Straightforward composition by repeated reference multiplication.
Jet compose_jets(const Jet& f, const std::vector<Jet>& g);

}  // namespace reference
}  // namespace germcalc
