#pragma once

#include "germcalc/jet.hpp"

namespace germcalc {

/// Label of a local coordinate patch for the blow-up of the origin in C^2:
/// a finite value lambda selects (z1, z2) -> (z1, (lambda + z2) z1), the
/// point at infinity selects (z1, z2) -> (z1 z2, z2).
struct Chart {
  bool infinite = false;
  GaussianRational lambda;

  static Chart at(GaussianRational l) { return Chart{false, std::move(l)}; }
  static Chart infinity() { return Chart{true, GaussianRational(0)}; }

  bool operator==(const Chart& o) const {
    return infinite == o.infinite && (infinite || lambda == o.lambda);
  }

  std::string label() const;
  static Chart parse(const std::string& text);
};

/// Jet of f composed with the chart map, at the chart origin. f must be a
/// two-dimensional jet based at the origin with order >= k_out.
Jet blow_up_jet(const Jet& f, const Chart& chart, int k_out);

/// Inverts blow_up_jet anchored at chart 0: an order-2k chart jet determines
/// the order-k jet downstairs via the reindexing (i, j) <- (i + j, j).
/// Raises NotABlowDown when the support condition fails.
Jet blow_down_reconstruct(const Jet& g, int k);

/// Same inversion from an arbitrary chart: finite charts undo the shear by an
/// exact triangular solve, the infinite chart by the mirrored reindexing.
Jet reconstruct_from_chart(const Jet& g, const Chart& chart, int k);

/// True iff the two chart jets of f agree after transporting both back
/// downstairs (f needs order >= 2k).
bool chart_transition_check(const Jet& f, const Chart& c1, const Chart& c2, int k);

/// Lower-level consistency check on two hand-supplied chart jets. Support
/// violations count as inconsistent rather than raising.
bool charts_consistent(const Jet& g1, const Chart& c1, const Jet& g2, const Chart& c2, int k);

/// True iff g is constant along the chart's exceptional curve (z1 = 0 in
/// finite charts). Every chart jet of a blow-up passes this.
bool divisor_constancy_check(const Jet& g);
bool divisor_constancy_check(const Jet& g, const Chart& chart);

}  // namespace germcalc
