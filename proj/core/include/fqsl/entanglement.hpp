#pragma once

#include <cmath>

#include "fqsl/state.hpp"

namespace fqsl {

/// Squared fermionic concurrence of a pure two-fermion state (d = 4).
struct ConcurrenceValue {
  double c_squared = 0.0;

  double concurrence() const { return std::sqrt(c_squared); }
};

/// C_f^2 = 64 |w12 w34 - w13 w24 + w14 w23|^2.
/// Throws InvalidInput ("normalization violated") when 4 sum |w_ij|^2 is not
/// within 1e-9 of one.
ConcurrenceValue concurrence_from_coefficients(const SlaterCoefficients& w);

/// Closed form of the same quantity in terms of the populations and the two
/// surviving phase combinations:
///   4 [p1p6 + p2p5 + p3p4 - 2 sqrt(p1p6p2p5) cos a
///      + 2 sqrt(p1p6p3p4) cos b - 2 sqrt(p2p5p3p4) cos(b - a)].
ConcurrenceValue concurrence_squared(const ProbabilityDistribution& dist, PhasePair phases);

}  // namespace fqsl
