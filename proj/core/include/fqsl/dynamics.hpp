#pragma once

#include <cstddef>
#include <vector>

#include "fqsl/state.hpp"

namespace fqsl {

struct TimeSeries {
  std::vector<double> times;   ///< phi = eps t / hbar
  std::vector<double> values;  ///< survival probability, in [0, 1]
};

/// P(phi) = |<psi(0)|psi(phi)>|^2 on `steps` evenly spaced points of
/// [0, phi_max], endpoints included. Throws InvalidInput unless phi_max > 0
/// and steps >= 2.
TimeSeries survival_series(const ProbabilityDistribution& dist, double phi_max = kTwoPi, std::size_t steps = 4096);

double survival_probability(const ProbabilityDistribution& dist, double phi);

}  // namespace fqsl
