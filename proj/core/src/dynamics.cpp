#include "fqsl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fqsl/errors.hpp"

namespace fqsl {

double survival_probability(const ProbabilityDistribution& dist, double phi) {
  return std::clamp(std::norm(state_overlap(dist, phi)), 0.0, 1.0);
}

TimeSeries survival_series(const ProbabilityDistribution& dist, double phi_max, std::size_t steps) {
  if (!(phi_max > 0.0) || !std::isfinite(phi_max)) throw InvalidInput("phi_max must be positive");
  if (steps < 2) throw InvalidInput("steps must be at least 2");

  TimeSeries series;
  series.times.reserve(steps);
  series.values.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double phi =
        k + 1 == steps ? phi_max : phi_max * static_cast<double>(k) / static_cast<double>(steps - 1);
    series.times.push_back(phi);
    series.values.push_back(survival_probability(dist, phi));
  }
  return series;
}

}  // namespace fqsl
