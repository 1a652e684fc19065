#include "fqsl/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fqsl/errors.hpp"

namespace fqsl {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kRoundoff = 1e-12;

ConcurrenceValue clamped(double c_squared) {
  // Cancellation can leave a few ulps outside [0, 1].
  if (c_squared < 0.0 && c_squared >= -kRoundoff) c_squared = 0.0;
  if (c_squared > 1.0 && c_squared <= 1.0 + kRoundoff) c_squared = 1.0;
  return {c_squared};
}

}  // namespace

ConcurrenceValue concurrence_from_coefficients(const SlaterCoefficients& w) {
  if (std::abs(w.norm() - 1.0) > kNormTolerance) {
    throw InvalidInput("normalization violated");
  }
  const std::complex<double> pfaffian = w.w12 * w.w34 - w.w13 * w.w24 + w.w14 * w.w23;
  return clamped(64.0 * std::norm(pfaffian));
}

ConcurrenceValue concurrence_squared(const ProbabilityDistribution& dist, PhasePair phases) {
  const auto& p = dist.values();
  const double p16 = p[0] * p[5];
  const double p25 = p[1] * p[4];
  const double p34 = p[2] * p[3];
  const double a = phases.alpha();
  const double b = phases.beta();
  const double value = 4.0 * (p16 + p25 + p34 - 2.0 * std::sqrt(p16 * p25) * std::cos(a) +
                              2.0 * std::sqrt(p16 * p34) * std::cos(b) -
                              2.0 * std::sqrt(p25 * p34) * std::cos(b - a));
  return clamped(value);
}

}  // namespace fqsl
