#include "fqsl/speed_limit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fqsl/errors.hpp"

namespace fqsl {

namespace {

constexpr double kPlaneSlack = 1e-12;
constexpr double kEqualTolerance = 1e-12;

ActiveBound compare_bounds(double tau_mt, double tau_ml) {
  if (tau_mt == kUnbounded && tau_ml == kUnbounded) return ActiveBound::Equal;
  const double scale = std::max({1.0, std::abs(tau_mt), std::abs(tau_ml)});
  if (std::abs(tau_ml - tau_mt) <= kEqualTolerance * scale) return ActiveBound::Equal;
  return tau_ml > tau_mt ? ActiveBound::ML : ActiveBound::MT;
}

double bound_time(double energy_scale) {
  return energy_scale > 0.0 ? kPi / (2.0 * energy_scale) : kUnbounded;
}

SpeedLimitReport assemble(int m_index, std::optional<int> M_index, double mean, double sigma) {
  SpeedLimitReport r;
  r.m_index = m_index;
  r.M_index = M_index;
  r.mean_rel_energy = mean;
  r.sigma = sigma;
  r.tau_mt = bound_time(sigma);
  r.tau_ml = bound_time(mean);
  r.tau_qsl = std::max(r.tau_mt, r.tau_ml);
  r.active_bound = compare_bounds(r.tau_mt, r.tau_ml);
  return r;
}

}  // namespace

std::string_view to_string(ActiveBound bound) {
  switch (bound) {
    case ActiveBound::MT:
      return "MT";
    case ActiveBound::ML:
      return "ML";
    case ActiveBound::Equal:
      return "EQUAL";
  }
  return "EQUAL";
}

OccupiedExtremes occupied_extremes(const ProbabilityDistribution& dist) {
  const auto weights = dist.energy_weights();
  int lowest = 7;
  int highest = 3;
  bool any = false;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= kZeroPopulation) continue;
    const int code = 3 + static_cast<int>(k);
    lowest = any ? std::min(lowest, code) : code;
    highest = any ? std::max(highest, code) : code;
    any = true;
  }
  return {lowest, highest};
}

SpeedLimitReport speed_limit(const ProbabilityDistribution& dist) {
  const auto [m, M] = occupied_extremes(dist);
  if (dist.is_stationary()) {
    SpeedLimitReport r;
    r.m_index = m;
    r.M_index = M;
    return r;
  }
  const DerivedCoordinates c = derive_coordinates(dist);
  const double t = c.two_y_plus_v();
  const double mean = std::max(0.0, (5.0 - m) - t);
  const double sigma = std::sqrt(std::max(0.0, c.four_x_plus_u() - t * t));
  return assemble(m, M, mean, sigma);
}

SpeedLimitReport qsl_from_plane(double two_y_plus_v, double four_x_plus_u, int m_index) {
  if (m_index < 3 || m_index > 7) {
    throw InvalidInput("m index " + std::to_string(m_index) + " outside 3..7");
  }
  if (two_y_plus_v < -2.0 - kPlaneSlack || two_y_plus_v > 2.0 + kPlaneSlack || four_x_plus_u < -kPlaneSlack ||
      four_x_plus_u > 4.0 + kPlaneSlack) {
    throw InvalidInput("plane point outside [-2,2]x[0,4]");
  }
  const double variance = four_x_plus_u - two_y_plus_v * two_y_plus_v;
  if (variance < -kPlaneSlack) throw InvalidInput("below dispersion parabola");
  const double mean = (5.0 - m_index) - two_y_plus_v;
  if (mean < -kPlaneSlack) throw InvalidInput("mean energy below the occupied minimum");
  return assemble(m_index, std::nullopt, std::max(0.0, mean), std::sqrt(std::max(0.0, variance)));
}

}  // namespace fqsl
