#pragma once

#include <limits>
#include <optional>
#include <string_view>

#include "fqsl/state.hpp"

namespace fqsl {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

enum class ActiveBound { MT, ML, Equal };

std::string_view to_string(ActiveBound bound);

/// Mandelstam-Tamm / Margolus-Levitin analysis of one state. Energies are in
/// units of epsilon, times in hbar/epsilon. Stationary states carry
/// kUnbounded times.
struct SpeedLimitReport {
  int m_index = 3;  ///< E_min / epsilon over the occupied levels
  /// E_max / epsilon over the occupied levels; unknown when the report was
  /// built from plane coordinates alone.
  std::optional<int> M_index;
  double mean_rel_energy = 0.0;  ///< <H> - E_min
  double sigma = 0.0;            ///< energy dispersion
  double tau_mt = kUnbounded;
  double tau_ml = kUnbounded;
  double tau_qsl = kUnbounded;
  ActiveBound active_bound = ActiveBound::Equal;

  bool bounded() const { return tau_qsl != kUnbounded; }
};

struct OccupiedExtremes {
  int m_index;
  int M_index;
};

/// Lowest and highest occupied energy codes (3..7). Populations <= 1e-12 are
/// treated as empty.
OccupiedExtremes occupied_extremes(const ProbabilityDistribution& dist);

SpeedLimitReport speed_limit(const ProbabilityDistribution& dist);

/// The same bounds evaluated directly on the plane (2y+v, 4x+u) for a given
/// occupied minimum m. Throws InvalidInput when the point lies outside
/// [-2,2]x[0,4], below the dispersion parabola (sigma^2 < 0), or when the
/// mean relative energy (5-m)-(2y+v) is negative.
SpeedLimitReport qsl_from_plane(double two_y_plus_v, double four_x_plus_u, int m_index);

}  // namespace fqsl
