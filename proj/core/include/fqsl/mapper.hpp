#pragma once

// Dense grid evaluations of the speed-limit plane and the solution regions
// of the two real orthogonality equations.

#include <cstddef>
#include <string>
#include <vector>

#include "fqsl/orthogonality.hpp"

namespace fqsl {

inline constexpr std::size_t kDefaultGridResolution = 512;

struct Interval {
  double lo;
  double hi;
};

struct GridSpec {
  Interval first;
  Interval second;
  std::size_t first_resolution = kDefaultGridResolution;
  std::size_t second_resolution = kDefaultGridResolution;

  /// Throws InvalidInput for empty ranges or resolutions below two.
  void validate() const;

  double first_coordinate(std::size_t i) const;
  double second_coordinate(std::size_t j) const;
};

enum class CellKind {
  Finite,
  Unbounded,      ///< value is +infinity
  Excluded,       ///< no admissible solution; tag carries the reason
  Unconstrained,  ///< the equation holds for every phase (y = v = 0)
};

struct GridCell {
  double coord1 = 0.0;
  double coord2 = 0.0;
  CellKind kind = CellKind::Excluded;
  double value = 0.0;  ///< meaningful for Finite and Unbounded
  std::string tag;
};

struct GridMap {
  std::string name;        ///< "qsl", "xu" or "yv"
  std::string coord1_name;
  std::string coord2_name;
  std::string units;
  GridSpec spec;
  std::vector<GridCell> cells;  ///< row-major: coord1 outer, coord2 inner

  const GridCell& at(std::size_t i, std::size_t j) const { return cells[i * spec.second_resolution + j]; }
};

/// Display cap for the speed-limit plane, in hbar/epsilon.
inline constexpr double kQslDisplayCap = 2.0 * kPi;

/// tau_qsl over (2y+v, 4x+u) for a fixed m, in hbar/epsilon, capped at 2pi.
/// Cells below the dispersion parabola are excluded.
GridMap map_qsl_plane(const GridSpec& spec, int m_index = 3);

/// First phase arccos(c) / pi of the chosen branch of the real equation over
/// (x, u); inadmissible cells (including x + u > 1) are excluded.
GridMap map_xu_region(const GridSpec& spec, Branch branch);

/// First phase arccos(-v / 2y) / pi over (y, v); cells with phi_1 < pi/4 or
/// outside |v +- y| <= 1 are excluded. On y = 0 only v = 0 is admissible and
/// is reported as Unconstrained.
GridMap map_yv_region(const GridSpec& spec);

/// Default spans of each map.
GridSpec default_qsl_grid(std::size_t resolution = kDefaultGridResolution);
GridSpec default_xu_grid(std::size_t resolution = kDefaultGridResolution);
GridSpec default_yv_grid(std::size_t resolution = kDefaultGridResolution);

}  // namespace fqsl
