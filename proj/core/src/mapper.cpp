#include "fqsl/mapper.hpp"

#include <algorithm>
#include <cmath>

#include "fqsl/errors.hpp"
#include "fqsl/speed_limit.hpp"

namespace fqsl {

namespace {

constexpr double kSlack = 1e-12;
constexpr double kAxisZero = 1e-12;

double axis_point(const Interval& range, std::size_t index, std::size_t resolution) {
  if (index + 1 == resolution) return range.hi;
  return range.lo + (range.hi - range.lo) * static_cast<double>(index) / static_cast<double>(resolution - 1);
}

void check_within(const Interval& range, double lo, double hi, const char* axis) {
  if (range.lo < lo - kSlack || range.hi > hi + kSlack) {
    throw InvalidInput(std::string("grid range for ") + axis + " exceeds its domain");
  }
}

template <class CellFn>
GridMap evaluate(GridMap map, const CellFn& cell_fn) {
  map.spec.validate();
  const auto& s = map.spec;
  map.cells.reserve(s.first_resolution * s.second_resolution);
  for (std::size_t i = 0; i < s.first_resolution; ++i) {
    for (std::size_t j = 0; j < s.second_resolution; ++j) {
      GridCell cell;
      cell.coord1 = s.first_coordinate(i);
      cell.coord2 = s.second_coordinate(j);
      cell_fn(cell);
      map.cells.push_back(std::move(cell));
    }
  }
  return map;
}

void set_excluded(GridCell& cell, const char* reason) {
  cell.kind = CellKind::Excluded;
  cell.tag = reason;
}

void set_phase(GridCell& cell, double cos_phi) {
  cell.kind = CellKind::Finite;
  cell.value = std::acos(cos_phi) / kPi;
}

}  // namespace

void GridSpec::validate() const {
  if (!(first.hi > first.lo) || !(second.hi > second.lo)) throw InvalidInput("grid ranges must be nonempty");
  if (first_resolution < 2 || second_resolution < 2) throw InvalidInput("grid resolution must be at least 2");
}

double GridSpec::first_coordinate(std::size_t i) const { return axis_point(first, i, first_resolution); }
double GridSpec::second_coordinate(std::size_t j) const { return axis_point(second, j, second_resolution); }

GridSpec default_qsl_grid(std::size_t resolution) { return {{-2.0, 2.0}, {0.0, 4.0}, resolution, resolution}; }
GridSpec default_xu_grid(std::size_t resolution) { return {{0.0, 1.0}, {0.0, 1.0}, resolution, resolution}; }
GridSpec default_yv_grid(std::size_t resolution) { return {{-1.0, 1.0}, {-1.0, 1.0}, resolution, resolution}; }

GridMap map_qsl_plane(const GridSpec& spec, int m_index) {
  spec.validate();
  check_within(spec.first, -2.0, 2.0, "2y+v");
  check_within(spec.second, 0.0, 4.0, "4x+u");
  if (m_index < 3 || m_index > 7) throw InvalidInput("m index outside 3..7");

  GridMap map{"qsl", "2y+v", "4x+u", "hbar/epsilon", spec, {}};
  return evaluate(std::move(map), [m_index](GridCell& cell) {
    const double t = cell.coord1;
    const double s = cell.coord2;
    if (s - t * t < -kSlack) return set_excluded(cell, "below dispersion parabola");
    if ((5.0 - m_index) - t < -kSlack) return set_excluded(cell, "mean below occupied minimum");
    const SpeedLimitReport r = qsl_from_plane(t, s, m_index);
    cell.tag = std::string(to_string(r.active_bound));
    if (!r.bounded()) {
      cell.kind = CellKind::Unbounded;
      cell.value = kUnbounded;
    } else {
      cell.kind = CellKind::Finite;
      cell.value = std::min(r.tau_qsl, kQslDisplayCap);
    }
  });
}

GridMap map_xu_region(const GridSpec& spec, Branch branch) {
  spec.validate();
  check_within(spec.first, 0.0, 1.0, "x");
  check_within(spec.second, 0.0, 1.0, "u");

  GridMap map{std::string("xu"), "x", "u", "fractions of pi", spec, {}};
  return evaluate(std::move(map), [branch](GridCell& cell) {
    const double x = cell.coord1;
    const double u = cell.coord2;
    if (x + u > 1.0 + kSlack) return set_excluded(cell, "x+u>1");
    if (x + u <= kZeroPopulation) return set_excluded(cell, "stationary");
    const auto cos_phi = cos_branch(x, u, branch);
    if (!cos_phi) return set_excluded(cell, "no real solution");
    set_phase(cell, *cos_phi);
    cell.tag = std::string(to_string(branch));
  });
}

GridMap map_yv_region(const GridSpec& spec) {
  spec.validate();
  check_within(spec.first, -1.0, 1.0, "y");
  check_within(spec.second, -1.0, 1.0, "v");

  GridMap map{"yv", "y", "v", "fractions of pi", spec, {}};
  return evaluate(std::move(map), [](GridCell& cell) {
    const double y = cell.coord1;
    const double v = cell.coord2;
    if (std::abs(v + y) > 1.0 + kSlack || std::abs(v - y) > 1.0 + kSlack) {
      return set_excluded(cell, "outside |v+-y|<=1");
    }
    if (std::abs(y) <= kAxisZero) {
      if (std::abs(v) <= kAxisZero) {
        cell.kind = CellKind::Unconstrained;
        cell.tag = "unconstrained";
        return;
      }
      return set_excluded(cell, "y=0 requires v=0");
    }
    const double cos_phi = -v / (2.0 * y);
    if (std::abs(cos_phi) > 1.0 + kSlack) return set_excluded(cell, "no real solution");
    const double phi_over_pi = std::acos(std::clamp(cos_phi, -1.0, 1.0)) / kPi;
    if (phi_over_pi < 0.25 - kSlack) return set_excluded(cell, "phi1<pi/4");
    cell.kind = CellKind::Finite;
    cell.value = phi_over_pi;
    cell.tag = "II";
  });
}

}  // namespace fqsl
