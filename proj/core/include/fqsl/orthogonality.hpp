#pragma once

// Orthogonality condition <psi(0)|psi(phi)> = 0. With chi = exp(-i phi) it is
// the quartic p1 + p2 chi + (p3+p4) chi^2 + p5 chi^3 + p6 chi^4 = 0 restricted
// to the unit circle, or equivalently the real pair
//   0 = 2x cos^2(phi) + u cos(phi) + (1 - 2x - u)
//   0 = (v + 2y cos(phi)) sin(phi)
// whose second factor splits solutions into family I (sin phi = 0) and
// family II (v + 2y cos phi = 0).

#include <optional>
#include <string_view>
#include <vector>

#include "fqsl/state.hpp"

namespace fqsl {

inline constexpr double kDefaultRootTolerance = 1e-9;

enum class Family { I, II, Both, None };

std::string_view to_string(Family family);

struct OrthogonalityResult {
  std::vector<double> roots;      ///< ascending, in (0, 2pi]
  std::vector<Family> families;   ///< one tag per root
  std::optional<double> phi_1;    ///< first root when reachable
  bool reachable = false;
};

/// All phases phi in (0, 2pi] with |overlap| < tol. Roots of the quartic are
/// taken from its companion matrix, kept when they lie within 1e-6 of the
/// unit circle, refined by bisection on the real system and certified
/// against the overlap itself. Stationary inputs yield reachable = false.
/// Throws InvalidInput ("bad tolerance") unless tol is in (0, 1e-6].
OrthogonalityResult solve_orthogonality(const ProbabilityDistribution& dist,
                                        double tol = kDefaultRootTolerance);

enum class Branch { Plus, Minus };

std::string_view to_string(Branch branch);

/// cos(phi) solving the real part for the given sign of the square root,
/// when it exists and lies in [-1, 1]. For x = 0 only the plus branch exists
/// and equals (u - 1)/u. Requires x, u in [0, 1] with 0 < x + u <= 1;
/// x = u = 0 throws InvalidInput ("stationary (w=1)").
std::optional<double> cos_branch(double x, double u, Branch branch);

/// The admissible cos(phi) values of both branches, plus first.
std::vector<double> real1_cos_solutions(double x, double u);

/// Which factor of the imaginary part vanishes at the root phi. Throws
/// InvalidInput ("not an orthogonality root") if |overlap(phi)| >= tol.
Family classify_family(const ProbabilityDistribution& dist, double phi, double tol = kDefaultRootTolerance);

/// Orthogonality phases that are real roots of the quartic: pi, 3pi, 5pi, ...
/// up to phi_max when u = 1/2 within 1e-9, otherwise empty.
std::vector<double> real_root_times(const ProbabilityDistribution& dist, double phi_max = kTwoPi);

}  // namespace fqsl
