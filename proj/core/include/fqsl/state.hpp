#pragma once

// Two identical fermions with four single-particle levels, epsilon_k = k.
// The six Slater determinants |12>, |13>, |14>, |23>, |24>, |34> are the
// basis states |1>..|6> with energies (3, 4, 5, 5, 6, 7) in units of epsilon.
// Units throughout: hbar = epsilon = 1, so times are the phase phi = eps*t/hbar.

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>

namespace fqsl {

inline constexpr std::size_t kLevels = 6;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Populations at or below this value count as empty (occupied-level tables,
/// stationarity checks).
inline constexpr double kZeroPopulation = 1e-12;

/// Inputs whose total differs from one by at most this much are renormalized.
inline constexpr double kRenormalizeTolerance = 1e-9;

struct Spectrum {
  static constexpr std::array<int, kLevels> levels{3, 4, 5, 5, 6, 7};

  static constexpr int energy(std::size_t n) { return levels[n]; }
};

static_assert(Spectrum::levels[2] == Spectrum::levels[3]);

/// Six populations p1..p6 over the Slater basis. Always valid once built:
/// each entry in [0, 1] and the sum equal to one to 1e-12.
class ProbabilityDistribution {
 public:
  /// Throws InvalidInput for negative entries, entries above one, or a sum
  /// further than 1e-9 from one. Sums within that window are rescaled.
  explicit ProbabilityDistribution(const std::array<double, kLevels>& p);

  static ProbabilityDistribution uniform();

  double operator[](std::size_t n) const { return p_[n]; }
  const std::array<double, kLevels>& values() const { return p_; }

  /// Probability of each distinct energy 3..7 (index 0..4); the degenerate
  /// pair |3>, |4> is merged.
  std::array<double, 5> energy_weights() const;

  /// True when all weight sits on a single energy.
  bool is_stationary() const;

  friend bool operator==(const ProbabilityDistribution&, const ProbabilityDistribution&) = default;

 private:
  std::array<double, kLevels> p_{};
};

/// The two phase combinations that survive in the concurrence,
/// alpha = t1 + t6 - t2 - t5 and beta = t1 + t6 - t3 - t4, kept in [0, 2pi).
class PhasePair {
 public:
  PhasePair() = default;
  PhasePair(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  friend bool operator==(const PhasePair&, const PhasePair&) = default;

 private:
  double alpha_ = 0.0;
  double beta_ = 0.0;
};

/// Reduce an angle into [0, 2pi).
double wrap_angle(double angle);

struct DerivedCoordinates {
  double x = 0.0;  // p1 + p6
  double y = 0.0;  // p1 - p6
  double u = 0.0;  // p2 + p5
  double v = 0.0;  // p2 - p5
  double w = 0.0;  // p3 + p4
  double z = 0.0;  // p3 - p4

  double two_y_plus_v() const { return 2.0 * y + v; }
  double four_x_plus_u() const { return 4.0 * x + u; }
};

DerivedCoordinates derive_coordinates(const ProbabilityDistribution& dist);

/// Inverse of derive_coordinates. Throws InvalidInput ("infeasible
/// coordinates") unless |y| <= x, |v| <= u, |z| <= w and x + u + w = 1.
ProbabilityDistribution restore_distribution(const DerivedCoordinates& c);

/// Slater coefficients w_ij (i < j) of the antisymmetric amplitude matrix,
/// with 2 w_ij = sqrt(p_n) exp(i theta_n).
struct SlaterCoefficients {
  std::complex<double> w12, w13, w14, w23, w24, w34;

  /// 4 * sum_{i<j} |w_ij|^2, equal to one for a normalized state.
  double norm() const;
};

class TwoFermionState {
 public:
  TwoFermionState(ProbabilityDistribution dist, const std::array<double, kLevels>& theta);

  /// A representative state with the given (alpha, beta): theta1 = alpha,
  /// theta3 = alpha - beta, all other phases zero.
  static TwoFermionState from_phases(ProbabilityDistribution dist, PhasePair phases);

  const ProbabilityDistribution& distribution() const { return dist_; }
  const std::array<double, kLevels>& theta() const { return theta_; }

  /// Only these two combinations of the theta_n enter any observable.
  PhasePair phases() const;

  SlaterCoefficients slater_coefficients() const;

 private:
  ProbabilityDistribution dist_;
  std::array<double, kLevels> theta_{};
};

/// <psi(0)|psi(phi)> = sum_n p_n exp(-i E_n phi). Exactly 2pi-periodic.
std::complex<double> state_overlap(const ProbabilityDistribution& dist, double phi);

}  // namespace fqsl
