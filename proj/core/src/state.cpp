#include "fqsl/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "fqsl/errors.hpp"

namespace fqsl {

namespace {

constexpr double kCoordinateSlack = 1e-12;

}  // namespace

ProbabilityDistribution::ProbabilityDistribution(const std::array<double, kLevels>& p) : p_(p) {
  for (std::size_t n = 0; n < kLevels; ++n) {
    double& pn = p_[n];
    if (!std::isfinite(pn) || pn < -kZeroPopulation || pn > 1.0 + kZeroPopulation) {
      throw InvalidInput("population p" + std::to_string(n + 1) + " = " + std::to_string(pn) +
                         " is outside [0, 1]");
    }
    pn = std::clamp(pn, 0.0, 1.0);
  }
  const double total = std::accumulate(p_.begin(), p_.end(), 0.0);
  if (std::abs(total - 1.0) > kRenormalizeTolerance) {
    throw InvalidInput("populations sum to " + std::to_string(total) + ", expected 1");
  }
  for (double& pn : p_) pn /= total;
}

ProbabilityDistribution ProbabilityDistribution::uniform() {
  std::array<double, kLevels> p;
  p.fill(1.0 / 6.0);
  return ProbabilityDistribution(p);
}

std::array<double, 5> ProbabilityDistribution::energy_weights() const {
  return {p_[0], p_[1], p_[2] + p_[3], p_[4], p_[5]};
}

bool ProbabilityDistribution::is_stationary() const {
  int occupied = 0;
  for (double weight : energy_weights()) {
    if (weight > kZeroPopulation) ++occupied;
  }
  return occupied <= 1;
}

double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a value just below a negative multiple of 2pi can round up to 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

PhasePair::PhasePair(double alpha, double beta) : alpha_(wrap_angle(alpha)), beta_(wrap_angle(beta)) {}

DerivedCoordinates derive_coordinates(const ProbabilityDistribution& dist) {
  const auto& p = dist.values();
  return {
      .x = p[0] + p[5],
      .y = p[0] - p[5],
      .u = p[1] + p[4],
      .v = p[1] - p[4],
      .w = p[2] + p[3],
      .z = p[2] - p[3],
  };
}

ProbabilityDistribution restore_distribution(const DerivedCoordinates& c) {
  const bool feasible = std::abs(c.y) <= c.x + kCoordinateSlack && std::abs(c.v) <= c.u + kCoordinateSlack &&
                        std::abs(c.z) <= c.w + kCoordinateSlack &&
                        std::abs(c.x + c.u + c.w - 1.0) <= kCoordinateSlack;
  if (!feasible) throw InvalidInput("infeasible coordinates");
  return ProbabilityDistribution({
      0.5 * (c.x + c.y),
      0.5 * (c.u + c.v),
      0.5 * (c.w + c.z),
      0.5 * (c.w - c.z),
      0.5 * (c.u - c.v),
      0.5 * (c.x - c.y),
  });
}

double SlaterCoefficients::norm() const {
  return 4.0 * (std::norm(w12) + std::norm(w13) + std::norm(w14) + std::norm(w23) + std::norm(w24) +
                std::norm(w34));
}

TwoFermionState::TwoFermionState(ProbabilityDistribution dist, const std::array<double, kLevels>& theta)
    : dist_(std::move(dist)), theta_(theta) {}

TwoFermionState TwoFermionState::from_phases(ProbabilityDistribution dist, PhasePair phases) {
  std::array<double, kLevels> theta{};
  theta[0] = phases.alpha();
  theta[2] = phases.alpha() - phases.beta();
  return TwoFermionState(std::move(dist), theta);
}

PhasePair TwoFermionState::phases() const {
  const auto& t = theta_;
  return PhasePair(t[0] + t[5] - t[1] - t[4], t[0] + t[5] - t[2] - t[3]);
}

SlaterCoefficients TwoFermionState::slater_coefficients() const {
  auto coefficient = [this](std::size_t n) { return 0.5 * std::polar(std::sqrt(dist_[n]), theta_[n]); };
  return {coefficient(0), coefficient(1), coefficient(2), coefficient(3), coefficient(4), coefficient(5)};
}

std::complex<double> state_overlap(const ProbabilityDistribution& dist, double phi) {
  const double reduced = wrap_angle(phi);
  if (reduced == 0.0) return {1.0, 0.0};
  const auto weights = dist.energy_weights();
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double energy = 3.0 + static_cast<double>(k);
    sum += std::polar(weights[k], -energy * reduced);
  }
  return sum;
}

}  // namespace fqsl
