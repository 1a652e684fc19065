#include "fqsl/orthogonality.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "fqsl/errors.hpp"

namespace fqsl {

namespace {

using Complex = std::complex<double>;

constexpr double kUnitCircleSlack = 1e-6;
constexpr double kDuplicateRoot = 1e-8;
constexpr double kHalfTolerance = 1e-9;
constexpr double kDomainSlack = 1e-12;
constexpr std::array<double, 4> kBracketWidths{1e-10, 1e-8, 1e-6, 1e-4};

Family tag(const DerivedCoordinates& c, double phi, double tol) {
  const bool real_root = std::abs(std::sin(phi)) < tol;
  const bool second_factor = std::abs(c.v + 2.0 * c.y * std::cos(phi)) < tol;
  if (real_root && second_factor) return Family::Both;
  if (real_root) return Family::I;
  if (second_factor) return Family::II;
  return Family::None;
}

Complex evaluate(const std::vector<double>& coeffs, Complex z) {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex evaluate_derivative(const std::vector<double>& coeffs, Complex z) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = coeffs.size() - 1; k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs[k];
  return acc;
}

// Complex roots of sum_k coeffs[k] z^k. Leading coefficient must be nonzero.
std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
  const auto degree = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (degree < 1) return {};
  if (degree == 1) return {Complex(-coeffs[0] / coeffs[1], 0.0)};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[i] / coeffs[degree];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto& eigenvalues = solver.eigenvalues();

  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(degree));
  for (Eigen::Index i = 0; i < degree; ++i) {
    Complex z = eigenvalues[i];
    // Newton polish; stops as soon as a step fails to improve the residual.
    for (int iter = 0; iter < 4; ++iter) {
      const Complex f = evaluate(coeffs, z);
      const Complex df = evaluate_derivative(coeffs, z);
      if (std::abs(df) < 1e-14) break;
      const Complex next = z - f / df;
      if (std::abs(evaluate(coeffs, next)) >= std::abs(f)) break;
      z = next;
    }
    roots.push_back(z);
  }
  return roots;
}

template <class F>
double bisect(const F& f, double lo, double hi) {
  double f_lo = f(lo);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Polish an approximate root on the real pair of equations: bisect whichever
// component changes sign across a small bracket and keep the best point.
double refine_root(const ProbabilityDistribution& dist, const DerivedCoordinates& c, double phi0) {
  const auto real_part = [&c](double phi) { return c.w + c.u * std::cos(phi) + c.x * std::cos(2.0 * phi); };
  const auto imag_part = [&c](double phi) { return std::sin(phi) * (c.v + 2.0 * c.y * std::cos(phi)); };

  double best = phi0;
  double best_residual = std::abs(state_overlap(dist, phi0));
  const auto consider = [&](double phi) {
    const double residual = std::abs(state_overlap(dist, phi));
    if (residual < best_residual) {
      best = phi;
      best_residual = residual;
    }
  };
  const auto try_component = [&](const auto& f) {
    for (double width : kBracketWidths) {
      const double lo = phi0 - width;
      const double hi = phi0 + width;
      if (f(lo) * f(hi) < 0.0) {
        consider(bisect(f, lo, hi));
        return;
      }
    }
  };
  try_component(real_part);
  try_component(imag_part);
  if (std::abs(best - kPi) < kUnitCircleSlack) consider(kPi);
  return best;
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::I:
      return "I";
    case Family::II:
      return "II";
    case Family::Both:
      return "BOTH";
    case Family::None:
      return "NONE";
  }
  return "NONE";
}

std::string_view to_string(Branch branch) { return branch == Branch::Plus ? "plus" : "minus"; }

OrthogonalityResult solve_orthogonality(const ProbabilityDistribution& dist, double tol) {
  if (!(tol > 0.0 && tol <= 1e-6)) throw InvalidInput("bad tolerance");

  OrthogonalityResult result;
  if (dist.is_stationary()) return result;

  const auto& p = dist.values();
  std::vector<double> coeffs{p[0], p[1], p[2] + p[3], p[4], p[5]};
  while (!coeffs.empty() && coeffs.back() <= kZeroPopulation) coeffs.pop_back();
  // Vanishing low-order coefficients contribute roots at chi = 0 only.
  std::size_t leading_zeros = 0;
  while (leading_zeros < coeffs.size() && coeffs[leading_zeros] <= kZeroPopulation) ++leading_zeros;
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(leading_zeros));

  const DerivedCoordinates c = derive_coordinates(dist);
  std::vector<double> candidates;
  for (const Complex& chi : polynomial_roots(coeffs)) {
    if (std::abs(std::abs(chi) - 1.0) >= kUnitCircleSlack) continue;
    double phi = wrap_angle(-std::arg(chi));
    if (phi == 0.0) phi = kTwoPi;
    candidates.push_back(phi);
  }
  if (std::abs(state_overlap(dist, kPi)) < tol) candidates.push_back(kPi);

  std::vector<std::pair<double, double>> certified;  // (phi, residual)
  for (double phi0 : candidates) {
    const double phi = refine_root(dist, c, phi0);
    const double residual = std::abs(state_overlap(dist, phi));
    if (residual < tol && phi > 0.0 && phi <= kTwoPi) certified.emplace_back(phi, residual);
  }
  std::sort(certified.begin(), certified.end());

  for (const auto& [phi, residual] : certified) {
    if (!result.roots.empty() && phi - result.roots.back() < kDuplicateRoot) {
      if (residual < std::abs(state_overlap(dist, result.roots.back()))) result.roots.back() = phi;
      continue;
    }
    result.roots.push_back(phi);
  }
  for (double phi : result.roots) result.families.push_back(tag(c, phi, tol));

  result.reachable = !result.roots.empty();
  if (result.reachable) result.phi_1 = result.roots.front();
  return result;
}

std::optional<double> cos_branch(double x, double u, Branch branch) {
  if (x < -kDomainSlack || x > 1.0 + kDomainSlack || u < -kDomainSlack || u > 1.0 + kDomainSlack ||
      x + u > 1.0 + kDomainSlack) {
    throw InvalidInput("(x, u) outside the normalized domain");
  }
  x = std::max(x, 0.0);
  u = std::max(u, 0.0);
  if (x + u <= kZeroPopulation) throw InvalidInput("stationary (w=1)");

  // Roots of 2x c^2 + u c + (1 - 2x - u) = 0 in cancellation-free form.
  double discriminant = (4.0 * x + u) * (4.0 * x + u) - 8.0 * x;
  if (discriminant < 0.0) {
    if (discriminant < -kDomainSlack) return std::nullopt;
    discriminant = 0.0;
  }
  const double root = std::sqrt(discriminant);
  double value;
  if (branch == Branch::Plus) {
    const double denom = u + root;
    value = denom > 0.0 ? 2.0 * (2.0 * x + u - 1.0) / denom : (root - u) / (4.0 * x);
  } else {
    if (x <= kZeroPopulation) return std::nullopt;
    value = -(u + root) / (4.0 * x);
  }
  if (value < -1.0 - kDomainSlack || value > 1.0 + kDomainSlack) return std::nullopt;
  return std::clamp(value, -1.0, 1.0);
}

std::vector<double> real1_cos_solutions(double x, double u) {
  std::vector<double> out;
  for (Branch branch : {Branch::Plus, Branch::Minus}) {
    const auto value = cos_branch(x, u, branch);
    if (!value) continue;
    if (!out.empty() && std::abs(out.back() - *value) <= kDomainSlack) continue;
    out.push_back(*value);
  }
  return out;
}

Family classify_family(const ProbabilityDistribution& dist, double phi, double tol) {
  if (std::abs(state_overlap(dist, phi)) >= tol) throw InvalidInput("not an orthogonality root");
  return tag(derive_coordinates(dist), phi, tol);
}

std::vector<double> real_root_times(const ProbabilityDistribution& dist, double phi_max) {
  std::vector<double> times;
  if (std::abs(derive_coordinates(dist).u - 0.5) > kHalfTolerance) return times;
  for (int l = 1;; l += 2) {
    const double phi = l * kPi;
    if (phi > phi_max + kDomainSlack) break;
    times.push_back(phi);
  }
  return times;
}

}  // namespace fqsl
