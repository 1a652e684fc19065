// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fqsl/dynamics.hpp"
#include "fqsl/entanglement.hpp"
#include "fqsl/orthogonality.hpp"
#include "fqsl/sampler.hpp"
#include "fqsl/speed_limit.hpp"
#include "fqsl/statistics.hpp"
#include "oracles.hpp"

namespace {

using namespace fqsl;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double first_root(const ProbabilityDistribution& d) {
  const auto r = solve_orthogonality(d);
  return r.phi_1 ? *r.phi_1 : kUnbounded;
}

bool has_pi_root(const OrthogonalityResult& r) {
  return std::any_of(r.roots.begin(), r.roots.end(), [](double phi) { return std::abs(phi - kPi) < 1e-9; });
}

Outcome worked_example_times() {
  Outcome o;
  const double uniform = first_root(ProbabilityDistribution::uniform());
  const double energy = first_root(ProbabilityDistribution({0.2, 0.2, 0.1, 0.1, 0.2, 0.2}));
  const ProbabilityDistribution qubit({0.5, 0, 0, 0, 0, 0.5});
  const double q = first_root(qubit);
  o.require(near(uniform, kPi / 2, 1e-9), "uniform phi_1 = " + fmt(uniform));
  o.require(near(energy, 2 * kPi / 5, 1e-9), "equiprobable-energy phi_1 = " + fmt(energy));
  o.require(near(q, kPi / 4, 1e-9), "qubit phi_1 = " + fmt(q));
  o.require(near(q / speed_limit(qubit).tau_qsl, 1.0, 1e-9), "qubit ratio");
  o.detail << "phi_1/pi = " << fmt(uniform / kPi) << ", " << fmt(energy / kPi) << ", " << fmt(q / kPi);
  return o;
}

Outcome qsl_values() {
  Outcome o;
  const double uniform = speed_limit(ProbabilityDistribution::uniform()).tau_qsl;
  const double energy = speed_limit(ProbabilityDistribution({0.2, 0.2, 0.05, 0.15, 0.2, 0.2})).tau_qsl;
  o.require(near(uniform, kPi / 2 * std::sqrt(3.0 / 5), 1e-12), "uniform tau_qsl = " + fmt(uniform));
  o.require(near(energy, kPi / (2 * std::sqrt(2.0)), 1e-12), "equiprobable-energy tau_qsl = " + fmt(energy));
  int pairs = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      const double gap = testing::kEnergies[j] - testing::kEnergies[i];
      if (gap == 0) continue;
      std::array<double, 6> p{};
      p[i] = p[j] = 0.5;
      const double t = speed_limit(ProbabilityDistribution(p)).tau_qsl;
      o.require(near(t, kPi / gap, 1e-12), "qubit pair " + std::to_string(i + 1) + std::to_string(j + 1));
      ++pairs;
    }
  }
  o.detail << pairs << " half-half qubits checked";
  return o;
}

// Shared pool of reachable distributions for the bound and inequality checks.
std::vector<ProbabilityDistribution> reachable_pool() {
  std::vector<ProbabilityDistribution> pool;
  for (const auto& d : sample_family_I(101, 5000)) pool.push_back(d);
  for (const auto& d : sample_family_II(102, 4000, false)) pool.push_back(d);
  for (const auto& d : sample_family_II(103, 1000, true)) pool.push_back(d);
  std::mt19937_64 rng(104);
  for (int k = 0; k < 2000; ++k) pool.emplace_back(testing::random_family_two_point(rng));
  return pool;
}

Outcome first_root_bound(const std::vector<ProbabilityDistribution>& pool) {
  Outcome o;
  double lo = kUnbounded, hi = 0;
  for (const auto& d : pool) {
    const double phi = first_root(d);
    lo = std::min(lo, phi);
    hi = std::max(hi, phi);
  }
  o.require(pool.size() >= 10000, "pool size");
  o.require(lo >= kPi / 4 - 1e-9 && hi <= kPi + 1e-9, "range [" + fmt(lo) + ", " + fmt(hi) + "]");

  const double corner = first_root(ProbabilityDistribution({0.5, 0, 0, 0, 0, 0.5}));
  o.require(near(corner, kPi / 4, 1e-9), "(x,u)=(1,0) gives " + fmt(corner));
  for (double x : {0.0, 0.05, 0.1}) {
    const double w = 0.5 - x;
    const double phi = first_root(ProbabilityDistribution({x / 2, 0.25, w / 2, w / 2, 0.25, x / 2}));
    o.require(near(phi, kPi, 1e-9), "u=1/2 line at x=" + fmt(x) + " gives " + fmt(phi));
  }
  o.detail << pool.size() << " samples, phi_1/pi in [" << fmt(lo / kPi) << ", " << fmt(hi / kPi) << "]";
  return o;
}

Outcome real_root_family() {
  Outcome o;
  for (const auto& d : sample_family_I(201, 1000)) {
    o.require(near(derive_coordinates(d).u, 0.5, 1e-12), "family-I u");
    o.require(has_pi_root(solve_orthogonality(d)), "family-I root at pi");
  }
  std::mt19937_64 rng(202);
  int checked = 0;
  while (checked < 1000) {
    const ProbabilityDistribution d(checked % 2 ? testing::random_simplex_point(rng)
                                                : testing::random_family_two_point(rng));
    if (std::abs(derive_coordinates(d).u - 0.5) < 1e-6) continue;
    ++checked;
    o.require(!has_pi_root(solve_orthogonality(d)), "root at pi with u != 1/2");
    o.require(std::abs(state_overlap(d, kPi)) > 1e-9, "overlap vanishes at pi with u != 1/2");
  }
  o.detail << "1000 family-I, 1000 u != 1/2";
  return o;
}

Outcome qubit_characterization() {
  Outcome o;
  int reachable = 0, scanned = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      for (int k = 0; k <= 1000; ++k) {
        const double q = k / 1000.0;
        std::array<double, 6> p{};
        p[i] = q;
        p[j] = 1 - q;
        const bool got = solve_orthogonality(ProbabilityDistribution(p)).reachable;
        const bool want = k == 500 && testing::kEnergies[i] != testing::kEnergies[j];
        o.require(got == want, "pair " + std::to_string(i + 1) + std::to_string(j + 1) + " q=" + fmt(q));
        reachable += got;
        ++scanned;
      }
    }
  }
  o.detail << scanned << " two-point distributions, " << reachable << " reachable";
  return o;
}

Outcome concurrence_extremes() {
  Outcome o;
  const auto uniform = ProbabilityDistribution::uniform();
  const int n = 600;
  double max_v = -1, min_v = 2;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double c = concurrence_squared(uniform, PhasePair(2 * kPi * a / n, 2 * kPi * b / n)).c_squared;
      max_v = std::max(max_v, c);
      min_v = std::min(min_v, c);
    }
  }
  const double at_max = concurrence_squared(uniform, PhasePair(kPi, 0)).c_squared;
  const double at_min = concurrence_squared(uniform, PhasePair(5 * kPi / 3, 4 * kPi / 3)).c_squared;
  o.require(at_max >= 1 - 1e-3 && near(at_max, max_v, 1e-12), "max at (pi,0) = " + fmt(at_max));
  o.require(at_min <= 1e-3 && near(at_min, min_v, 1e-12), "min at (5pi/3,4pi/3) = " + fmt(at_min));

  std::mt19937_64 rng(301);
  std::uniform_real_distribution<double> angle(0, 2 * kPi);
  double worst = 0;
  for (int k = 0; k < 10000; ++k) {
    const ProbabilityDistribution d(k % 2 ? testing::random_simplex_point(rng) : testing::random_sparse_point(rng));
    std::array<double, 6> theta;
    for (double& t : theta) t = angle(rng);
    const TwoFermionState state(d, theta);
    const double alpha = theta[0] + theta[5] - theta[1] - theta[4];
    const double beta = theta[0] + theta[5] - theta[2] - theta[3];
    const double from_w = concurrence_from_coefficients(state.slater_coefficients()).c_squared;
    const double closed = concurrence_squared(d, PhasePair(alpha, beta)).c_squared;
    const double oracle = testing::concurrence_oracle(d.values(), theta);
    worst = std::max({worst, std::abs(from_w - closed), std::abs(from_w - oracle)});
  }
  o.require(worst <= 1e-10, "two-route gap " + fmt(worst));
  o.detail << "grid max " << fmt(max_v) << ", min " << fmt(min_v) << ", two-route gap " << fmt(worst);
  return o;
}

Outcome survival_details() {
  Outcome o;
  const auto s = survival_series(ProbabilityDistribution::uniform(), 2 * kPi, 1 << 16);
  double plateau = 0;
  for (std::size_t k = 0; k < s.times.size(); ++k)
    if (s.times[k] >= kPi / 2 && s.times[k] <= 2 * kPi / 3) plateau = std::max(plateau, s.values[k]);
  o.require(plateau >= 0.0010 && plateau <= 0.0025, "plateau max " + fmt(plateau));

  const auto a = survival_series(ProbabilityDistribution({0.2, 0.2, 0.2, 0, 0.2, 0.2}));
  double split_gap = 0;
  for (double p3 : {0.0, 0.03, 0.1, 0.17, 0.2}) {
    const auto b = survival_series(ProbabilityDistribution({0.2, 0.2, p3, 0.2 - p3, 0.2, 0.2}));
    for (std::size_t k = 0; k < a.values.size(); ++k) split_gap = std::max(split_gap, std::abs(a.values[k] - b.values[k]));
  }
  o.require(split_gap <= 1e-12, "split gap " + fmt(split_gap));

  std::mt19937_64 rng(401);
  double revival = 0;
  for (int k = 0; k < 1000; ++k) {
    const ProbabilityDistribution d(testing::random_simplex_point(rng));
    const auto series = survival_series(d, 2 * kPi, 16);
    revival = std::max(revival, std::abs(series.values.back() - 1));
  }
  o.require(revival <= 1e-12, "revival gap " + fmt(revival));
  o.detail << "plateau max " << fmt(plateau) << ", split gap " << fmt(split_gap) << ", revival gap " << fmt(revival);
  return o;
}

Outcome qsl_inequality(const std::vector<ProbabilityDistribution>& pool) {
  Outcome o;
  double worst = kUnbounded;
  std::size_t count = 0;
  auto check = [&](const ProbabilityDistribution& d, double phi) {
    const double slack = phi - speed_limit(d).tau_qsl;
    worst = std::min(worst, slack);
    o.require(slack >= -1e-9, "tau_1 below tau_qsl");
    ++count;
  };
  for (const auto& d : pool) check(d, first_root(d));
  for (char name : {'a', 'b', 'c', 'd', 'r'}) {
    for (const auto& r : run_scatter_study(*preset_class(name, 2000, 501))) check(r.dist, r.phi_1);
  }
  o.detail << count << " distributions, min(tau_1 - tau_qsl) = " << fmt(worst);
  return o;
}

double class_spearman(char name, std::uint64_t seed) {
  const auto records = run_scatter_study(*preset_class(name, 10000, seed));
  std::vector<double> c2, ratio;
  for (const auto& r : records) {
    c2.push_back(r.c_squared);
    ratio.push_back(r.ratio);
  }
  return stats::spearman(c2, ratio);
}

Outcome scatter_tendencies() {
  Outcome o;
  const std::uint64_t seed = 20260901;
  const double a = class_spearman('a', seed);
  const double b = class_spearman('b', seed);
  const double r = class_spearman('r', seed);
  o.require(a > 0, "class a rho = " + fmt(a));
  o.require(b < 0, "class b rho = " + fmt(b));
  o.require(std::abs(r) < 0.1, "random-phase rho = " + fmt(r));
  o.detail << "rho(a) = " << fmt(a) << ", rho(b) = " << fmt(b) << ", rho(random) = " << fmt(r);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(1001);
  std::size_t roots = 0, reachable = 0;
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    std::array<double, 6> p;
    switch (k % 4) {
      case 0:
        p = testing::random_simplex_point(rng);
        break;
      case 1:
        p = testing::random_family_one_point(rng);
        break;
      case 2:
        p = testing::random_family_two_point(rng);
        break;
      default:
        p = testing::random_sparse_point(rng);
    }
    const ProbabilityDistribution d(p);
    const auto solved = solve_orthogonality(d);
    const auto scanned = testing::brute_force_roots(d.values());
    if (solved.roots.size() != scanned.size()) {
      o.require(false, "root count " + std::to_string(solved.roots.size()) + " vs " + std::to_string(scanned.size()) +
                           " at sample " + std::to_string(k));
      continue;
    }
    for (std::size_t i = 0; i < scanned.size(); ++i) worst = std::max(worst, std::abs(solved.roots[i] - scanned[i]));
    roots += scanned.size();
    reachable += solved.reachable;
  }
  o.require(worst <= 1e-6, "max root gap " + fmt(worst));
  o.detail << "1000 distributions, " << reachable << " reachable, " << roots << " roots, max gap " << fmt(worst);
  return o;
}

void report_class_c_histogram() {
  const auto records = run_scatter_study(*preset_class('c', 10000, 777));
  std::vector<double> high;
  for (const auto& r : records)
    if (r.c_squared > 0.8) high.push_back(r.ratio);
  if (high.empty()) return;
  const double hi = *std::max_element(high.begin(), high.end());
  const auto counts = stats::histogram(high, 1.0, hi, 12);
  std::printf("INFO class c ratio histogram for C_f^2 > 0.8 (%zu samples, [1, %.3f]):", high.size(), hi);
  for (std::size_t c : counts) std::printf(" %zu", c);
  std::printf("\n");
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const auto pool = reachable_pool();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 worked-example orthogonality times", worked_example_times},
      {"2 speed-limit values", qsl_values},
      {"3 first-root bound", [&] { return first_root_bound(pool); }},
      {"4 real-root family", real_root_family},
      {"5 qubit characterization", qubit_characterization},
      {"6 concurrence extremes and two-route agreement", concurrence_extremes},
      {"7 survival probability details", survival_details},
      {"8 speed-limit inequality", [&] { return qsl_inequality(pool); }},
      {"9 scatter-study tendencies", scatter_tendencies},
      {"10 solver versus brute-force scan", oracle_equivalence},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s criterion %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.str().c_str());
    failures += !o.pass;
  }
  report_class_c_histogram();
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
