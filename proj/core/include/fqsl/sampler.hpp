#pragma once

// Monte Carlo study of entanglement versus relative orthogonality time.
//
// Distributions are drawn from flat measures on the constraint sets that
// guarantee orthogonality:
//   family I   : u = 1/2; (p2, p5) uniform on p2 + p5 = 1/2 and
//                (p1, p6, p3, p4) flat-Dirichlet with total mass 1/2.
//   family II  : (x, u) uniform on the triangle, a branch of the real part
//                picked at random, y uniform on its feasible range
//                (y != 0) and v = -2y cos(phi); z uniform on [-w, w].
//   family II, y = 0: as above with y = v = 0.
//
// Work is split into fixed-size chunks, each with its own generator seeded
// from (seed, stream, chunk index). Output order is chunk-major, so results
// do not depend on the number of worker threads.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "fqsl/orthogonality.hpp"
#include "fqsl/state.hpp"

namespace fqsl {

inline constexpr std::size_t kSampleChunk = 256;
inline constexpr std::uint64_t kMaxAttemptsPerSample = 1'000'000;

enum class SampleFamily { I, II, IIYZero };

std::string_view to_string(SampleFamily family);

/// Phases assigned to each sampled distribution: one fixed pair, or an
/// independent uniform draw on [0, 2pi)^2 per sample.
struct PhaseRule {
  enum class Kind { Fixed, Uniform };

  Kind kind = Kind::Fixed;
  PhasePair fixed;

  static PhaseRule constant(double alpha, double beta) { return {Kind::Fixed, PhasePair(alpha, beta)}; }
  static PhaseRule uniform() { return {Kind::Uniform, PhasePair()}; }
};

struct ClassSpec {
  SampleFamily family = SampleFamily::I;
  PhaseRule phases;
  std::size_t sample_count = 10'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// Named classes: 'a' family I, alpha = beta = pi; 'b' family I, alpha = 0,
/// beta = pi; 'c' family II (y != 0), alpha = beta = pi; 'd' family II with
/// y = 0, alpha = pi, beta = 0; 'r' family II (y != 0) with uniform random
/// phases. Returns nullopt for other names.
std::optional<ClassSpec> preset_class(char name, std::size_t count, std::uint64_t seed);

struct SampleRecord {
  ProbabilityDistribution dist;
  PhasePair phases;
  double c_squared;
  double phi_1;
  double tau_qsl;
  double ratio;  ///< phi_1 / tau_qsl
  Family family;
};

/// Draw from [0, 1) using the top 53 bits of one generator output.
double unit_uniform(std::mt19937_64& rng);

std::vector<ProbabilityDistribution> sample_family_I(std::uint64_t seed, std::size_t count, unsigned threads = 0);

struct FamilyIIBatch {
  std::vector<ProbabilityDistribution> samples;
  std::uint64_t attempts = 0;

  double acceptance_rate() const {
    return attempts == 0 ? 0.0 : static_cast<double>(samples.size()) / static_cast<double>(attempts);
  }
};

/// Throws SolverFailure ("sampling stalled") if one sample needs more than
/// kMaxAttemptsPerSample draws.
FamilyIIBatch sample_family_II_batch(std::uint64_t seed, std::size_t count, bool force_y_zero, unsigned threads = 0);

std::vector<ProbabilityDistribution> sample_family_II(std::uint64_t seed, std::size_t count, bool force_y_zero,
                                                      unsigned threads = 0);

/// One family-II distribution from its coordinates: v = -2 y cos(phi) with
/// cos(phi) taken from `branch` at (x, u), p1..p6 restored with the given y
/// and z. Returns nullopt when the point is not admissible.
std::optional<ProbabilityDistribution> family_II_distribution(double x, double u, Branch branch, double y, double z);

std::vector<ProbabilityDistribution> sample_family(SampleFamily family, std::uint64_t seed, std::size_t count,
                                                   unsigned threads = 0);

/// Evaluate one sampled distribution. Throws SolverFailure if it never
/// reaches an orthogonal state.
SampleRecord make_record(const ProbabilityDistribution& dist, PhasePair phases);

std::vector<SampleRecord> run_scatter_study(const ClassSpec& spec);

/// One block of records per angle pair, all built on the same distributions.
std::vector<std::vector<SampleRecord>> phase_sweep_study(SampleFamily family, std::span<const PhasePair> angles,
                                                         std::size_t count, std::uint64_t seed, unsigned threads = 0);

}  // namespace fqsl
