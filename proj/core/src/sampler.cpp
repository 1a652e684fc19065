#include "fqsl/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "fqsl/entanglement.hpp"
#include "fqsl/errors.hpp"
#include "fqsl/speed_limit.hpp"

namespace fqsl {

namespace {

constexpr double kConstructionCheck = 1e-9;

enum Stream : std::uint32_t { kFamilyI = 1, kFamilyII = 2, kFamilyIIYZero = 3, kPhases = 4 };

std::mt19937_64 chunk_generator(std::uint64_t seed, Stream stream, std::size_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(chunk),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(chunk) >> 32)};
  return std::mt19937_64(seq);
}

unsigned worker_count(unsigned requested, std::size_t chunks) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(chunks, 1)));
}

// Runs body(chunk) for every chunk index on a small pool; rethrows the first
// failure after all workers have joined.
void for_each_chunk(std::size_t chunks, unsigned threads, const std::function<void(std::size_t)>& body) {
  const unsigned workers = worker_count(threads, chunks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < chunks; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < chunks; i += workers) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::size_t chunk_count(std::size_t count) { return (count + kSampleChunk - 1) / kSampleChunk; }

std::size_t chunk_size(std::size_t count, std::size_t chunk) {
  return std::min(kSampleChunk, count - chunk * kSampleChunk);
}

template <class T>
std::vector<T> flatten(std::vector<std::vector<T>>&& parts) {
  std::vector<T> out;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  out.reserve(total);
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

ProbabilityDistribution draw_family_I(std::mt19937_64& rng) {
  const double p2 = 0.5 * unit_uniform(rng);
  std::array<double, 4> e{};
  double total = 0.0;
  for (double& ei : e) {
    ei = -std::log1p(-unit_uniform(rng));
    total += ei;
  }
  const double scale = 0.5 / total;
  return ProbabilityDistribution({e[0] * scale, p2, e[2] * scale, e[3] * scale, 0.5 - p2, e[1] * scale});
}

std::optional<ProbabilityDistribution> draw_family_II(std::mt19937_64& rng, bool force_y_zero) {
  double x = unit_uniform(rng);
  double u = unit_uniform(rng);
  if (x + u > 1.0) {
    x = 1.0 - x;
    u = 1.0 - u;
  }
  const Branch branch = unit_uniform(rng) < 0.5 ? Branch::Plus : Branch::Minus;
  const double y_draw = unit_uniform(rng);
  const double z_draw = unit_uniform(rng);
  if (x + u <= kZeroPopulation) return std::nullopt;

  const auto cos_phi = cos_branch(x, u, branch);
  if (!cos_phi) return std::nullopt;

  double y = 0.0;
  if (!force_y_zero) {
    double y_max = x;
    if (*cos_phi != 0.0) y_max = std::min(y_max, u / (2.0 * std::abs(*cos_phi)));
    y = y_max * (2.0 * y_draw - 1.0);
    if (std::abs(y) <= kZeroPopulation) return std::nullopt;
  }
  const double w = 1.0 - x - u;
  return family_II_distribution(x, u, branch, y, w * (2.0 * z_draw - 1.0));
}

}  // namespace

std::string_view to_string(SampleFamily family) {
  switch (family) {
    case SampleFamily::I:
      return "I";
    case SampleFamily::II:
      return "II";
    case SampleFamily::IIYZero:
      return "II_y0";
  }
  return "I";
}

std::optional<ClassSpec> preset_class(char name, std::size_t count, std::uint64_t seed) {
  ClassSpec spec;
  spec.sample_count = count;
  spec.seed = seed;
  switch (name) {
    case 'a':
      spec.family = SampleFamily::I;
      spec.phases = PhaseRule::constant(kPi, kPi);
      break;
    case 'b':
      spec.family = SampleFamily::I;
      spec.phases = PhaseRule::constant(0.0, kPi);
      break;
    case 'c':
      spec.family = SampleFamily::II;
      spec.phases = PhaseRule::constant(kPi, kPi);
      break;
    case 'd':
      spec.family = SampleFamily::IIYZero;
      spec.phases = PhaseRule::constant(kPi, 0.0);
      break;
    case 'r':
      spec.family = SampleFamily::II;
      spec.phases = PhaseRule::uniform();
      break;
    default:
      return std::nullopt;
  }
  return spec;
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<ProbabilityDistribution> sample_family_I(std::uint64_t seed, std::size_t count, unsigned threads) {
  const std::size_t chunks = chunk_count(count);
  std::vector<std::vector<ProbabilityDistribution>> parts(chunks);
  for_each_chunk(chunks, threads, [&](std::size_t chunk) {
    auto rng = chunk_generator(seed, kFamilyI, chunk);
    const std::size_t n = chunk_size(count, chunk);
    parts[chunk].reserve(n);
    for (std::size_t i = 0; i < n; ++i) parts[chunk].push_back(draw_family_I(rng));
  });
  return flatten(std::move(parts));
}

std::optional<ProbabilityDistribution> family_II_distribution(double x, double u, Branch branch, double y, double z) {
  if (x < 0.0 || u < 0.0 || x + u > 1.0 || x + u <= kZeroPopulation) return std::nullopt;
  const auto cos_phi = cos_branch(x, u, branch);
  if (!cos_phi) return std::nullopt;
  const double w = 1.0 - x - u;
  const double v = -2.0 * y * *cos_phi;
  if (std::abs(y) > x || std::abs(v) > u || std::abs(z) > w) return std::nullopt;
  if (std::abs(v + y) > 1.0 || std::abs(v - y) > 1.0) return std::nullopt;
  std::optional<ProbabilityDistribution> dist;
  try {
    dist.emplace(restore_distribution({.x = x, .y = y, .u = u, .v = v, .w = w, .z = z}));
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
  if (std::abs(state_overlap(*dist, std::acos(*cos_phi))) >= kConstructionCheck) return std::nullopt;
  return dist;
}

FamilyIIBatch sample_family_II_batch(std::uint64_t seed, std::size_t count, bool force_y_zero, unsigned threads) {
  const std::size_t chunks = chunk_count(count);
  std::vector<std::vector<ProbabilityDistribution>> parts(chunks);
  std::vector<std::uint64_t> attempts(chunks, 0);
  const Stream stream = force_y_zero ? kFamilyIIYZero : kFamilyII;
  for_each_chunk(chunks, threads, [&](std::size_t chunk) {
    auto rng = chunk_generator(seed, stream, chunk);
    const std::size_t n = chunk_size(count, chunk);
    parts[chunk].reserve(n);
    while (parts[chunk].size() < n) {
      std::uint64_t tries = 0;
      for (;;) {
        if (++tries > kMaxAttemptsPerSample) throw SolverFailure("sampling stalled");
        auto dist = draw_family_II(rng, force_y_zero);
        if (dist) {
          parts[chunk].push_back(std::move(*dist));
          break;
        }
      }
      attempts[chunk] += tries;
    }
  });
  FamilyIIBatch batch;
  for (auto a : attempts) batch.attempts += a;
  batch.samples = flatten(std::move(parts));
  return batch;
}

std::vector<ProbabilityDistribution> sample_family_II(std::uint64_t seed, std::size_t count, bool force_y_zero,
                                                      unsigned threads) {
  return sample_family_II_batch(seed, count, force_y_zero, threads).samples;
}

std::vector<ProbabilityDistribution> sample_family(SampleFamily family, std::uint64_t seed, std::size_t count,
                                                   unsigned threads) {
  switch (family) {
    case SampleFamily::I:
      return sample_family_I(seed, count, threads);
    case SampleFamily::II:
      return sample_family_II(seed, count, false, threads);
    case SampleFamily::IIYZero:
      return sample_family_II(seed, count, true, threads);
  }
  return {};
}

SampleRecord make_record(const ProbabilityDistribution& dist, PhasePair phases) {
  const OrthogonalityResult ortho = solve_orthogonality(dist);
  if (!ortho.reachable) throw SolverFailure("sampled distribution never reaches an orthogonal state");
  const SpeedLimitReport qsl = speed_limit(dist);
  const double phi_1 = *ortho.phi_1;
  return SampleRecord{
      .dist = dist,
      .phases = phases,
      .c_squared = concurrence_squared(dist, phases).c_squared,
      .phi_1 = phi_1,
      .tau_qsl = qsl.tau_qsl,
      .ratio = phi_1 / qsl.tau_qsl,
      .family = ortho.families.front(),
  };
}

std::vector<SampleRecord> run_scatter_study(const ClassSpec& spec) {
  if (spec.sample_count == 0) throw InvalidInput("sample_count must be at least 1");
  const auto dists = sample_family(spec.family, spec.seed, spec.sample_count, spec.threads);

  const std::size_t chunks = chunk_count(dists.size());
  std::vector<std::vector<SampleRecord>> parts(chunks);
  for_each_chunk(chunks, spec.threads, [&](std::size_t chunk) {
    auto rng = chunk_generator(spec.seed, kPhases, chunk);
    const std::size_t begin = chunk * kSampleChunk;
    const std::size_t n = chunk_size(dists.size(), chunk);
    parts[chunk].reserve(n);
    for (std::size_t i = begin; i < begin + n; ++i) {
      PhasePair phases = spec.phases.fixed;
      if (spec.phases.kind == PhaseRule::Kind::Uniform) {
        const double alpha = kTwoPi * unit_uniform(rng);
        const double beta = kTwoPi * unit_uniform(rng);
        phases = PhasePair(alpha, beta);
      }
      parts[chunk].push_back(make_record(dists[i], phases));
    }
  });
  return flatten(std::move(parts));
}

std::vector<std::vector<SampleRecord>> phase_sweep_study(SampleFamily family, std::span<const PhasePair> angles,
                                                         std::size_t count, std::uint64_t seed, unsigned threads) {
  if (count == 0) throw InvalidInput("sample count must be at least 1");
  const auto dists = sample_family(family, seed, count, threads);

  // Dynamics depend on the distribution only; evaluate them once.
  std::vector<SampleRecord> base(dists.size(), make_record(dists.front(), PhasePair()));
  const std::size_t chunks = chunk_count(dists.size());
  for_each_chunk(chunks, threads, [&](std::size_t chunk) {
    const std::size_t begin = chunk * kSampleChunk;
    for (std::size_t i = begin; i < begin + chunk_size(dists.size(), chunk); ++i) {
      base[i] = make_record(dists[i], PhasePair());
    }
  });

  std::vector<std::vector<SampleRecord>> blocks;
  blocks.reserve(angles.size());
  for (const PhasePair& phases : angles) {
    std::vector<SampleRecord> block = base;
    for (SampleRecord& r : block) {
      r.phases = phases;
      r.c_squared = concurrence_squared(r.dist, phases).c_squared;
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace fqsl
