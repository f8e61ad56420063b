#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "qstab/matrix.hpp"

namespace qstab {

/// splitmix64 finalizer; full-avalanche 64-bit mixing.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic, portable random stream. A stream is identified by
/// (master_seed, stream_id); the engine seed is a fixed avalanche mix of the
/// pair, so distinct streams are statistically independent and the draw
/// sequence for a given pair is identical on every platform (mt19937_64 is
/// fully specified by the standard; gaussians use plain Box-Muller on
/// 53-bit uniforms).
class SeededRng {
 public:
  SeededRng(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double();

  /// Standard normal via Box-Muller (second value cached).
  double next_gaussian();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_ = false;
};

/// Stream k of a master seed.
SeededRng derive_seed(std::uint64_t master_seed, std::uint64_t stream_id);

/// Streams consumed per ensemble realization: stream 2r draws the
/// perturbation, stream 2r+1 the trace-estimation states, so parallel
/// execution can never reorder draws.
inline constexpr std::uint64_t kStreamsPerRealization = 2;
inline constexpr std::uint64_t kPerturbationStream = 0;
inline constexpr std::uint64_t kTraceStateStream = 1;

/// Hermitian perturbation operator V.
struct HermitianPerturbation {
  ComplexMatrix matrix;
  std::string label;
};

/// GUE sample with second moments <V_jk V_lm> = delta_jm delta_kl / N:
/// real diagonal with variance 1/N, off-diagonal real and imaginary parts
/// each with variance 1/(2N), V_kj = conj(V_jk).
///
/// With normalize_trace, the sample is rescaled so tr(V^2)/N = 1 exactly;
/// default off, since the GUE-averaged correlator assumes the raw ensemble
/// (the difference is O(1/N)).
HermitianPerturbation sample_gue(std::size_t n_dim, SeededRng& rng, bool normalize_trace = false);

/// Gaussian random register state: each amplitude a standard complex
/// gaussian, then the vector normalized to unit norm.
StateVector random_register_state(std::size_t n_dim, SeededRng& rng);

}  // namespace qstab
