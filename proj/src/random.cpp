#include "qstab/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qstab {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      engine_(mix64(mix64(master_seed) ^ mix64(stream_id * 0xD6E8FEB86659FD93ULL + 1))) {}

double SeededRng::next_double() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::next_gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_gaussian_;
  }
  // u1 in (0,1] so the log is finite.
  const double u1 = 1.0 - next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  cached_gaussian_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

SeededRng derive_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
  return SeededRng(master_seed, stream_id);
}

HermitianPerturbation sample_gue(std::size_t n_dim, SeededRng& rng, bool normalize_trace) {
  if (n_dim < 2) throw std::invalid_argument("sample_gue: dimension must be >= 2");
  const double n = static_cast<double>(n_dim);
  const double diag_sigma = std::sqrt(1.0 / n);
  const double off_sigma = std::sqrt(1.0 / (2.0 * n));
  ComplexMatrix v(n_dim, n_dim);
  for (std::size_t j = 0; j < n_dim; ++j) {
    v(j, j) = diag_sigma * rng.next_gaussian();
    for (std::size_t k = j + 1; k < n_dim; ++k) {
      const cdouble z{off_sigma * rng.next_gaussian(), off_sigma * rng.next_gaussian()};
      v(j, k) = z;
      v(k, j) = std::conj(z);
    }
  }
  if (normalize_trace) {
    double t2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) t2 += std::norm(v.data()[i]);
    const double scale = 1.0 / std::sqrt(t2 / n);
    for (std::size_t i = 0; i < v.size(); ++i) v.data()[i] *= scale;
  }
  return {std::move(v), "gue"};
}

StateVector random_register_state(std::size_t n_dim, SeededRng& rng) {
  if (n_dim < 2) throw std::invalid_argument("random_register_state: dimension must be >= 2");
  StateVector psi;
  psi.amplitudes.resize(n_dim);
  double norm2 = 0.0;
  for (auto& a : psi.amplitudes) {
    a = cdouble{rng.next_gaussian(), rng.next_gaussian()};
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : psi.amplitudes) a *= inv;
  return psi;
}

}  // namespace qstab
