#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "qstab/matrix.hpp"
#include "qstab/random.hpp"

using namespace qstab;

TEST_CASE("identical (master, stream) pairs replay identical sequences") {
  SeededRng a(123, 7);
  SeededRng b(123, 7);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  SeededRng c(123, 7);
  SeededRng d = derive_seed(123, 7);
  for (int i = 0; i < 100; ++i) CHECK(c.next_gaussian() == d.next_gaussian());
}

TEST_CASE("different streams diverge") {
  SeededRng a(123, 0);
  SeededRng b(123, 1);
  SeededRng c(124, 0);
  int same_ab = 0;
  int same_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t x = a.next_u64();
    same_ab += (x == b.next_u64());
    same_ac += (x == c.next_u64());
  }
  CHECK(same_ab == 0);
  CHECK(same_ac == 0);
}

TEST_CASE("mix64 avalanches") {
  CHECK(mix64(0) != 0);
  CHECK(mix64(1) != mix64(2));
  // Flipping one input bit flips roughly half the output bits.
  const std::uint64_t d = mix64(0x12345678) ^ mix64(0x12345679);
  int bits = 0;
  for (int i = 0; i < 64; ++i) bits += (d >> i) & 1;
  CHECK(bits > 16);
  CHECK(bits < 48);
}

TEST_CASE("uniforms live in [0,1)") {
  SeededRng rng(9, 0);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("gaussian moments") {
  SeededRng rng(31337, 0);
  const int n = 20000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.next_gaussian();
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.03);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("GUE samples are exactly Hermitian and essentially traceless") {
  SeededRng rng(5, 0);
  const HermitianPerturbation v = sample_gue(32, rng);
  CHECK(hermiticity_defect(v.matrix) == 0.0);
  // tr V is a sum of 32 N(0, 1/32) variables, i.e. N(0,1): a few sigma.
  CHECK(std::abs(trace(v.matrix)) < 5.0);
}

TEST_CASE("GUE entry second moments match 1/N") {
  const std::size_t n_dim = 32;
  const int samples = 1000;
  SeededRng rng(5, 1);
  double diag2 = 0.0, off2 = 0.0, off_re2 = 0.0, off_im2 = 0.0;
  double tr_sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    const HermitianPerturbation v = sample_gue(n_dim, rng);
    diag2 += std::norm(v.matrix(3, 3));
    off2 += std::norm(v.matrix(2, 9));
    off_re2 += v.matrix(4, 17).real() * v.matrix(4, 17).real();
    off_im2 += v.matrix(4, 17).imag() * v.matrix(4, 17).imag();
    tr_sum += trace(v.matrix).real();
  }
  const double inv_n = 1.0 / static_cast<double>(n_dim);
  CHECK(diag2 / samples == doctest::Approx(inv_n).epsilon(0.15));
  CHECK(off2 / samples == doctest::Approx(inv_n).epsilon(0.15));
  CHECK(off_re2 / samples == doctest::Approx(0.5 * inv_n).epsilon(0.2));
  CHECK(off_im2 / samples == doctest::Approx(0.5 * inv_n).epsilon(0.2));
  // tr V ~ N(0,1), so the sample mean ~ N(0, 1/samples).
  CHECK(std::abs(tr_sum / samples) < 0.15);
}

TEST_CASE("tr(V^2)/N concentrates on 1") {
  const std::size_t n_dim = 64;
  const int samples = 200;
  SeededRng rng(5, 2);
  double acc = 0.0;
  for (int s = 0; s < samples; ++s) {
    const HermitianPerturbation v = sample_gue(n_dim, rng);
    acc += trace_inner(v.matrix, v.matrix).real() / static_cast<double>(n_dim);
  }
  CHECK(acc / samples == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("normalize_trace pins tr(V^2)/N exactly") {
  SeededRng rng(5, 3);
  const HermitianPerturbation v = sample_gue(16, rng, true);
  const double t2 = trace_inner(v.matrix, v.matrix).real() / 16.0;
  CHECK(t2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random register states are unit norm and deterministic") {
  SeededRng rng(77, 0);
  const StateVector s = random_register_state(64, rng);
  CHECK(s.dim() == 64);
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));

  SeededRng rng2(77, 0);
  const StateVector s2 = random_register_state(64, rng2);
  for (std::size_t i = 0; i < s.dim(); ++i) CHECK(s.amplitudes[i] == s2.amplitudes[i]);
}

TEST_CASE("register state amplitudes spread over the whole register") {
  SeededRng rng(78, 0);
  const StateVector s = random_register_state(256, rng);
  double max_p = 0.0;
  for (const cdouble& a : s.amplitudes) max_p = std::max(max_p, std::norm(a));
  // Gaussian amplitudes: the largest probability should be far below 1.
  CHECK(max_p < 0.2);
}

TEST_CASE("expectation over random states estimates the normalized trace") {
  // E[<psi|M|psi>] = tr(M)/N for unit-norm isotropic states.
  const std::size_t n_dim = 16;
  std::vector<double> diag(n_dim);
  for (std::size_t i = 0; i < n_dim; ++i) diag[i] = static_cast<double>(i + 1) / n_dim;
  const double want = (n_dim + 1) / (2.0 * n_dim);  // tr(M)/N

  SeededRng rng(79, 0);
  double sum = 0.0;
  const int samples = 500;
  for (int s = 0; s < samples; ++s) {
    const StateVector psi = random_register_state(n_dim, rng);
    double val = 0.0;
    for (std::size_t i = 0; i < n_dim; ++i) val += diag[i] * std::norm(psi.amplitudes[i]);
    sum += val;
  }
  CHECK(std::abs(sum / samples - want) < 0.05);
}
