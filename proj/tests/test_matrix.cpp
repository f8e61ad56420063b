#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qstab/matrix.hpp"
#include "qstab/random.hpp"

using namespace qstab;
using qstab::testing::naive_adjoint;
using qstab::testing::naive_matmul;
using qstab::testing::naive_trace;

namespace {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, SeededRng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i)
    m.data()[i] = cdouble(rng.next_gaussian(), rng.next_gaussian());
  return m;
}

}  // namespace

TEST_CASE("matmul agrees with the triple-loop oracle") {
  SeededRng rng(42, 0);
  for (auto [r, k, c] : {std::tuple{3u, 5u, 2u}, {8u, 8u, 8u}, {1u, 7u, 4u}, {16u, 3u, 16u}}) {
    const ComplexMatrix a = random_matrix(r, k, rng);
    const ComplexMatrix b = random_matrix(k, c, rng);
    CHECK(max_abs_diff(matmul(a, b), naive_matmul(a, b)) < 1e-12);
  }
}

TEST_CASE("matmul rejects mismatched shapes") {
  SeededRng rng(42, 1);
  const ComplexMatrix a = random_matrix(3, 4, rng);
  const ComplexMatrix b = random_matrix(5, 3, rng);
  CHECK_THROWS_AS((void)matmul(a, b), std::invalid_argument);
}

TEST_CASE("identity is neutral") {
  SeededRng rng(42, 2);
  const ComplexMatrix a = random_matrix(6, 6, rng);
  CHECK(max_abs_diff(matmul(ComplexMatrix::identity(6), a), a) == 0.0);
  CHECK(max_abs_diff(matmul(a, ComplexMatrix::identity(6)), a) == 0.0);
}

TEST_CASE("adjoint is an involution and reverses products") {
  SeededRng rng(42, 3);
  const ComplexMatrix a = random_matrix(4, 6, rng);
  const ComplexMatrix b = random_matrix(6, 5, rng);
  CHECK(max_abs_diff(adjoint(adjoint(a)), a) == 0.0);
  CHECK(max_abs_diff(adjoint(a), naive_adjoint(a)) == 0.0);
  CHECK(max_abs_diff(adjoint(matmul(a, b)), matmul(adjoint(b), adjoint(a))) < 1e-12);
}

TEST_CASE("matmul is associative") {
  SeededRng rng(42, 8);
  const ComplexMatrix a = random_matrix(8, 8, rng);
  const ComplexMatrix b = random_matrix(8, 8, rng);
  const ComplexMatrix c = random_matrix(8, 8, rng);
  CHECK(max_abs_diff(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) < 1e-12);
}

TEST_CASE("trace is cyclic") {
  SeededRng rng(42, 4);
  const ComplexMatrix a = random_matrix(7, 7, rng);
  const ComplexMatrix b = random_matrix(7, 7, rng);
  CHECK(trace(a) == naive_trace(a));
  CHECK(std::abs(trace(matmul(a, b)) - trace(matmul(b, a))) < 1e-12);
}

TEST_CASE("trace_inner equals tr(a^dag b)") {
  SeededRng rng(42, 5);
  const ComplexMatrix a = random_matrix(9, 9, rng);
  const ComplexMatrix b = random_matrix(9, 9, rng);
  const cdouble direct = naive_trace(naive_matmul(naive_adjoint(a), b));
  CHECK(std::abs(trace_inner(a, b) - direct) < 1e-12);
  // Conjugate symmetry of the inner product.
  CHECK(std::abs(trace_inner(a, b) - std::conj(trace_inner(b, a))) < 1e-12);
  // tr(a^dag a) is the squared Frobenius norm, real and non-negative.
  const cdouble self = trace_inner(a, a);
  CHECK(self.real() > 0.0);
  CHECK(std::abs(self.imag()) < 1e-12);
}

TEST_CASE("matvec matches the explicit sum") {
  SeededRng rng(42, 6);
  const ComplexMatrix a = random_matrix(5, 3, rng);
  std::vector<cdouble> x(3);
  for (auto& v : x) v = cdouble(rng.next_gaussian(), rng.next_gaussian());
  const std::vector<cdouble> y = matvec(a, x);
  REQUIRE(y.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    cdouble want = 0.0;
    for (std::size_t j = 0; j < 3; ++j) want += a(i, j) * x[j];
    CHECK(std::abs(y[i] - want) < 1e-13);
  }
}

TEST_CASE("defect measures") {
  CHECK(unitarity_defect(ComplexMatrix::identity(8)) == 0.0);
  SeededRng rng(42, 7);
  ComplexMatrix h = random_matrix(6, 6, rng);
  // Symmetrize: (h + h^dag)/2 is Hermitian by construction.
  const ComplexMatrix ha = adjoint(h);
  for (std::size_t i = 0; i < h.size(); ++i)
    h.data()[i] = 0.5 * (h.data()[i] + ha.data()[i]);
  CHECK(hermiticity_defect(h) < 1e-15);
  h(0, 1) += cdouble(0.0, 0.5);
  CHECK(hermiticity_defect(h) > 0.4);
}

TEST_CASE("all_finite flags injected non-finite entries") {
  ComplexMatrix m = ComplexMatrix::identity(3);
  CHECK(m.all_finite());
  m(1, 2) = cdouble(std::nan(""), 0.0);
  CHECK(!m.all_finite());
}

TEST_CASE("state vector norm") {
  StateVector s{{cdouble(0.6, 0.0), cdouble(0.0, 0.8)}};
  CHECK(s.dim() == 2);
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
}
