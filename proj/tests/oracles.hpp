#pragma once

// Deliberately naive reference implementations for the test suite. They
// share no code with the library paths they check: plain triple loops and
// Taylor series, small sizes only.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qstab/circuit.hpp"
#include "qstab/gates.hpp"
#include "qstab/matrix.hpp"

namespace qstab::testing {

inline ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("naive_matmul: shape mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

inline ComplexMatrix naive_adjoint(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

inline cdouble naive_trace(const ComplexMatrix& a) {
  cdouble t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

/// exp(-i delta V) by scaling-and-squaring of the plain Taylor series.
/// Independent of the eigendecomposition route.
inline ComplexMatrix naive_expm(const ComplexMatrix& v, double delta) {
  const std::size_t n = v.rows();
  double norm1 = 0.0;  // max column sum
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(v(i, j));
    norm1 = std::max(norm1, s);
  }
  int squarings = 0;
  double scale = std::abs(delta) * norm1;
  while (scale > 0.25) {
    scale /= 2.0;
    ++squarings;
  }
  const cdouble factor = cdouble(0.0, -delta / std::ldexp(1.0, squarings));
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = factor * v(i, j);

  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 24; ++k) {
    term = naive_matmul(term, a);
    for (std::size_t i = 0; i < term.size(); ++i)
      term.data()[i] /= static_cast<double>(k);
    for (std::size_t i = 0; i < sum.size(); ++i) sum.data()[i] += term.data()[i];
  }
  for (int s = 0; s < squarings; ++s) sum = naive_matmul(sum, sum);
  return sum;
}

/// Cumulative circuit products U(t, 0) for t = 0..T from embedded gate
/// matrices and the naive product; index t of the result is U(t,0).
inline std::vector<ComplexMatrix> naive_prefix_products(const Circuit& c) {
  std::vector<ComplexMatrix> w;
  w.reserve(c.gates.size() + 1);
  w.push_back(ComplexMatrix::identity(c.dim()));
  for (const Gate& g : c.gates) w.push_back(naive_matmul(embed_gate(g, c.n), w.back()));
  return w;
}

/// C(t,t') = tr(V U(t,t')^dag V U(t,t')) / N with U(t,t') formed explicitly
/// as W(t) W(t')^dag. Small n only.
inline double naive_fixed_correlator(const Circuit& c, const ComplexMatrix& v, int t,
                                     int t_prime) {
  const std::vector<ComplexMatrix> w = naive_prefix_products(c);
  const ComplexMatrix u = naive_matmul(w[static_cast<std::size_t>(t)],
                                       naive_adjoint(w[static_cast<std::size_t>(t_prime)]));
  const ComplexMatrix conj_v = naive_matmul(naive_adjoint(u), naive_matmul(v, u));
  return (naive_trace(naive_matmul(v, conj_v)) / static_cast<double>(c.dim())).real();
}

}  // namespace qstab::testing
