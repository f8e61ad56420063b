#include "qstab/matrix.hpp"

#include <cblas.h>

#include <cmath>
#include <stdexcept>

namespace qstab {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  const cdouble one{1.0, 0.0}, zero{0.0, 0.0};
  cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(a.rows()),
              static_cast<int>(b.cols()), static_cast<int>(a.cols()), &one, a.data(),
              static_cast<int>(a.cols()), b.data(), static_cast<int>(b.cols()), &zero, c.data(),
              static_cast<int>(c.cols()));
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

cdouble trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("trace: matrix not square");
  cdouble t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

cdouble trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || !a.is_square())
    throw std::invalid_argument("trace_inner: need equal square dimensions");
  cdouble s{0.0, 0.0};
  cblas_zdotc_sub(static_cast<int>(a.size()), a.data(), 1, b.data(), 1, &s);
  return s;
}

std::vector<cdouble> matvec(const ComplexMatrix& a, const std::vector<cdouble>& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<cdouble> y(a.rows());
  const cdouble one{1.0, 0.0}, zero{0.0, 0.0};
  cblas_zgemv(CblasRowMajor, CblasNoTrans, static_cast<int>(a.rows()),
              static_cast<int>(a.cols()), &one, a.data(), static_cast<int>(a.cols()), x.data(), 1,
              &zero, y.data(), 1);
  return y;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i]));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shapes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double unitarity_defect(const ComplexMatrix& a) {
  ComplexMatrix p = matmul(adjoint(a), a);
  for (std::size_t i = 0; i < p.rows(); ++i) p(i, i) -= 1.0;
  return max_abs(p);
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("hermiticity_defect: matrix not square");
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = r; c < a.cols(); ++c)
      m = std::max(m, std::abs(a(r, c) - std::conj(a(c, r))));
  return m;
}

}  // namespace qstab
