#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qstab {

using cdouble = std::complex<double>;

/// Dense complex matrix, row-major. Carrier for unitaries, Hermitian
/// perturbations and partial evolution products.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cdouble& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  cdouble* data() { return data_.data(); }
  const cdouble* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  cdouble* row(std::size_t r) { return data_.data() + r * cols_; }
  const cdouble* row(std::size_t r) const { return data_.data() + r * cols_; }

  bool all_finite() const;

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> data_;
};

/// Normalized register state, length N = 2^n.
struct StateVector {
  std::vector<cdouble> amplitudes;

  std::size_t dim() const { return amplitudes.size(); }
  double norm() const;
};

/// a * b via BLAS zgemm. Throws std::invalid_argument on dimension mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

cdouble trace(const ComplexMatrix& a);

/// tr(a^dag b) = sum_jk conj(a_jk) b_jk, computed entrywise in O(N^2)
/// without forming the product.
cdouble trace_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix-vector product a * x.
std::vector<cdouble> matvec(const ComplexMatrix& a, const std::vector<cdouble>& x);

double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max-entry norm of a^dag a - I; ~0 for unitary a.
double unitarity_defect(const ComplexMatrix& a);

/// max-entry norm of a - a^dag; ~0 for Hermitian a.
double hermiticity_defect(const ComplexMatrix& a);

}  // namespace qstab
