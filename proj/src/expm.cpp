#include "qstab/expm.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace qstab {

HermitianEigen eigh(const ComplexMatrix& hermitian) {
  if (!hermitian.is_square()) throw std::invalid_argument("eigh: matrix not square");
  if (hermiticity_defect(hermitian) > 1e-10)
    throw std::invalid_argument("eigh: matrix is not Hermitian within tolerance");
  const int n = static_cast<int>(hermitian.rows());
  HermitianEigen out;
  out.vectors = hermitian;
  out.values.resize(n);
  const int info =
      LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', n,
                     reinterpret_cast<lapack_complex_double*>(out.vectors.data()), n,
                     out.values.data());
  if (info != 0) throw std::runtime_error("eigh: zheevd failed, info=" + std::to_string(info));
  return out;
}

ComplexMatrix expm_phase(const HermitianEigen& eig, double delta) {
  const std::size_t n = eig.vectors.rows();
  // Q diag(e^{-i delta lambda}) Q^dag: scale columns of Q, multiply by Q^H.
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t c = 0; c < n; ++c) {
    const double phase = -delta * eig.values[c];
    const cdouble f{std::cos(phase), std::sin(phase)};
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= f;
  }
  return matmul(scaled, adjoint(eig.vectors));
}

ComplexMatrix expm_phase(const ComplexMatrix& v, double delta) {
  if (!std::isfinite(delta)) throw std::invalid_argument("expm_phase: delta not finite");
  return expm_phase(eigh(v), delta);
}

}  // namespace qstab
