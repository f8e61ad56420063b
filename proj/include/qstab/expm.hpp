#pragma once

#include <vector>

#include "qstab/matrix.hpp"
#include "qstab/random.hpp"

namespace qstab {

/// Eigendecomposition of a Hermitian matrix: columns of `vectors` are the
/// eigenvectors, `values` ascending.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// LAPACK zheevd. Throws std::invalid_argument if the input is not Hermitian
/// (max entry defect above 1e-10) and std::runtime_error if LAPACK fails.
HermitianEigen eigh(const ComplexMatrix& hermitian);

/// exp(-i delta V) for Hermitian V, via eigendecomposition:
/// Q exp(-i delta Lambda) Q^dag. Unitary to ~1e-14.
ComplexMatrix expm_phase(const ComplexMatrix& v, double delta);

inline ComplexMatrix expm_phase(const HermitianPerturbation& v, double delta) {
  return expm_phase(v.matrix, delta);
}

/// Same exponential from a precomputed eigendecomposition; used when one V
/// is exponentiated at several strengths.
ComplexMatrix expm_phase(const HermitianEigen& eig, double delta);

}  // namespace qstab
