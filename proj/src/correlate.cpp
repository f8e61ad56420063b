#include "qstab/correlate.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qstab {

CorrelatorMatrix correlator_gue(const PartialTraceTable& table, const Circuit& c) {
  const int T = table.gate_count();
  const double dim = static_cast<double>(table.dim());
  CorrelatorMatrix m{T, c.n, c.label, CorrelatorKind::GueAveraged,
                     std::vector<double>(std::size_t(T) * T)};
  for (int t = 1; t <= T; ++t) {
    m.at(t, t) = 1.0;
    for (int tp = 1; tp < t; ++tp) {
      const double v = std::norm(table.at(t, tp) / dim);
      m.at(t, tp) = v;
      m.at(tp, t) = v;
    }
  }
  return m;
}

CorrelatorMatrix correlator_gue(const Circuit& c, int threads) {
  return correlator_gue(partial_trace_table(c, threads), c);
}

CorrelatorMatrix correlator_fixed(const Circuit& c, const HermitianPerturbation& v) {
  const std::size_t dim = c.dim();
  if (v.matrix.rows() != dim || v.matrix.cols() != dim)
    throw std::invalid_argument("correlator_fixed: V dimension does not match circuit");
  if (hermiticity_defect(v.matrix) > 1e-10)
    throw std::invalid_argument("correlator_fixed: V is not Hermitian within tolerance");
  const int T = c.gate_count();
  const double inv_dim = 1.0 / static_cast<double>(dim);

  // Heisenberg conjugations V(t,0) = W^dag(t) V W(t), W(t) = U(t,0).
  std::vector<ComplexMatrix> heis;
  heis.reserve(T + 1);
  heis.push_back(v.matrix);
  ComplexMatrix w = ComplexMatrix::identity(dim);
  for (int t = 1; t <= T; ++t) {
    apply_gate_in_place(c.gates[t - 1], c.n, w.data(), w.cols());
    heis.push_back(matmul(adjoint(w), matmul(v.matrix, w)));
  }

  CorrelatorMatrix m{T, c.n, c.label, CorrelatorKind::FixedV,
                     std::vector<double>(std::size_t(T) * T)};
  for (int t = 1; t <= T; ++t) {
    for (int tp = 1; tp <= t; ++tp) {
      // tr(V(t',0) V(t,0)) / N, real since both factors are Hermitian.
      const double value = trace_inner(heis[tp], heis[t]).real() * inv_dim;
      m.at(t, tp) = value;
      m.at(tp, t) = value;
    }
  }
  return m;
}

ChiSummary chi_sum(const CorrelatorMatrix& m) {
  double total = 0.0;
  for (double v : m.values) total += v;
  return {m.algorithm, m.n, m.T, 0.5 * total};
}

double fidelity_model(double chi, double delta) {
  if (chi < 0.0) throw std::invalid_argument("fidelity_model: chi must be >= 0");
  return std::exp(-chi * delta * delta);
}

double ScalingFit::evaluate(double n) const {
  double y = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    y += coefficients[i] * std::pow(n, basis[i]);
  return y;
}

ScalingFit fit_scaling(const std::vector<std::pair<int, double>>& points,
                       const std::vector<int>& basis) {
  if (basis.empty()) throw std::invalid_argument("fit_scaling: empty basis");
  if (std::set<int>(basis.begin(), basis.end()).size() != basis.size())
    throw std::invalid_argument("fit_scaling: duplicate basis exponent");
  for (int e : basis)
    if (e < 1) throw std::invalid_argument("fit_scaling: exponents must be >= 1 (chi(0) = 0)");
  const int rows = static_cast<int>(points.size());
  const int cols = static_cast<int>(basis.size());
  if (rows < cols) throw std::invalid_argument("fit_scaling: fewer points than basis terms");

  std::vector<double> design(std::size_t(rows) * cols);
  std::vector<double> rhs(std::max(rows, cols));
  for (int i = 0; i < rows; ++i) {
    for (int b = 0; b < cols; ++b)
      design[std::size_t(i) * cols + b] = std::pow(points[i].first, basis[b]);
    rhs[i] = points[i].second;
  }

  const std::vector<double> design_copy = design;
  std::vector<double> singular(cols);
  lapack_int rank = 0;
  const int info = LAPACKE_dgelsd(LAPACK_ROW_MAJOR, rows, cols, 1, design.data(), cols,
                                  rhs.data(), 1, singular.data(), -1.0, &rank);
  if (info != 0) throw std::runtime_error("fit_scaling: dgelsd failed");
  if (rank < cols) throw std::runtime_error("fit_scaling: degenerate fit (rank-deficient basis)");

  ScalingFit fit;
  fit.basis = basis;
  fit.coefficients.assign(rhs.begin(), rhs.begin() + cols);
  double ss = 0.0;
  for (int i = 0; i < rows; ++i) {
    double pred = 0.0;
    for (int b = 0; b < cols; ++b) pred += design_copy[std::size_t(i) * cols + b] * fit.coefficients[b];
    const double r = points[i].second - pred;
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / rows);
  return fit;
}

}  // namespace qstab
