#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qstab/circuit.hpp"
#include "qstab/random.hpp"

namespace qstab {

enum class CorrelatorKind { GueAveraged, FixedV };

/// Two-point time correlator C(t,t') of the perturbation along the
/// algorithm, t, t' in 1..T. Symmetric; for the GUE average the diagonal is
/// exactly 1 and every entry lies in [0,1].
struct CorrelatorMatrix {
  int T = 0;
  int n = 0;
  std::string algorithm;
  CorrelatorKind kind = CorrelatorKind::GueAveraged;
  std::vector<double> values;  // T x T, row-major

  double at(int t, int t_prime) const { return values[std::size_t(t - 1) * T + (t_prime - 1)]; }
  double& at(int t, int t_prime) { return values[std::size_t(t - 1) * T + (t_prime - 1)]; }
};

/// GUE-averaged correlator <C(t,t')> = |tr U(t,t') / N|^2, evaluated
/// deterministically from the partial trace table (no sampling).
CorrelatorMatrix correlator_gue(const Circuit& c, int threads = 1);

/// Same, from a precomputed table.
CorrelatorMatrix correlator_gue(const PartialTraceTable& table, const Circuit& c);

/// Correlator of one fixed Hermitian V:
/// C(t,t') = tr(V U^dag(t,t') V U(t,t')) / N, real by Hermiticity; the
/// diagonal equals tr(V^2)/N. Caches the Heisenberg conjugations
/// V(t,0) = W^dag(t) V W(t), so the cost is O(T N^3 + T^2 N^2).
CorrelatorMatrix correlator_fixed(const Circuit& c, const HermitianPerturbation& v);

/// chi and its provenance.
struct ChiSummary {
  std::string algorithm;
  int n = 0;
  int T = 0;
  double chi = 0.0;
};

/// chi = (1/2) sum over all t,t' in 1..T of C(t,t'), diagonal included.
ChiSummary chi_sum(const CorrelatorMatrix& m);

/// exp(-chi delta^2), the fidelity model.
double fidelity_model(double chi, double delta);

/// Least-squares polynomial fit of chi(n) over a monomial basis without
/// constant term.
struct ScalingFit {
  std::vector<int> basis;          // exponents, e.g. {3,2,1}
  std::vector<double> coefficients;
  double residual_rms = 0.0;

  double evaluate(double n) const;
};

/// SVD least squares (LAPACK dgelsd). Throws std::invalid_argument for an
/// empty/duplicated basis or fewer points than basis terms, and a
/// degenerate-fit std::runtime_error when the design matrix is
/// rank-deficient.
ScalingFit fit_scaling(const std::vector<std::pair<int, double>>& points,
                       const std::vector<int>& basis);

}  // namespace qstab
