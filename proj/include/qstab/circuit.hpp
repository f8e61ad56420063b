#pragma once

#include <string>
#include <vector>

#include "qstab/gates.hpp"
#include "qstab/matrix.hpp"

namespace qstab {

/// Time-ordered gate sequence; gates[0] is the first gate applied.
struct Circuit {
  int n = 0;
  std::vector<Gate> gates;
  std::string label;

  int gate_count() const { return static_cast<int>(gates.size()); }
  std::size_t dim() const { return std::size_t{1} << n; }
};

/// Quantum Fourier transform as a gate sequence, T = n(n+2)/2 gates
/// (rounded down). Execution order: A_{n-1}; then for j = n-2 down to 0 the
/// block B_{j,n-1} ... B_{j,j+1} followed by A_j; finally the transposition
/// layer T_{j,n-1-j} for j = floor(n/2)-1 down to 0. Under the bit
/// convention of apply_gate this reproduces dft_matrix(n) exactly.
Circuit build_qft(int n);

/// Improved QFT, T = n(2n+1)/2 gates (rounded down): each B block is
/// replaced by the G gates in the same order followed by the R gates in the
/// same order (G_{j,n-1} ... G_{j,j+1} R_{j,n-1} ... R_{j,j+1}), which
/// preserves the block unitary while suppressing the time correlations of a
/// static perturbation. Single-gate blocks are replaced too.
Circuit build_iqft(int n);

/// Ordered product of the embedded gates, earliest gate rightmost.
ComplexMatrix circuit_unitary(const Circuit& c);

/// Traces of all partial evolution operators U(t,t') = U(t)...U(t'+1),
/// 0 <= t' <= t <= T, with U(t,t) = 1 (trace exactly N).
class PartialTraceTable {
 public:
  PartialTraceTable(int gate_count, std::size_t dim);

  int gate_count() const { return T_; }
  std::size_t dim() const { return dim_; }

  cdouble at(int t, int t_prime) const;
  cdouble& at(int t, int t_prime);

 private:
  int T_;
  std::size_t dim_;
  std::vector<cdouble> values_;  // packed lower triangle, row t
};

/// Computes every tr U(t,t') by accumulating, for each t', the running
/// products U(t'+1), U(t'+2)U(t'+1), ... with the O(N) per-column gate
/// kernel. Rows t' are independent; `threads` > 1 splits them across
/// workers with a result identical to the sequential one.
PartialTraceTable partial_trace_table(const Circuit& c, int threads = 1);

/// Discrete Fourier transform matrix, entry (k,j) = exp(2 pi i j k / N)/sqrt(N).
/// Built directly from the formula; the gate-free oracle for the QFT builders.
ComplexMatrix dft_matrix(int n);

/// One gate per line, execution order, format "<kind> <j> [<k>]".
std::string circuit_to_text(const Circuit& c);

/// Parses the circuit_to_text format. Blank lines and '#' comments ignored.
Circuit circuit_from_text(const std::string& text, int n, const std::string& label = "custom");

}  // namespace qstab
