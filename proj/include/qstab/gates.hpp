#pragma once

#include <cstddef>

#include "qstab/matrix.hpp"

namespace qstab {

/// Gate alphabet.
///   A : one-qubit Hadamard-type gate, (1/sqrt2)[[1,1],[1,-1]]
///   B : diagonal controlled phase, diag{1,1,1,e^{i theta}}, theta = pi/2^{k-j}
///   T : transposition (swap) of qubits j and k
///   R : traceless rotation that commutes with every B_jl on the same first
///       qubit, and with other R_jl; used to scramble time correlations
///   G : R^dag B, the phase gate dressed by the rotation
enum class GateKind : char { A = 'A', B = 'B', T = 'T', R = 'R', G = 'G' };

/// Symbolic gate record. Two-qubit kinds require 0 <= j < k; A uses j only.
struct Gate {
  GateKind kind;
  int j = 0;
  int k = -1;

  static Gate a(int j);
  static Gate b(int j, int k);
  static Gate t(int j, int k);
  static Gate r(int j, int k);
  static Gate g(int j, int k);

  bool is_single_qubit() const { return kind == GateKind::A; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Local matrix of a gate: 2x2 for A, 4x4 otherwise. The 4-dimensional pair
/// basis is ordered by 2*q_k + q_j (the higher qubit index carries the
/// high-order bit of the pair).
ComplexMatrix gate_local_matrix(const Gate& g);

/// In-place left action of the gate on `ncols` column vectors stored
/// row-major as an N x ncols block (N = 2^n rows indexed by basis state).
/// Basis index m encodes qubit j as bit ((m >> j) & 1); qubit 0 is the
/// least significant bit. O(N * ncols) per gate.
void apply_gate_in_place(const Gate& g, int n, cdouble* data, std::size_t ncols);

/// Gate action on a register state.
StateVector apply_gate(const StateVector& state, const Gate& g, int n);

/// Full N x N matrix of the gate on the n-qubit register; agrees with
/// apply_gate on every basis state. For oracles and small n.
ComplexMatrix embed_gate(const Gate& g, int n);

/// Embeds an arbitrary local 4x4 (pair basis 2*q_k + q_j) at qubits (j,k).
ComplexMatrix embed_two_qubit(const ComplexMatrix& local, int j, int k, int n);

}  // namespace qstab
