#include "qstab/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qstab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_pair(int j, int k) {
  if (j < 0 || k <= j) throw std::invalid_argument("gate: need 0 <= j < k");
}

cdouble phase_factor(int j, int k) {
  // theta_jk = pi / 2^{k-j}
  const double theta = std::numbers::pi / static_cast<double>(std::uint64_t{1} << (k - j));
  return {std::cos(theta), std::sin(theta)};
}

void check_indices(const Gate& g, int n) {
  if (g.is_single_qubit()) {
    if (g.j < 0 || g.j >= n) throw std::invalid_argument("gate index out of range");
  } else {
    if (g.j < 0 || g.k <= g.j || g.k >= n) throw std::invalid_argument("gate index out of range");
  }
}

}  // namespace

Gate Gate::a(int j) {
  if (j < 0) throw std::invalid_argument("gate: qubit index negative");
  return {GateKind::A, j, -1};
}
Gate Gate::b(int j, int k) { require_pair(j, k); return {GateKind::B, j, k}; }
Gate Gate::t(int j, int k) { require_pair(j, k); return {GateKind::T, j, k}; }
Gate Gate::r(int j, int k) { require_pair(j, k); return {GateKind::R, j, k}; }
Gate Gate::g(int j, int k) { require_pair(j, k); return {GateKind::G, j, k}; }

ComplexMatrix gate_local_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::A: {
      ComplexMatrix m(2, 2);
      m(0, 0) = kInvSqrt2; m(0, 1) = kInvSqrt2;
      m(1, 0) = kInvSqrt2; m(1, 1) = -kInvSqrt2;
      return m;
    }
    case GateKind::B: {
      ComplexMatrix m = ComplexMatrix::identity(4);
      m(3, 3) = phase_factor(g.j, g.k);
      return m;
    }
    case GateKind::T: {
      ComplexMatrix m(4, 4);
      m(0, 0) = 1.0; m(1, 2) = 1.0; m(2, 1) = 1.0; m(3, 3) = 1.0;
      return m;
    }
    case GateKind::R: {
      ComplexMatrix m(4, 4);
      m(0, 2) = -1.0; m(1, 1) = 1.0; m(2, 0) = 1.0; m(3, 3) = -1.0;
      return m;
    }
    case GateKind::G:
      return matmul(adjoint(gate_local_matrix(Gate::r(g.j, g.k))),
                    gate_local_matrix(Gate::b(g.j, g.k)));
  }
  throw std::invalid_argument("gate_local_matrix: unknown kind");
}

void apply_gate_in_place(const Gate& g, int n, cdouble* data, std::size_t ncols) {
  check_indices(g, n);
  const std::size_t dim = std::size_t{1} << n;
  auto row = [&](std::size_t r) { return data + r * ncols; };

  if (g.kind == GateKind::A) {
    const std::size_t bit = std::size_t{1} << g.j;
    for (std::size_t base = 0; base < dim; base += 2 * bit) {
      for (std::size_t off = 0; off < bit; ++off) {
        cdouble* r0 = row(base + off);
        cdouble* r1 = row(base + off + bit);
        for (std::size_t c = 0; c < ncols; ++c) {
          const cdouble a = r0[c], b = r1[c];
          r0[c] = (a + b) * kInvSqrt2;
          r1[c] = (a - b) * kInvSqrt2;
        }
      }
    }
    return;
  }

  const std::size_t bj = std::size_t{1} << g.j;
  const std::size_t bk = std::size_t{1} << g.k;
  // enumerate basis states with bits j and k clear
  for (std::size_t hi = 0; hi < dim; hi += 2 * bk) {
    for (std::size_t mid = hi; mid < hi + bk; mid += 2 * bj) {
      for (std::size_t m00 = mid; m00 < mid + bj; ++m00) {
        cdouble* r00 = row(m00);
        cdouble* r01 = row(m00 + bj);
        cdouble* r10 = row(m00 + bk);
        cdouble* r11 = row(m00 + bj + bk);
        switch (g.kind) {
          case GateKind::B: {
            const cdouble f = phase_factor(g.j, g.k);
            for (std::size_t c = 0; c < ncols; ++c) r11[c] *= f;
            break;
          }
          case GateKind::T:
            std::swap_ranges(r01, r01 + ncols, r10);
            break;
          case GateKind::R:
            // |00> -> |10>, |10> -> -|00>, |11> -> -|11>
            for (std::size_t c = 0; c < ncols; ++c) {
              const cdouble a = r00[c];
              r00[c] = -r10[c];
              r10[c] = a;
              r11[c] = -r11[c];
            }
            break;
          case GateKind::G: {
            // R^dag B: |00> -> -|10>, |10> -> |00>, |11> -> -e^{i theta}|11>
            const cdouble f = -phase_factor(g.j, g.k);
            for (std::size_t c = 0; c < ncols; ++c) {
              const cdouble a = r00[c];
              r00[c] = r10[c];
              r10[c] = -a;
              r11[c] *= f;
            }
            break;
          }
          default:
            throw std::invalid_argument("apply_gate_in_place: unknown kind");
        }
      }
    }
  }
}

StateVector apply_gate(const StateVector& state, const Gate& g, int n) {
  if (state.dim() != (std::size_t{1} << n))
    throw std::invalid_argument("apply_gate: state length is not 2^n");
  StateVector out = state;
  apply_gate_in_place(g, n, out.amplitudes.data(), 1);
  return out;
}

ComplexMatrix embed_two_qubit(const ComplexMatrix& local, int j, int k, int n) {
  if (local.rows() != 4 || local.cols() != 4)
    throw std::invalid_argument("embed_two_qubit: local matrix must be 4x4");
  if (j < 0 || k <= j || k >= n) throw std::invalid_argument("gate index out of range");
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t bj = std::size_t{1} << j;
  const std::size_t bk = std::size_t{1} << k;
  ComplexMatrix e(dim, dim);
  for (std::size_t m = 0; m < dim; ++m) {
    const std::size_t in_loc = ((m & bk) ? 2 : 0) | ((m & bj) ? 1 : 0);
    const std::size_t base = m & ~(bj | bk);
    for (std::size_t out_loc = 0; out_loc < 4; ++out_loc) {
      const cdouble amp = local(out_loc, in_loc);
      if (amp == cdouble{}) continue;
      const std::size_t mp = base | ((out_loc & 1) ? bj : 0) | ((out_loc & 2) ? bk : 0);
      e(mp, m) = amp;
    }
  }
  return e;
}

ComplexMatrix embed_gate(const Gate& g, int n) {
  check_indices(g, n);
  if (g.kind != GateKind::A) return embed_two_qubit(gate_local_matrix(g), g.j, g.k, n);
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t bj = std::size_t{1} << g.j;
  const ComplexMatrix local = gate_local_matrix(g);
  ComplexMatrix e(dim, dim);
  for (std::size_t m = 0; m < dim; ++m) {
    const std::size_t in_loc = (m & bj) ? 1 : 0;
    for (std::size_t out_loc = 0; out_loc < 2; ++out_loc) {
      const std::size_t mp = (m & ~bj) | (out_loc ? bj : 0);
      e(mp, m) = local(out_loc, in_loc);
    }
  }
  return e;
}

}  // namespace qstab
