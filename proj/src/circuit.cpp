#include "qstab/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qstab/parallel.hpp"

namespace qstab {

namespace {

void require_register(int n) {
  // Upper bound keeps dim() = 1 << n well-defined; operator-level work
  // is guarded much lower by the callers anyway.
  if (n < 2 || n > 32)
    throw std::invalid_argument("circuit builder: need 2 <= n <= 32 qubits");
}

// Transposition layer reversing the qubit order, T_{j, n-1-j}; innermost
// pair first in execution order.
void append_transpositions(Circuit& c) {
  for (int j = c.n / 2 - 1; j >= 0; --j) c.gates.push_back(Gate::t(j, c.n - 1 - j));
}

}  // namespace

Circuit build_qft(int n) {
  require_register(n);
  Circuit c{n, {}, "qft"};
  c.gates.push_back(Gate::a(n - 1));
  for (int j = n - 2; j >= 0; --j) {
    for (int k = n - 1; k > j; --k) c.gates.push_back(Gate::b(j, k));
    c.gates.push_back(Gate::a(j));
  }
  append_transpositions(c);
  return c;
}

Circuit build_iqft(int n) {
  require_register(n);
  Circuit c{n, {}, "iqft"};
  c.gates.push_back(Gate::a(n - 1));
  for (int j = n - 2; j >= 0; --j) {
    for (int k = n - 1; k > j; --k) c.gates.push_back(Gate::g(j, k));
    for (int k = n - 1; k > j; --k) c.gates.push_back(Gate::r(j, k));
    c.gates.push_back(Gate::a(j));
  }
  append_transpositions(c);
  return c;
}

ComplexMatrix circuit_unitary(const Circuit& c) {
  ComplexMatrix u = ComplexMatrix::identity(c.dim());
  for (const Gate& g : c.gates) apply_gate_in_place(g, c.n, u.data(), u.cols());
  return u;
}

PartialTraceTable::PartialTraceTable(int gate_count, std::size_t dim)
    : T_(gate_count), dim_(dim), values_(std::size_t(gate_count + 1) * (gate_count + 2) / 2) {}

cdouble PartialTraceTable::at(int t, int t_prime) const {
  if (t_prime < 0 || t_prime > t || t > T_)
    throw std::invalid_argument("PartialTraceTable: need 0 <= t' <= t <= T");
  return values_[std::size_t(t) * (t + 1) / 2 + t_prime];
}

cdouble& PartialTraceTable::at(int t, int t_prime) {
  if (t_prime < 0 || t_prime > t || t > T_)
    throw std::invalid_argument("PartialTraceTable: need 0 <= t' <= t <= T");
  return values_[std::size_t(t) * (t + 1) / 2 + t_prime];
}

PartialTraceTable partial_trace_table(const Circuit& c, int threads) {
  const int T = c.gate_count();
  const std::size_t dim = c.dim();
  PartialTraceTable table(T, dim);
  parallel_for(T + 1, threads, [&](std::size_t row) {
    const int tp = static_cast<int>(row);
    table.at(tp, tp) = static_cast<double>(dim);
    if (tp == T) return;
    ComplexMatrix m = ComplexMatrix::identity(dim);
    for (int t = tp + 1; t <= T; ++t) {
      apply_gate_in_place(c.gates[t - 1], c.n, m.data(), m.cols());
      table.at(t, tp) = trace(m);
    }
  });
  return table;
}

ComplexMatrix dft_matrix(int n) {
  if (n < 1) throw std::invalid_argument("dft_matrix: need n >= 1");
  const std::size_t dim = std::size_t{1} << n;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dim));
  ComplexMatrix f(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < dim; ++j) {
      // exp(2 pi i j k / N) / sqrt(N); reduce j*k mod N first so the angle
      // stays small.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) /
                           static_cast<double>(dim);
      f(k, j) = cdouble{std::cos(angle), std::sin(angle)} * inv_sqrt;
    }
  }
  return f;
}

std::string circuit_to_text(const Circuit& c) {
  std::ostringstream out;
  for (const Gate& g : c.gates) {
    out << static_cast<char>(g.kind) << ' ' << g.j;
    if (!g.is_single_qubit()) out << ' ' << g.k;
    out << '\n';
  }
  return out.str();
}

Circuit circuit_from_text(const std::string& text, int n, const std::string& label) {
  require_register(n);
  Circuit c{n, {}, label};
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line.substr(start));
    char kind = 0;
    int j = -1, k = -1;
    const bool has_j = static_cast<bool>(fields >> kind >> j);
    const bool has_k = static_cast<bool>(fields >> k);
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("gate list line " + std::to_string(line_no) + ": " + why);
    };
    if (!has_j) fail("expected '<kind> <j> [<k>]'");
    if (std::string("ABTRG").find(kind) == std::string::npos) fail("unknown gate kind");
    if (kind == 'A' && has_k) fail("A takes one index");
    if (kind != 'A' && !has_k) fail("two-qubit gate needs two indices");
    Gate g;
    try {
      switch (kind) {
        case 'A': g = Gate::a(j); break;
        case 'B': g = Gate::b(j, k); break;
        case 'T': g = Gate::t(j, k); break;
        case 'R': g = Gate::r(j, k); break;
        default:  g = Gate::g(j, k); break;
      }
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    if ((g.is_single_qubit() && g.j >= n) || (!g.is_single_qubit() && g.k >= n))
      fail("qubit index out of range");
    c.gates.push_back(g);
  }
  return c;
}

}  // namespace qstab
