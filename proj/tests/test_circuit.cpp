#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qstab/circuit.hpp"
#include "qstab/gates.hpp"
#include "qstab/matrix.hpp"

using namespace qstab;
using qstab::testing::naive_matmul;
using qstab::testing::naive_prefix_products;
using qstab::testing::naive_trace;

TEST_CASE("four-qubit transform is the exact published gate sequence") {
  const Circuit c = build_qft(4);
  const std::vector<Gate> want = {
      Gate::a(3), Gate::b(2, 3), Gate::a(2), Gate::b(1, 3), Gate::b(1, 2), Gate::a(1),
      Gate::b(0, 3), Gate::b(0, 2), Gate::b(0, 1), Gate::a(0), Gate::t(1, 2), Gate::t(0, 3)};
  REQUIRE(c.gates.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(c.gates[i] == want[i]);
  CHECK(c.label == "qft");
}

TEST_CASE("four-qubit improved transform interleaves G and R blocks") {
  const Circuit c = build_iqft(4);
  const std::vector<Gate> want = {
      Gate::a(3),
      Gate::g(2, 3), Gate::r(2, 3), Gate::a(2),
      Gate::g(1, 3), Gate::g(1, 2), Gate::r(1, 3), Gate::r(1, 2), Gate::a(1),
      Gate::g(0, 3), Gate::g(0, 2), Gate::g(0, 1),
      Gate::r(0, 3), Gate::r(0, 2), Gate::r(0, 1), Gate::a(0),
      Gate::t(1, 2), Gate::t(0, 3)};
  REQUIRE(c.gates.size() == 18);
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(c.gates[i] == want[i]);
}

TEST_CASE("gate counts follow the closed forms") {
  for (int n = 2; n <= 12; ++n) {
    CHECK(build_qft(n).gate_count() == n * (n + 2) / 2);
    CHECK(build_iqft(n).gate_count() == n * (2 * n + 1) / 2);
  }
  CHECK(build_qft(6).gate_count() == 24);
  CHECK(build_iqft(6).gate_count() == 39);
  CHECK(build_qft(10).gate_count() == 60);
  CHECK(build_iqft(10).gate_count() == 105);
}

TEST_CASE("builders reject registers outside 2..32") {
  CHECK_THROWS_AS((void)build_qft(1), std::invalid_argument);
  CHECK_THROWS_AS((void)build_iqft(0), std::invalid_argument);
  CHECK_THROWS_AS((void)build_qft(33), std::invalid_argument);
  // The top of the range stays constructible and dim() stays exact.
  CHECK(build_qft(32).dim() == std::size_t{1} << 32);
}

TEST_CASE("circuit unitary equals the Fourier matrix") {
  for (int n = 2; n <= 6; ++n) {
    const ComplexMatrix u = circuit_unitary(build_qft(n));
    CHECK(max_abs_diff(u, dft_matrix(n)) < 1e-10);
    CHECK(unitarity_defect(u) < 1e-12);
  }
}

TEST_CASE("gate-free circuit evolves trivially") {
  const Circuit empty{3, {}, "empty"};
  CHECK(max_abs_diff(circuit_unitary(empty), ComplexMatrix::identity(8)) < 1e-15);
}

TEST_CASE("improved circuit preserves the evolution matrix") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(max_abs_diff(circuit_unitary(build_iqft(n)), circuit_unitary(build_qft(n))) < 1e-10);
  }
}

TEST_CASE("dft_matrix entries follow the formula") {
  const int n = 3;
  const std::size_t dim = 8;
  const ComplexMatrix f = dft_matrix(n);
  const double root = std::sqrt(8.0);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t j = 0; j < dim; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) / 8.0;
      const cdouble want = cdouble(std::cos(angle), std::sin(angle)) / root;
      CHECK(std::abs(f(k, j) - want) < 1e-14);
    }
  CHECK(unitarity_defect(f) < 1e-13);
}

TEST_CASE("partial trace table matches explicit products") {
  const Circuit c = build_qft(3);
  const PartialTraceTable table = partial_trace_table(c);
  const std::vector<ComplexMatrix> w = naive_prefix_products(c);
  const int t_max = c.gate_count();
  for (int t = 0; t <= t_max; ++t) {
    for (int tp = 0; tp <= t; ++tp) {
      // U(t,t') = W(t) W(t')^dag.
      const cdouble want = naive_trace(
          naive_matmul(w[static_cast<std::size_t>(t)],
                       qstab::testing::naive_adjoint(w[static_cast<std::size_t>(tp)])));
      CHECK(std::abs(table.at(t, tp) - want) < 1e-10);
    }
  }
}

TEST_CASE("partial trace diagonal is exactly the dimension") {
  const Circuit c = build_iqft(4);
  const PartialTraceTable table = partial_trace_table(c);
  for (int t = 0; t <= c.gate_count(); ++t)
    CHECK(table.at(t, t) == cdouble(16.0));
}

TEST_CASE("table is invariant under the worker count") {
  const Circuit c = build_qft(4);
  const PartialTraceTable serial = partial_trace_table(c, 1);
  const PartialTraceTable threaded = partial_trace_table(c, 3);
  for (int t = 0; t <= c.gate_count(); ++t)
    for (int tp = 0; tp <= t; ++tp) CHECK(serial.at(t, tp) == threaded.at(t, tp));
}

TEST_CASE("single-gate traces take their known values") {
  // A Hadamard-type gate is traceless; a swap has trace N/2.
  Circuit ca{2, {Gate::a(0)}, "a"};
  CHECK(std::abs(partial_trace_table(ca).at(1, 0)) < 1e-14);
  Circuit ct{2, {Gate::t(0, 1)}, "t"};
  CHECK(std::abs(partial_trace_table(ct).at(1, 0) - cdouble(2.0)) < 1e-14);
}

TEST_CASE("gate listing round-trips through text") {
  const Circuit c = build_qft(3);
  const std::string text = circuit_to_text(c);
  CHECK(text ==
        "A 2\n"
        "B 1 2\n"
        "A 1\n"
        "B 0 2\n"
        "B 0 1\n"
        "A 0\n"
        "T 0 2\n");
  const Circuit back = circuit_from_text(text, 3, "roundtrip");
  REQUIRE(back.gates.size() == c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) CHECK(back.gates[i] == c.gates[i]);
}

TEST_CASE("gate listing parser reports the offending line") {
  using Catcher = std::invalid_argument;
  auto message_of = [](const std::string& text, int n) {
    try {
      (void)circuit_from_text(text, n);
    } catch (const Catcher& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message_of("A 0\nQ 0 1\n", 3).find("line 2") != std::string::npos);
  CHECK(message_of("B 0\n", 3).find("line 1") != std::string::npos);
  CHECK(message_of("A 0 1\n", 3).find("line 1") != std::string::npos);
  CHECK(message_of("B 1 0\n", 3).find("line 1") != std::string::npos);
  CHECK(message_of("B 0 5\n", 3).find("line 1") != std::string::npos);
  CHECK(message_of("# comment only\nA 7\n", 3).find("line 2") != std::string::npos);
  CHECK_NOTHROW((void)circuit_from_text("# header\n\nA 0\n", 2));
}
