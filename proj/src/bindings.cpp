// Python face of the library: builders, oracles, correlators and fidelity
// ensembles with numpy in/out.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <complex>
#include <cstring>
#include <stdexcept>

#include "qstab/circuit.hpp"
#include "qstab/correlate.hpp"
#include "qstab/expm.hpp"
#include "qstab/gates.hpp"
#include "qstab/perturb.hpp"
#include "qstab/random.hpp"
#include "qstab/version.hpp"

namespace py = pybind11;
using namespace qstab;

namespace {

py::array_t<cdouble> to_numpy(const ComplexMatrix& m) {
  py::array_t<cdouble> a({m.rows(), m.cols()});
  std::copy(m.data(), m.data() + m.size(), a.mutable_data());
  return a;
}

py::array_t<double> to_numpy(const CorrelatorMatrix& m) {
  const std::size_t t = static_cast<std::size_t>(m.T);
  py::array_t<double> a({t, t});
  std::copy(m.values.begin(), m.values.end(), a.mutable_data());
  return a;
}

ComplexMatrix from_numpy(const py::array_t<cdouble, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D complex array");
  ComplexMatrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + m.size(), m.data());
  return m;
}

PerturbationMode mode_from_name(const std::string& name, bool normalize) {
  if (name == "static") return PerturbationMode::static_gue(normalize);
  if (name == "noise") return PerturbationMode::noise(normalize);
  throw std::invalid_argument("mode must be 'static' or 'noise'");
}

HermitianPerturbation perturbation_from_numpy(
    const py::array_t<cdouble, py::array::c_style | py::array::forcecast>& v) {
  HermitianPerturbation p{from_numpy(v), "user"};
  if (!p.matrix.is_square()) throw std::invalid_argument("perturbation must be square");
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "quantum-circuit stability toolkit (QFT vs improved QFT under "
            "Hermitian perturbations)";
  m.attr("__version__") = kVersion;

  py::class_<SeededRng>(m, "SeededRng")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("master_seed"),
           py::arg("stream_id"))
      .def_property_readonly("master_seed", &SeededRng::master_seed)
      .def_property_readonly("stream_id", &SeededRng::stream_id)
      .def("next_u64", &SeededRng::next_u64)
      .def("next_double", &SeededRng::next_double)
      .def("next_gaussian", &SeededRng::next_gaussian);

  py::class_<Circuit>(m, "Circuit")
      .def_readonly("n", &Circuit::n)
      .def_readonly("label", &Circuit::label)
      .def_property_readonly("gate_count", &Circuit::gate_count)
      .def_property_readonly("dim", &Circuit::dim)
      .def("__len__", &Circuit::gate_count)
      .def("__repr__", [](const Circuit& c) {
        return "<Circuit " + c.label + " n=" + std::to_string(c.n) + " gates=" +
               std::to_string(c.gate_count()) + ">";
      });

  m.def("build_qft", &build_qft, py::arg("n"));
  m.def("build_iqft", &build_iqft, py::arg("n"));
  m.def("circuit_to_text", &circuit_to_text, py::arg("circuit"));
  m.def("circuit_from_text", &circuit_from_text, py::arg("text"), py::arg("n"),
        py::arg("label") = "custom");
  m.def("circuit_unitary",
        [](const Circuit& c) { return to_numpy(circuit_unitary(c)); }, py::arg("circuit"));
  m.def("dft_matrix", [](int n) { return to_numpy(dft_matrix(n)); }, py::arg("n"));

  m.def("sample_gue",
        [](std::size_t n_dim, SeededRng& rng, bool normalize) {
          return to_numpy(sample_gue(n_dim, rng, normalize).matrix);
        },
        py::arg("n_dim"), py::arg("rng"), py::arg("normalize") = false);
  m.def("random_register_state",
        [](std::size_t n_dim, SeededRng& rng) {
          StateVector s = random_register_state(n_dim, rng);
          py::array_t<cdouble> a(s.dim());
          std::copy(s.amplitudes.begin(), s.amplitudes.end(), a.mutable_data());
          return a;
        },
        py::arg("n_dim"), py::arg("rng"));
  m.def("expm_phase",
        [](const py::array_t<cdouble, py::array::c_style | py::array::forcecast>& v,
           double delta) { return to_numpy(expm_phase(from_numpy(v), delta)); },
        py::arg("v"), py::arg("delta"), "exp(-1j * delta * V) for Hermitian V");

  m.def("correlator_gue",
        [](const Circuit& c, int threads) { return to_numpy(correlator_gue(c, threads)); },
        py::arg("circuit"), py::arg("threads") = 1);
  m.def("correlator_fixed",
        [](const Circuit& c,
           const py::array_t<cdouble, py::array::c_style | py::array::forcecast>& v) {
          return to_numpy(correlator_fixed(c, perturbation_from_numpy(v)));
        },
        py::arg("circuit"), py::arg("v"));
  m.def("chi",
        [](const Circuit& c, int threads) { return chi_sum(correlator_gue(c, threads)).chi; },
        py::arg("circuit"), py::arg("threads") = 1,
        "half the sum of the averaged correlator matrix");
  m.def("fidelity_model", &fidelity_model, py::arg("chi"), py::arg("delta"));
  m.def("noise_baseline", &noise_baseline, py::arg("gate_count"), py::arg("delta"));

  m.def("fidelity_exact",
        [](const Circuit& c,
           const py::array_t<cdouble, py::array::c_style | py::array::forcecast>& v,
           double delta) {
          SeededRng unused(0, 0);
          PerturbationRealization r = realize_perturbation(
              PerturbationMode::fixed(from_numpy(v)), c.gate_count(), c.dim(), unused);
          return fidelity_exact(c, r, delta);
        },
        py::arg("circuit"), py::arg("v"), py::arg("delta"),
        "fidelity under a fixed static perturbation");
  m.def("fidelity_heisenberg",
        [](const Circuit& c,
           const py::array_t<cdouble, py::array::c_style | py::array::forcecast>& v,
           double delta) { return fidelity_heisenberg(c, perturbation_from_numpy(v), delta); },
        py::arg("circuit"), py::arg("v"), py::arg("delta"));

  py::class_<FidelityEnsemble>(m, "FidelityEnsemble")
      .def_readonly("mean_complex", &FidelityEnsemble::mean_complex)
      .def_readonly("abs_mean", &FidelityEnsemble::abs_mean)
      .def_readonly("mean_abs", &FidelityEnsemble::mean_abs)
      .def_readonly("std_error", &FidelityEnsemble::std_error)
      .def_property_readonly("per_realization", [](const FidelityEnsemble& e) {
        std::vector<cdouble> fs;
        fs.reserve(e.per_realization.size());
        for (const auto& entry : e.per_realization) fs.push_back(entry.f);
        return fs;
      });

  m.def("fidelity_ensemble",
        [](const Circuit& c, const std::string& mode, double delta, int realizations,
           std::uint64_t seed, bool stochastic, int states, bool normalize, int threads) {
          FidelityRunConfig cfg;
          cfg.delta = delta;
          cfg.realizations = realizations;
          cfg.trace = {stochastic, states};
          cfg.seed = seed;
          return fidelity_ensemble(c, mode_from_name(mode, normalize), cfg, threads);
        },
        py::arg("circuit"), py::arg("mode"), py::arg("delta"), py::arg("realizations"),
        py::arg("seed"), py::arg("stochastic") = false, py::arg("states") = 200,
        py::arg("normalize") = false, py::arg("threads") = 1);

  py::class_<ScalingFit>(m, "ScalingFit")
      .def_readonly("basis", &ScalingFit::basis)
      .def_readonly("coefficients", &ScalingFit::coefficients)
      .def_readonly("residual_rms", &ScalingFit::residual_rms)
      .def("evaluate", &ScalingFit::evaluate, py::arg("n"));

  m.def("fit_scaling", &fit_scaling, py::arg("points"), py::arg("basis"),
        "least-squares fit of chi(n) over monomials n^e");
}
