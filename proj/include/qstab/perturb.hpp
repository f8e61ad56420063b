#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qstab/circuit.hpp"
#include "qstab/expm.hpp"
#include "qstab/random.hpp"

namespace qstab {

enum class PerturbVariant { Static, Noise, Fixed };

/// How the per-gate perturbation operators V(t) are produced.
///   Static: one GUE sample per realization, shared by all T gates.
///   Noise:  a fresh independent GUE sample at every gate.
///   Fixed:  a user-supplied Hermitian matrix at every gate.
struct PerturbationMode {
  PerturbVariant variant = PerturbVariant::Static;
  ComplexMatrix fixed_matrix;
  bool normalize_trace = false;  // rescale each sample to tr(V^2)/N = 1

  static PerturbationMode static_gue(bool normalize_trace = false);
  static PerturbationMode noise(bool normalize_trace = false);
  static PerturbationMode fixed(ComplexMatrix v);

  std::string name() const;
};

/// The sequence V(1..T) for one run; static/fixed share one operator.
struct PerturbationRealization {
  std::vector<std::shared_ptr<const HermitianPerturbation>> steps;

  int gate_count() const { return static_cast<int>(steps.size()); }
};

/// Draws (or validates) the perturbation sequence for T gates on an
/// N-dimensional register. Throws std::invalid_argument if a fixed matrix
/// has the wrong dimension or is not Hermitian within 1e-12.
PerturbationRealization realize_perturbation(const PerturbationMode& mode, int gate_count,
                                             std::size_t n_dim, SeededRng& rng);

/// F(T) = tr(U_delta^dag(T,0) U(T,0)) / N with U_delta(t) = U(t) exp(-i delta V(t)),
/// the exponential applied first. Full N x N products; exact trace.
cdouble fidelity_exact(const Circuit& c, const PerturbationRealization& realization, double delta);

/// Convenience: realize a perturbation from `mode` and evaluate.
cdouble fidelity_exact(const Circuit& c, const PerturbationMode& mode, double delta,
                       SeededRng& rng);

struct StochasticFidelity {
  cdouble estimate;
  double std_error = 0.0;  // standard error of the mean over states
};

/// Unbiased trace estimate (1/M) sum_m <psi_m| U_delta^dag U |psi_m> over
/// gaussian random register states, propagated with O(N)-per-gate kernels.
StochasticFidelity fidelity_stochastic(const Circuit& c,
                                       const PerturbationRealization& realization, double delta,
                                       int n_states, SeededRng& state_rng);

/// Heisenberg product form: (1/N) tr prod_{t=1..T} exp(i delta V(t-1,0)),
/// leftmost factor t=1, V(t,0) = U^dag(t,0) V U(t,0). Equals fidelity_exact
/// for a static V; O(T N^3) cross-check for small n.
cdouble fidelity_heisenberg(const Circuit& c, const HermitianPerturbation& v, double delta);

struct TraceSpec {
  bool stochastic = false;
  int states = 200;
};

struct FidelityRunConfig {
  double delta = 0.0;
  int realizations = 1;
  TraceSpec trace;
  std::uint64_t seed = 0;
};

struct FidelityEnsemble {
  struct Entry {
    std::uint64_t stream;  // perturbation stream id of the realization
    cdouble f;
  };
  std::vector<Entry> per_realization;
  cdouble mean_complex;   // summed in realization order
  double abs_mean = 0.0;  // |<F>|
  double mean_abs = 0.0;  // <|F|>
  double std_error = 0.0; // std error of the per-realization |F| spread
};

/// Independent realizations r = 0..R-1 with streams derived from cfg.seed;
/// embarrassingly parallel, aggregation always in realization order so the
/// result is identical for any worker count.
FidelityEnsemble fidelity_ensemble(const Circuit& c, const PerturbationMode& mode,
                                   const FidelityRunConfig& cfg, int threads = 1);

/// Uncorrelated-noise average exp(-delta^2 T / 2); independent of the
/// algorithm.
double noise_baseline(int gate_count, double delta);

}  // namespace qstab
