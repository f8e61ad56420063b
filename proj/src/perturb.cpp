#include "qstab/perturb.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>
#include <utility>

#include "qstab/gates.hpp"
#include "qstab/parallel.hpp"

namespace qstab {

PerturbationMode PerturbationMode::static_gue(bool normalize_trace) {
  PerturbationMode m;
  m.variant = PerturbVariant::Static;
  m.normalize_trace = normalize_trace;
  return m;
}

PerturbationMode PerturbationMode::noise(bool normalize_trace) {
  PerturbationMode m;
  m.variant = PerturbVariant::Noise;
  m.normalize_trace = normalize_trace;
  return m;
}

PerturbationMode PerturbationMode::fixed(ComplexMatrix v) {
  PerturbationMode m;
  m.variant = PerturbVariant::Fixed;
  m.fixed_matrix = std::move(v);
  return m;
}

std::string PerturbationMode::name() const {
  switch (variant) {
    case PerturbVariant::Static: return "static";
    case PerturbVariant::Noise: return "noise";
    case PerturbVariant::Fixed: return "fixed";
  }
  return "unknown";
}

PerturbationRealization realize_perturbation(const PerturbationMode& mode, int gate_count,
                                             std::size_t n_dim, SeededRng& rng) {
  if (gate_count < 0) throw std::invalid_argument("gate_count must be non-negative");
  PerturbationRealization r;
  r.steps.reserve(static_cast<std::size_t>(gate_count));
  switch (mode.variant) {
    case PerturbVariant::Static: {
      auto v = std::make_shared<HermitianPerturbation>(
          sample_gue(n_dim, rng, mode.normalize_trace));
      r.steps.assign(static_cast<std::size_t>(gate_count), v);
      break;
    }
    case PerturbVariant::Noise: {
      for (int t = 0; t < gate_count; ++t) {
        r.steps.push_back(std::make_shared<HermitianPerturbation>(
            sample_gue(n_dim, rng, mode.normalize_trace)));
      }
      break;
    }
    case PerturbVariant::Fixed: {
      const ComplexMatrix& v = mode.fixed_matrix;
      if (v.rows() != n_dim || v.cols() != n_dim)
        throw std::invalid_argument("fixed perturbation has wrong dimension");
      if (!v.all_finite() || hermiticity_defect(v) > 1e-12)
        throw std::invalid_argument("fixed perturbation is not Hermitian");
      auto shared = std::make_shared<HermitianPerturbation>(HermitianPerturbation{v, "fixed"});
      r.steps.assign(static_cast<std::size_t>(gate_count), shared);
      break;
    }
  }
  return r;
}

cdouble fidelity_exact(const Circuit& c, const PerturbationRealization& realization,
                       double delta) {
  if (realization.gate_count() != c.gate_count())
    throw std::invalid_argument("perturbation length does not match circuit");
  const std::size_t dim = c.dim();
  ComplexMatrix u = ComplexMatrix::identity(dim);
  ComplexMatrix ud = ComplexMatrix::identity(dim);
  // Static and fixed modes share one operator across steps; cache its
  // exponential by pointer identity.
  const HermitianPerturbation* cached_for = nullptr;
  ComplexMatrix cached_exp;
  for (std::size_t t = 0; t < c.gates.size(); ++t) {
    const HermitianPerturbation* v = realization.steps[t].get();
    if (v != cached_for) {
      cached_exp = expm_phase(*v, delta);
      cached_for = v;
    }
    ud = matmul(cached_exp, ud);
    apply_gate_in_place(c.gates[t], c.n, ud.data(), dim);
    apply_gate_in_place(c.gates[t], c.n, u.data(), dim);
  }
  return trace_inner(ud, u) / static_cast<double>(dim);
}

cdouble fidelity_exact(const Circuit& c, const PerturbationMode& mode, double delta,
                       SeededRng& rng) {
  PerturbationRealization r = realize_perturbation(mode, c.gate_count(), c.dim(), rng);
  return fidelity_exact(c, r, delta);
}

StochasticFidelity fidelity_stochastic(const Circuit& c,
                                       const PerturbationRealization& realization, double delta,
                                       int n_states, SeededRng& state_rng) {
  if (realization.gate_count() != c.gate_count())
    throw std::invalid_argument("perturbation length does not match circuit");
  if (n_states < 1) throw std::invalid_argument("n_states must be positive");
  const std::size_t dim = c.dim();
  const std::size_t m = static_cast<std::size_t>(n_states);

  // States are drawn one full register at a time and packed as the columns
  // of an N x M block, so the draw order is independent of how the block is
  // propagated.
  ComplexMatrix psi(dim, m);
  for (std::size_t col = 0; col < m; ++col) {
    StateVector s = random_register_state(dim, state_rng);
    for (std::size_t row = 0; row < dim; ++row) psi(row, col) = s.amplitudes[row];
  }
  ComplexMatrix phi = psi;  // propagated by the unperturbed circuit

  const HermitianPerturbation* cached_for = nullptr;
  ComplexMatrix cached_exp;
  for (std::size_t t = 0; t < c.gates.size(); ++t) {
    const HermitianPerturbation* v = realization.steps[t].get();
    if (v != cached_for) {
      cached_exp = expm_phase(*v, delta);
      cached_for = v;
    }
    psi = matmul(cached_exp, psi);
    apply_gate_in_place(c.gates[t], c.n, psi.data(), m);
    apply_gate_in_place(c.gates[t], c.n, phi.data(), m);
  }

  std::vector<cdouble> overlaps(m);
  for (std::size_t col = 0; col < m; ++col) {
    cdouble f = 0.0;
    for (std::size_t row = 0; row < dim; ++row)
      f += std::conj(psi(row, col)) * phi(row, col);
    overlaps[col] = f;
  }

  cdouble mean = 0.0;
  for (const cdouble& f : overlaps) mean += f;
  mean /= static_cast<double>(m);

  double std_error = 0.0;
  if (m >= 2) {
    double ss = 0.0;
    for (const cdouble& f : overlaps) ss += std::norm(f - mean);
    std_error = std::sqrt(ss / (static_cast<double>(m) * static_cast<double>(m - 1)));
  }
  return {mean, std_error};
}

cdouble fidelity_heisenberg(const Circuit& c, const HermitianPerturbation& v, double delta) {
  const std::size_t dim = c.dim();
  if (v.matrix.rows() != dim || v.matrix.cols() != dim)
    throw std::invalid_argument("perturbation has wrong dimension");
  ComplexMatrix w = ComplexMatrix::identity(dim);  // U(t-1, 0)
  ComplexMatrix prod = ComplexMatrix::identity(dim);
  for (std::size_t t = 0; t < c.gates.size(); ++t) {
    // V(t-1,0) = W^dag V W for the current W, then exp(+i delta .) appended
    // on the right keeps the t = 1 factor leftmost.
    ComplexMatrix conj_v = matmul(adjoint(w), matmul(v.matrix, w));
    prod = matmul(prod, expm_phase(conj_v, -delta));
    apply_gate_in_place(c.gates[t], c.n, w.data(), dim);
  }
  return trace(prod) / static_cast<double>(dim);
}

FidelityEnsemble fidelity_ensemble(const Circuit& c, const PerturbationMode& mode,
                                   const FidelityRunConfig& cfg, int threads) {
  if (cfg.realizations < 1) throw std::invalid_argument("realizations must be positive");
  if (cfg.delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  if (cfg.trace.stochastic && cfg.trace.states < 1)
    throw std::invalid_argument("trace states must be positive");

  const std::size_t n_real = static_cast<std::size_t>(cfg.realizations);
  FidelityEnsemble out;
  out.per_realization.resize(n_real);

  parallel_for(n_real, threads, [&](std::size_t r) {
    const std::uint64_t base = static_cast<std::uint64_t>(r) * kStreamsPerRealization;
    SeededRng pert_rng(cfg.seed, base + kPerturbationStream);
    PerturbationRealization realization =
        realize_perturbation(mode, c.gate_count(), c.dim(), pert_rng);
    cdouble f;
    if (cfg.trace.stochastic) {
      SeededRng state_rng(cfg.seed, base + kTraceStateStream);
      f = fidelity_stochastic(c, realization, cfg.delta, cfg.trace.states, state_rng).estimate;
    } else {
      f = fidelity_exact(c, realization, cfg.delta);
    }
    out.per_realization[r] = {base, f};
  });

  cdouble sum = 0.0;
  double sum_abs = 0.0;
  for (const auto& e : out.per_realization) {
    sum += e.f;
    sum_abs += std::abs(e.f);
  }
  out.mean_complex = sum / static_cast<double>(n_real);
  out.abs_mean = std::abs(out.mean_complex);
  out.mean_abs = sum_abs / static_cast<double>(n_real);
  if (n_real >= 2) {
    double ss = 0.0;
    for (const auto& e : out.per_realization) {
      const double d = std::abs(e.f) - out.mean_abs;
      ss += d * d;
    }
    out.std_error =
        std::sqrt(ss / (static_cast<double>(n_real) * static_cast<double>(n_real - 1)));
  }
  return out;
}

double noise_baseline(int gate_count, double delta) {
  if (gate_count < 0) throw std::invalid_argument("gate_count must be non-negative");
  return std::exp(-delta * delta * static_cast<double>(gate_count) / 2.0);
}

}  // namespace qstab
