"""Stability analysis of Fourier-transform circuits under Hermitian perturbations.

Thin re-export of the compiled extension; see the C++ headers for the
full contracts.
"""

from qstab._core import (
    Circuit,
    FidelityEnsemble,
    ScalingFit,
    SeededRng,
    __version__,
    build_iqft,
    build_qft,
    chi,
    circuit_from_text,
    circuit_to_text,
    circuit_unitary,
    correlator_fixed,
    correlator_gue,
    dft_matrix,
    expm_phase,
    fidelity_ensemble,
    fidelity_exact,
    fidelity_heisenberg,
    fidelity_model,
    fit_scaling,
    noise_baseline,
    random_register_state,
    sample_gue,
)

__all__ = [
    "Circuit",
    "FidelityEnsemble",
    "ScalingFit",
    "SeededRng",
    "__version__",
    "build_iqft",
    "build_qft",
    "chi",
    "circuit_from_text",
    "circuit_to_text",
    "circuit_unitary",
    "correlator_fixed",
    "correlator_gue",
    "dft_matrix",
    "expm_phase",
    "fidelity_ensemble",
    "fidelity_exact",
    "fidelity_heisenberg",
    "fidelity_model",
    "fit_scaling",
    "noise_baseline",
    "random_register_state",
    "sample_gue",
]
