"""Witness-based detection of non-separable random-unitary two-qubit channels.

Builds the detection operators W = beta*1 - C_U for the CNOT and CZ gates,
decomposes them into local Pauli measurements with a provably minimal set
of nine settings, and quantifies how much depolarising, dephasing, bit-flip
or amplitude-damping noise the detection tolerates, both in closed form and
by first-principles Kraus simulation.
"""

from .channels import (
    KrausChannel,
    amplitude_damping,
    apply,
    bit_flip,
    channel_from_json_obj,
    channel_to_json_obj,
    compose,
    dephasing,
    depolarising,
    gate_matrix,
    haar_unitary,
    identity_channel,
    pauli_channel,
    sample_channel,
    sample_sru,
    tensor,
    unitary_channel,
    validate_cpt,
)
from .choi import (
    ChoiState,
    apply_via_choi,
    choi_of,
    max_entangled,
    overlap_basis,
    overlap_direct,
    overlap_kraus,
    permute_qubits,
    purity,
)
from .linalg import (
    DEFAULT_TOL,
    PAULIS,
    all_pauli_strings,
    hs_inner,
    is_hermitian,
    is_psd,
    kron,
    partial_trace,
    pauli_string_matrix,
)
from .protocol import (
    EstimateResult,
    ShotPlan,
    estimate_expectation,
    estimate_expectation_exact,
    setting_distribution,
)
from .robustness import (
    GATE_NAMES,
    NOISE_KINDS,
    NoiseSpec,
    SweepRow,
    closed_form,
    noisy_gate,
    numeric_expectation,
    scan_roots,
    sweep,
    threshold,
)
from .witness import (
    PauliDecomposition,
    Witness,
    beta_sru,
    build_witness,
    cover_exists,
    expectation,
    expectation_via_choi,
    minimal_settings,
    gate_witness,
    pauli_decompose,
)

__all__ = [
    "DEFAULT_TOL",
    "GATE_NAMES",
    "NOISE_KINDS",
    "PAULIS",
    "ChoiState",
    "EstimateResult",
    "KrausChannel",
    "NoiseSpec",
    "PauliDecomposition",
    "ShotPlan",
    "SweepRow",
    "Witness",
    "all_pauli_strings",
    "amplitude_damping",
    "apply",
    "apply_via_choi",
    "beta_sru",
    "bit_flip",
    "build_witness",
    "channel_from_json_obj",
    "channel_to_json_obj",
    "choi_of",
    "closed_form",
    "compose",
    "cover_exists",
    "dephasing",
    "depolarising",
    "estimate_expectation",
    "estimate_expectation_exact",
    "expectation",
    "expectation_via_choi",
    "gate_matrix",
    "haar_unitary",
    "hs_inner",
    "identity_channel",
    "is_hermitian",
    "is_psd",
    "kron",
    "max_entangled",
    "minimal_settings",
    "noisy_gate",
    "numeric_expectation",
    "overlap_basis",
    "overlap_direct",
    "overlap_kraus",
    "gate_witness",
    "partial_trace",
    "pauli_channel",
    "pauli_decompose",
    "pauli_string_matrix",
    "permute_qubits",
    "purity",
    "sample_channel",
    "sample_sru",
    "scan_roots",
    "setting_distribution",
    "sweep",
    "tensor",
    "threshold",
    "unitary_channel",
    "validate_cpt",
]

__version__ = "0.1.0"
