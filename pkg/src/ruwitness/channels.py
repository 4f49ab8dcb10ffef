"""Quantum channels in Kraus form.

A channel is a completely positive trace-preserving (CPT) map stored as a
finite list of Kraus operators ``A_k`` with ``sum_k A_k^dag A_k = 1``.
This module provides the gate set used by the witness construction, the
four standard single-qubit noise models, channel algebra (tensoring,
sequential composition, application to density matrices) and seeded
samplers for separable random-unitary and generic random channels.

Conventions
-----------
* Gates use the big-endian qubit order: the control of CNOT/CZ is the most
  significant qubit.
* Kraus operators that are exactly the zero matrix are dropped on
  construction; tensor/compose grow Kraus counts multiplicatively so this
  keeps them minimal.
* A Kraus list is only unique up to a unitary gauge, so channel equality
  is never defined entrywise on Kraus operators; compare Choi states
  instead (see :mod:`ruwitness.choi`).

Noise models (single qubit, strength ``q`` resp. ``gamma``):

* depolarising:  probabilities (1 - 3q/4, q/4, q/4, q/4) on (1, X, Y, Z)
* dephasing:     probabilities (1 - q, 0, 0, q)
* bit flip:      probabilities (1 - q, q, 0, 0)
* amplitude damping (not random-unitary):
      A1 = [[1, 0], [0, sqrt(1 - gamma)]],  A2 = [[0, sqrt(gamma)], [0, 0]]
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    dagger,
    is_density_matrix,
)

_SQRT2 = np.sqrt(2.0)

_GATES = {
    "I": np.eye(2, dtype=complex),
    "X": PAULI_X,
    "Z": PAULI_Z,
    "H": (PAULI_X + PAULI_Z) / _SQRT2,
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex),
}

for _m in _GATES.values():
    _m.setflags(write=False)
del _m


def gate_matrix(name: str) -> np.ndarray:
    """Fixed unitary for a named gate (case-insensitive)."""
    try:
        return _GATES[name.upper()].copy()
    except KeyError:
        raise ValueError(
            f"unknown gate {name!r}; expected one of {sorted(_GATES)}"
        ) from None


@dataclass(frozen=True)
class KrausChannel:
    """A CPT map as a non-empty tuple of dim x dim Kraus operators."""

    dim: int
    kraus: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        ops = []
        for a in self.kraus:
            a = np.array(a, dtype=complex)
            if a.shape != (self.dim, self.dim):
                raise ValueError(
                    f"Kraus operator shape {a.shape} does not match dim {self.dim}"
                )
            if not a.any():  # exact zeros carry no weight
                continue
            a.setflags(write=False)
            ops.append(a)
        if not ops:
            raise ValueError("channel needs at least one nonzero Kraus operator")
        object.__setattr__(self, "kraus", tuple(ops))

    @property
    def n_kraus(self) -> int:
        return len(self.kraus)

    def stacked(self) -> np.ndarray:
        """Kraus operators as one (n_kraus, dim, dim) array."""
        return np.stack(self.kraus)


def unitary_channel(u: np.ndarray) -> KrausChannel:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("unitary_channel expects a square matrix")
    return KrausChannel(u.shape[0], (u,))


def identity_channel(dim: int) -> KrausChannel:
    return unitary_channel(np.eye(dim, dtype=complex))


def validate_cpt(ch: KrausChannel, tol: float = DEFAULT_TOL) -> bool:
    """Check the completeness relation ||sum A^dag A - 1||_max <= tol."""
    s = sum(dagger(a) @ a for a in ch.kraus)
    return bool(np.max(np.abs(s - np.eye(ch.dim))) <= tol)


def _check_unit_interval(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")


def pauli_channel(p0: float, p1: float, p2: float, p3: float) -> KrausChannel:
    """Single-qubit mixture of Pauli conjugations with the given probabilities.

    Zero-probability terms are dropped, so e.g. ``pauli_channel(1, 0, 0, 0)``
    is the one-Kraus identity channel.
    """
    probs = np.array([p0, p1, p2, p3], dtype=float)
    if np.any(probs < 0):
        raise ValueError(f"Pauli probabilities must be non-negative, got {probs.tolist()}")
    if abs(probs.sum() - 1.0) > 1e-12:
        raise ValueError(f"Pauli probabilities must sum to 1, got {probs.sum()!r}")
    paulis = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)
    kraus = tuple(np.sqrt(p) * s for p, s in zip(probs, paulis) if p > 0)
    return KrausChannel(2, kraus)


def depolarising(q: float) -> KrausChannel:
    _check_unit_interval("q", q)
    return pauli_channel(1 - 0.75 * q, q / 4, q / 4, q / 4)


def dephasing(q: float) -> KrausChannel:
    _check_unit_interval("q", q)
    return pauli_channel(1 - q, 0.0, 0.0, q)


def bit_flip(q: float) -> KrausChannel:
    _check_unit_interval("q", q)
    return pauli_channel(1 - q, q, 0.0, 0.0)


def amplitude_damping(gamma: float) -> KrausChannel:
    _check_unit_interval("gamma", gamma)
    a1 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - gamma)]], dtype=complex)
    a2 = np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]], dtype=complex)
    return KrausChannel(2, (a1, a2))


def tensor(a: KrausChannel, b: KrausChannel) -> KrausChannel:
    """Parallel application a ⊗ b; Kraus set is all pairwise Kronecker products."""
    kraus = tuple(np.kron(x, y) for x in a.kraus for y in b.kraus)
    return KrausChannel(a.dim * b.dim, kraus)


def compose(after: KrausChannel, before: KrausChannel) -> KrausChannel:
    """Sequential composition after∘before (``before`` acts first)."""
    if after.dim != before.dim:
        raise ValueError(f"dimension mismatch: {after.dim} vs {before.dim}")
    kraus = tuple(b @ a for b in after.kraus for a in before.kraus)
    return KrausChannel(after.dim, kraus)


def _apply(ch: KrausChannel, mat: np.ndarray) -> np.ndarray:
    """sum_k A_k mat A_k^dag without density-matrix validation."""
    k = ch.stacked()
    return np.einsum("kij,jl,kml->im", k, mat, k.conj())


def apply(ch: KrausChannel, rho: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Apply the channel to a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ch.dim, ch.dim):
        raise ValueError(f"state shape {rho.shape} does not match channel dim {ch.dim}")
    if not is_density_matrix(rho, tol):
        raise ValueError("input is not a valid density matrix")
    return _apply(ch, rho)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian with phase fixing."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / _SQRT2
    q, r = np.linalg.qr(z)
    phase = np.diagonal(r).copy()
    phase /= np.abs(phase)
    return q * phase


def sample_sru(terms: int, seed: int = 0) -> KrausChannel:
    """Random separable random-unitary channel on two qubits.

    Kraus set is {sqrt(p_k) V_k ⊗ W_k} with Haar-random single-qubit
    unitaries and probabilities drawn uniformly from the simplex.
    Deterministic for a fixed seed.
    """
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    rng = np.random.default_rng(seed)
    probs = rng.dirichlet(np.ones(terms))
    kraus = tuple(
        np.sqrt(p) * np.kron(haar_unitary(2, rng), haar_unitary(2, rng)) for p in probs
    )
    return KrausChannel(4, kraus)


def sample_channel(dim: int, terms: int, seed: int = 0) -> KrausChannel:
    """Random CPT channel: Gaussian Kraus stack normalised through S^{-1/2}.

    Mainly a test utility; covers channels far outside the random-unitary
    set, unlike :func:`sample_sru`.
    """
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((terms, dim, dim)) + 1j * rng.standard_normal((terms, dim, dim))) / _SQRT2
    s = np.einsum("kji,kjl->il", g.conj(), g)  # sum_k G^dag G
    w, v = np.linalg.eigh(s)
    inv_sqrt = (v * (1.0 / np.sqrt(w))) @ v.conj().T
    return KrausChannel(dim, tuple(gi @ inv_sqrt for gi in g))


def channel_to_json_obj(ch: KrausChannel) -> dict:
    """JSON form: {"dim": n, "kraus": [[[re, im], ...] ...]}, row-major entries."""
    return {
        "dim": ch.dim,
        "kraus": [
            [[float(z.real), float(z.imag)] for z in a.ravel()] for a in ch.kraus
        ],
    }


def channel_from_json_obj(obj: dict) -> KrausChannel:
    dim = int(obj["dim"])
    kraus = tuple(
        np.array([complex(re, im) for re, im in flat], dtype=complex).reshape(dim, dim)
        for flat in obj["kraus"]
    )
    return KrausChannel(dim, kraus)
