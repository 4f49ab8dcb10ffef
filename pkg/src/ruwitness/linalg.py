"""Dense complex linear algebra for few-qubit objects (dimensions 2 to 16).

Everything operates on plain numpy arrays (complex128, row-major).  The
qubit convention is big-endian package-wide: qubit A is the most
significant tensor factor, then B, C, D.  All functions are pure and never
mutate their inputs, so values can be shared freely across threads.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from itertools import product
from typing import Iterator

import numpy as np

# Single default for Hermiticity / positivity / trace checks.  Every
# construction in the package is exact up to double rounding, so one loose
# tolerance suffices; callers can override per call.
DEFAULT_TOL = 1e-10

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULIS = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}

for _m in PAULIS.values():
    _m.setflags(write=False)
del _m


def kron(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor most significant."""
    if not factors:
        raise ValueError("kron needs at least one factor")
    return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))


def dagger(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr[a^dag b]."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return complex(np.einsum("ij,ij->", a.conj(), b))


def real_part(z: complex, tol: float = 1e-12) -> float:
    """Collapse a should-be-real complex number, guarding the imaginary part."""
    z = complex(z)
    if abs(z.imag) >= tol:
        raise ArithmeticError(f"expected a real value, got imaginary part {z.imag!r}")
    return float(z.real)


def pauli_string_matrix(labels: str) -> np.ndarray:
    """Tensor product of single-qubit Paulis, e.g. ``"IXIX"`` -> I⊗X⊗I⊗X."""
    try:
        mats = [PAULIS[c] for c in labels]
    except KeyError as exc:
        raise ValueError(f"invalid Pauli label {exc.args[0]!r} in {labels!r}") from None
    if not mats:
        raise ValueError("empty Pauli string")
    return kron(*mats)


def all_pauli_strings(n_qubits: int = 4) -> Iterator[str]:
    """All n-qubit Pauli strings in lexicographic order (IIII first)."""
    for labels in product("IXYZ", repeat=n_qubits):
        yield "".join(labels)


def is_hermitian(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and bool(np.max(np.abs(a - a.conj().T)) <= tol)


def is_psd(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff the smallest eigenvalue is >= -tol.  Input must be Hermitian."""
    if not is_hermitian(a, tol):
        raise ValueError("is_psd expects a Hermitian matrix")
    eigs = np.linalg.eigvalsh(np.asarray(a))
    return bool(eigs[0] >= -tol)


def is_density_matrix(rho: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    rho = np.asarray(rho)
    if not is_hermitian(rho, tol):
        return False
    if abs(np.trace(rho) - 1) > tol:
        return False
    return is_psd(rho, tol)


def partial_trace(mat: np.ndarray, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one factor of a bipartite operator on dims[0]*dims[1]."""
    d1, d2 = dims
    t = np.asarray(mat).reshape(d1, d2, d1, d2)
    if keep == 0:
        return np.einsum("abcb->ac", t)
    if keep == 1:
        return np.einsum("abad->bd", t)
    raise ValueError("keep must be 0 or 1")


@lru_cache(maxsize=4)
def pauli_basis(n_qubits: int = 4) -> tuple[tuple[str, ...], np.ndarray]:
    """All Pauli strings of a given length and their stacked matrices."""
    strings = tuple(all_pauli_strings(n_qubits))
    stack = np.stack([pauli_string_matrix(s) for s in strings])
    stack.setflags(write=False)
    return strings, stack
