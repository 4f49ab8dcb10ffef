"""Witness operators that detect non-separable random-unitary channels.

For a two-qubit unitary U the witness is ``W = beta*1 - C_U`` where C_U is
the Choi state of U and beta is the largest squared overlap between C_U
and the Choi vector of any product unitary,

    beta = max_{V,W} |Tr[(V ⊗ W)^dag U]|^2 / 16 .

Tr[W C_M] >= 0 holds for every separable random-unitary (SRU) channel M,
so a negative measured expectation certifies that a channel is not SRU.
For both CNOT and CZ the optimum is beta = 1/2.

The module also decomposes witnesses over the 256 four-qubit Pauli strings
(coefficients come out as exact rationals with denominator 64 for the two
gate witnesses) and finds a provably minimal set of local measurement
settings covering the decomposition.  A measurement setting is a 4-letter
string over {X, Y, Z} assigning one measured axis per qubit; it covers a
Pauli string iff every non-identity factor matches the assigned axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil

import numpy as np
from scipy.optimize import minimize

from .channels import KrausChannel, gate_matrix, unitary_channel
from .choi import choi_of
from .linalg import pauli_basis, real_part

IDENTITY_STRING = "IIII"

# Start simplexes for the beta search live on [0, 2*pi)^6; the su2 map
# below is surjective onto U(2) up to global phase, which cancels in |Tr|^2.
_N_ANGLES = 6


@dataclass(frozen=True)
class Witness:
    """Detection operator beta*1 - C_U for a two-qubit unitary U."""

    beta: float
    unitary: np.ndarray
    matrix: np.ndarray
    gate: str | None = None

    def __post_init__(self) -> None:
        for field in ("unitary", "matrix"):
            a = np.array(getattr(self, field), dtype=complex)
            a.setflags(write=False)
            object.__setattr__(self, field, a)


def build_witness(u: np.ndarray, beta: float, gate: str | None = None) -> Witness:
    """Assemble beta*1 - C_U from an explicit unitary and offset."""
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta!r}")
    u = np.asarray(u, dtype=complex)
    c = choi_of(unitary_channel(u))
    matrix = beta * np.eye(c.matrix.shape[0]) - c.matrix
    return Witness(beta=float(beta), unitary=u, matrix=matrix, gate=gate)


def gate_witness(gate: str) -> Witness:
    """The CNOT or CZ witness with its certified offset beta = 1/2."""
    name = gate.upper()
    if name not in ("CNOT", "CZ"):
        raise ValueError(f"gate must be CNOT or CZ, got {gate!r}")
    return build_witness(gate_matrix(name), 0.5, gate=name)


def _su2(theta: float, phi: float, lam: float) -> np.ndarray:
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ]
    )


def product_overlap(u: np.ndarray, angles: np.ndarray) -> float:
    """|Tr[(V ⊗ W)^dag U]|^2 / 16 with V, W from two angle triples."""
    v = _su2(*angles[:3])
    w = _su2(*angles[3:])
    t = np.einsum("ij,ij->", np.kron(v, w).conj(), u)
    return (t.real**2 + t.imag**2) / 16.0


def _negative_overlap_factory(u: np.ndarray):
    """Scalar-arithmetic version of -product_overlap for the optimizer loop.

    Tr[(V ⊗ W)^dag U] = sum_{a,b,c,d} conj(V_ac) conj(W_bd) U_(ab),(cd);
    contracting W first leaves four coefficients per (a, c).  Plain complex
    scalars beat numpy by an order of magnitude at this size.
    """
    u4 = np.asarray(u, dtype=complex).reshape(2, 2, 2, 2)
    slices = {(a, c): (u4[a, 0, c, 0], u4[a, 0, c, 1], u4[a, 1, c, 0], u4[a, 1, c, 1])
              for a in range(2) for c in range(2)}

    def negative(x) -> float:
        c1 = np.cos(x[0] / 2)
        s1 = np.sin(x[0] / 2)
        c2 = np.cos(x[3] / 2)
        s2 = np.sin(x[3] / 2)
        # conjugated su2 entries
        cv = {
            (0, 0): c1,
            (0, 1): -np.exp(-1j * x[2]) * s1,
            (1, 0): np.exp(-1j * x[1]) * s1,
            (1, 1): np.exp(-1j * (x[1] + x[2])) * c1,
        }
        cw00 = c2
        cw01 = -np.exp(-1j * x[5]) * s2
        cw10 = np.exp(-1j * x[4]) * s2
        cw11 = np.exp(-1j * (x[4] + x[5])) * c2
        t = 0j
        for ac, (m00, m01, m10, m11) in slices.items():
            t += cv[ac] * (m00 * cw00 + m01 * cw01 + m10 * cw10 + m11 * cw11)
        return -(t.real**2 + t.imag**2) / 16.0

    return negative


def beta_sru(
    u: np.ndarray, restarts: int = 200, tol: float = 1e-8, seed: int = 0
) -> float:
    """Maximal squared overlap of C_U with product-unitary Choi vectors.

    Multi-start Nelder-Mead over 3 Euler-like angles per qubit, followed by
    one tight polish from the best coarse point.  Each restart draws its
    start from a private stream seeded by ``(seed, restart)``, so results
    are reproducible and monotone in the number of restarts.  Restart -1 is
    the deterministic identity start, which guarantees the |Tr U|^2/16
    floor.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (4, 4) or np.max(np.abs(u.conj().T @ u - np.eye(4))) > 1e-10:
        raise ValueError("beta_sru expects a 4x4 unitary")

    negative = _negative_overlap_factory(u)
    coarse = {"xatol": 1e-4, "fatol": 1e-6, "maxfev": 300}
    best = minimize(negative, np.zeros(_N_ANGLES), method="Nelder-Mead", options=coarse)
    for restart in range(restarts):
        rng = np.random.default_rng((seed, restart))
        x0 = rng.uniform(0.0, 2.0 * np.pi, _N_ANGLES)
        res = minimize(negative, x0, method="Nelder-Mead", options=coarse)
        if res.fun < best.fun:
            best = res
    polish = {"xatol": tol * 1e-2, "fatol": tol * 1e-4, "maxfev": 2000}
    refined = minimize(negative, best.x, method="Nelder-Mead", options=polish)
    return float(-min(best.fun, refined.fun))


@dataclass(frozen=True)
class PauliDecomposition:
    """Nonzero Pauli-string coefficients of a witness, in lexicographic order.

    Coefficients are exact ``Fraction`` values whenever they snap to a
    rational with denominator 64, floats otherwise.
    """

    terms: tuple[tuple[Fraction | float, str], ...]

    def coefficient(self, string: str) -> Fraction | float:
        for coeff, s in self.terms:
            if s == string:
                return coeff
        return Fraction(0)

    def strings(self) -> tuple[str, ...]:
        return tuple(s for _, s in self.terms)

    def to_matrix(self) -> np.ndarray:
        strings, stack = pauli_basis(4)
        index = {s: i for i, s in enumerate(strings)}
        out = np.zeros((16, 16), dtype=complex)
        for coeff, s in self.terms:
            out += float(coeff) * stack[index[s]]
        return out

    def to_json_obj(self) -> list[dict]:
        return [{"coeff": _coeff_str(c), "string": s} for c, s in self.terms]


def _coeff_str(coeff: Fraction | float) -> str:
    if isinstance(coeff, Fraction) and 64 % coeff.denominator == 0:
        return f"{coeff.numerator * (64 // coeff.denominator)}/64"
    return repr(float(coeff))


def pauli_decompose(w: Witness, cutoff: float = 1e-12) -> PauliDecomposition:
    """Expand the witness over Pauli strings: coeff(P) = Tr[P W]/16."""
    strings, stack = pauli_basis(4)
    coeffs = np.einsum("pij,ji->p", stack, w.matrix) / 16.0
    if np.max(np.abs(coeffs.imag)) > 1e-12:
        raise ArithmeticError("witness matrix is not Hermitian")
    terms: list[tuple[Fraction | float, str]] = []
    for s, c in zip(strings, coeffs.real):
        snapped = round(c * 64)
        if abs(c - snapped / 64) <= 1e-9:
            if snapped == 0:
                continue
            terms.append((Fraction(snapped, 64), s))
        elif abs(c) > cutoff:
            terms.append((float(c), s))
    return PauliDecomposition(tuple(terms))


# ---------------------------------------------------------------------------
# Minimal measurement-setting covers (exact branch-and-bound set cover)
# ---------------------------------------------------------------------------

ALL_SETTINGS = tuple("".join(axes) for axes in product("XYZ", repeat=4))


def setting_covers(setting: str, string: str) -> bool:
    """A setting covers a Pauli string iff non-identity factors match its axes."""
    return all(p == "I" or p == a for p, a in zip(string, setting))


def _cover_problem(decomp: PauliDecomposition) -> tuple[list[str], list[int], int]:
    strings = [s for _, s in decomp.terms if s != IDENTITY_STRING]
    masks = []
    for setting in ALL_SETTINGS:
        m = 0
        for i, p in enumerate(strings):
            if setting_covers(setting, p):
                m |= 1 << i
        masks.append(m)
    universe = (1 << len(strings)) - 1
    return strings, masks, universe


def _greedy_cover(masks: list[int], universe: int) -> list[int]:
    chosen: list[int] = []
    covered = 0
    while covered != universe:
        gain, pick = max(
            ((masks[j] & ~covered).bit_count(), -j) for j in range(len(masks))
        )
        if gain == 0:
            raise ValueError("strings cannot be covered by any setting")
        chosen.append(-pick)
        covered |= masks[-pick]
    return chosen


def _candidates_per_element(masks: list[int], n_elems: int) -> list[list[int]]:
    return [[j for j, m in enumerate(masks) if m >> i & 1] for i in range(n_elems)]


def _min_cover_size(
    masks: list[int], universe: int, cand_for: list[list[int]], upper: int
) -> int:
    """Exact minimum cover size by exhaustive branch-and-bound."""
    best = upper
    max_gain = max((m.bit_count() for m in masks), default=1)

    def rec(covered: int, used: int) -> None:
        nonlocal best
        if covered == universe:
            best = min(best, used)
            return
        remaining = (universe & ~covered).bit_count()
        if used + ceil(remaining / max_gain) >= best:
            return
        # branch on the uncovered element with the fewest covering settings
        element = min(
            (i for i in range(len(cand_for)) if not covered >> i & 1),
            key=lambda i: len(cand_for[i]),
        )
        for j in cand_for[element]:
            rec(covered | masks[j], used + 1)

    rec(0, 0)
    return best


def _covers_of_size(
    masks: list[int], universe: int, cand_for: list[list[int]], size: int
) -> set[tuple[int, ...]]:
    """Every cover using at most ``size`` settings (each listed once)."""
    found: set[tuple[int, ...]] = set()
    max_gain = max((m.bit_count() for m in masks), default=1)

    def rec(covered: int, chosen: list[int]) -> None:
        if covered == universe:
            found.add(tuple(sorted(chosen)))
            return
        remaining = (universe & ~covered).bit_count()
        if len(chosen) + ceil(remaining / max_gain) > size:
            return
        # branching on the lowest uncovered element makes each cover unique
        element = next(i for i in range(len(cand_for)) if not covered >> i & 1)
        for j in cand_for[element]:
            chosen.append(j)
            rec(covered | masks[j], chosen)
            chosen.pop()

    rec(0, [])
    return found


def cover_exists(decomp: PauliDecomposition, size: int) -> bool:
    """Whether ``size`` measurement settings suffice to cover the decomposition."""
    strings, masks, universe = _cover_problem(decomp)
    if not strings:
        return True
    cand_for = _candidates_per_element(masks, len(strings))
    if any(not c for c in cand_for):
        return False
    return _min_cover_size(masks, universe, cand_for, upper=size + 1) <= size


def minimal_settings(decomp: PauliDecomposition) -> tuple[str, ...]:
    """An exactly minimal measurement-setting cover of all non-identity strings.

    Branch-and-bound over the 81 candidate settings certifies minimality;
    ties between equal-size covers break lexicographically on the sorted
    axis strings, so the output is reproducible.
    """
    strings, masks, universe = _cover_problem(decomp)
    if not strings:
        return ()
    cand_for = _candidates_per_element(masks, len(strings))
    if any(not c for c in cand_for):
        raise ValueError("some Pauli string admits no measurement setting")
    upper = len(_greedy_cover(masks, universe))
    size = _min_cover_size(masks, universe, cand_for, upper=upper + 1)
    covers = _covers_of_size(masks, universe, cand_for, size)
    return min(tuple(sorted(ALL_SETTINGS[j] for j in ids)) for ids in covers)


def settings_to_json_obj(settings: tuple[str, ...]) -> list[str]:
    return list(settings)


def expectation(w: Witness, m: KrausChannel) -> float:
    """Tr[W C_M] = beta - (1/16) sum_k |Tr[A_k U^dag]|^2.

    Negative means the channel is detected as non-SRU.
    """
    if m.dim != 4:
        raise ValueError(f"channel must act on dimension 4, got {m.dim}")
    t = np.einsum("kij,ij->k", m.stacked(), w.unitary.conj())
    return float(w.beta - np.sum(t.real**2 + t.imag**2) / 16.0)


def expectation_via_choi(w: Witness, m: KrausChannel) -> float:
    """Same expectation through the explicit Choi matrix (cross-check route)."""
    c = choi_of(m)
    return real_part(np.einsum("ij,ji->", w.matrix, c.matrix), tol=1e-9)
