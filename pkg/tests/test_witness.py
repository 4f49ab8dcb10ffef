import time
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruwitness.channels import (
    gate_matrix,
    haar_unitary,
    identity_channel,
    sample_channel,
    sample_sru,
    unitary_channel,
)
from ruwitness.choi import choi_of, max_entangled, overlap_direct
from ruwitness.linalg import is_psd, kron
from ruwitness.witness import (
    ALL_SETTINGS,
    PauliDecomposition,
    beta_sru,
    build_witness,
    cover_exists,
    expectation,
    expectation_via_choi,
    minimal_settings,
    gate_witness,
    pauli_decompose,
    setting_covers,
)

from golden import CNOT_TERMS, CZ_TERMS, KNOWN_CNOT_COVER


class TestBeta:
    def test_cnot_beta_half(self):
        assert beta_sru(gate_matrix("CNOT"), restarts=40, seed=7) == pytest.approx(0.5, abs=1e-6)

    def test_cz_beta_half(self):
        assert beta_sru(gate_matrix("CZ"), restarts=40, seed=7) == pytest.approx(0.5, abs=1e-6)

    def test_product_unitary_gives_one(self):
        rng = np.random.default_rng(3)
        u = kron(haar_unitary(2, rng), haar_unitary(2, rng))
        b = beta_sru(u, restarts=40, seed=1)
        assert b == pytest.approx(1.0, abs=1e-6)
        assert b <= 1 + 1e-8

    def test_identity_trace_floor(self):
        u = gate_matrix("CNOT")
        floor = abs(np.trace(u)) ** 2 / 16
        assert beta_sru(u, restarts=5, seed=0) >= floor - 1e-12

    def test_monotone_in_restarts(self):
        u = gate_matrix("CZ")
        few = beta_sru(u, restarts=3, seed=11)
        more = beta_sru(u, restarts=20, seed=11)
        assert more >= few - 1e-12

    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError):
            beta_sru(np.ones((4, 4)))


class TestBuildWitness:
    def test_cnot_self_expectation(self):
        w = gate_witness("CNOT")
        assert expectation(w, unitary_channel(gate_matrix("CNOT"))) == pytest.approx(-0.5)

    def test_trace_arithmetic(self):
        w = gate_witness("CZ")
        assert np.trace(w.matrix).real == pytest.approx(16 * 0.5 - 1)

    def test_identity_witness_is_psd(self):
        w = build_witness(np.eye(4), 1.0)
        assert is_psd(w.matrix, tol=1e-12)

    def test_matrix_is_beta_identity_minus_choi(self):
        w = gate_witness("CNOT")
        c = choi_of(unitary_channel(gate_matrix("CNOT")))
        assert np.max(np.abs(w.matrix - (0.5 * np.eye(16) - c.matrix))) == 0.0

    def test_beta_out_of_range(self):
        with pytest.raises(ValueError):
            build_witness(np.eye(4), 0.0)
        with pytest.raises(ValueError):
            build_witness(np.eye(4), 1.2)

    @settings(deadline=None, max_examples=40)
    @given(st.integers(0, 10**6))
    def test_nonnegative_on_extremal_product_states(self, seed):
        rng = np.random.default_rng(seed)
        w = gate_witness("CNOT" if seed % 2 else "CZ")
        phi = kron(haar_unitary(2, rng), haar_unitary(2, rng), np.eye(4)) @ max_entangled(4)
        value = np.real(phi.conj() @ w.matrix @ phi)
        assert value >= -1e-9


class TestPauliDecompose:
    @pytest.mark.parametrize("gate,golden", [("CNOT", CNOT_TERMS), ("CZ", CZ_TERMS)])
    def test_golden_terms_exact(self, gate, golden):
        decomp = pauli_decompose(gate_witness(gate))
        got = {s: c for c, s in decomp.terms}
        assert got == golden  # exact Fractions, zero tolerance

    @pytest.mark.parametrize("gate", ["CNOT", "CZ"])
    def test_reconstruction(self, gate):
        w = gate_witness(gate)
        decomp = pauli_decompose(w)
        assert np.max(np.abs(decomp.to_matrix() - w.matrix)) < 1e-12

    def test_terms_sorted_lexicographically(self):
        decomp = pauli_decompose(gate_witness("CNOT"))
        strings = decomp.strings()
        assert list(strings) == sorted(strings)
        assert strings[0] == "IIII"

    def test_coefficient_lookup(self):
        decomp = pauli_decompose(gate_witness("CNOT"))
        assert decomp.coefficient("IXIX") == Fraction(-1, 16)
        assert decomp.coefficient("YYXZ") == Fraction(1, 16)
        assert decomp.coefficient("XXXX") == 0

    def test_json_export_uses_64ths(self):
        obj = pauli_decompose(gate_witness("CZ")).to_json_obj()
        by_string = {e["string"]: e["coeff"] for e in obj}
        assert by_string["IIII"] == "28/64"
        assert by_string["ZZZZ"] == "-4/64"
        assert by_string["ZYIY"] == "4/64"

    def test_generic_beta_keeps_float_coefficients(self):
        w = build_witness(gate_matrix("CNOT"), beta=0.437)
        decomp = pauli_decompose(w)
        identity_coeff = decomp.coefficient("IIII")
        assert isinstance(identity_coeff, float)
        assert identity_coeff == pytest.approx(0.437 - 1 / 16)


class TestMinimalSettings:
    @pytest.mark.parametrize("gate", ["CNOT", "CZ"])
    def test_nine_settings(self, gate):
        decomp = pauli_decompose(gate_witness(gate))
        cover = minimal_settings(decomp)
        assert len(cover) == 9
        for _, s in decomp.terms:
            if s != "IIII":
                assert any(setting_covers(c, s) for c in cover)

    @pytest.mark.parametrize("gate", ["CNOT", "CZ"])
    def test_no_eight_setting_cover(self, gate):
        decomp = pauli_decompose(gate_witness(gate))
        assert not cover_exists(decomp, 8)
        assert cover_exists(decomp, 9)

    def test_known_cover_is_valid(self):
        decomp = pauli_decompose(gate_witness("CNOT"))
        for _, s in decomp.terms:
            if s != "IIII":
                assert any(setting_covers(c, s) for c in KNOWN_CNOT_COVER)

    def test_identity_only_needs_no_settings(self):
        decomp = PauliDecomposition(((Fraction(1, 2), "IIII"),))
        assert minimal_settings(decomp) == ()

    def test_single_full_weight_string(self):
        decomp = PauliDecomposition(((Fraction(1, 16), "XYZX"),))
        assert minimal_settings(decomp) == ("XYZX",)

    def test_deterministic_output(self):
        decomp = pauli_decompose(gate_witness("CZ"))
        assert minimal_settings(decomp) == minimal_settings(decomp)

    def test_candidate_pool(self):
        assert len(ALL_SETTINGS) == 81
        assert setting_covers("XYZX", "XIZX")
        assert not setting_covers("XYZX", "XIZY")


class TestExpectation:
    def test_identity_channel_not_detected(self):
        w = gate_witness("CNOT")
        assert expectation(w, identity_channel(4)) == pytest.approx(0.25)

    def test_dimension_check(self):
        with pytest.raises(ValueError):
            expectation(gate_witness("CNOT"), identity_channel(2))

    @settings(deadline=None, max_examples=50)
    @given(st.integers(0, 10**6), st.integers(1, 6))
    def test_nonnegative_on_sru_channels(self, seed, terms):
        ch = sample_sru(terms, seed=seed)
        assert expectation(gate_witness("CNOT"), ch) >= -1e-9
        assert expectation(gate_witness("CZ"), ch) >= -1e-9

    @settings(deadline=None, max_examples=25)
    @given(st.integers(0, 10**6))
    def test_kraus_route_matches_choi_route(self, seed):
        w = gate_witness("CZ")
        ch = sample_channel(4, terms=3, seed=seed)
        kraus_route = expectation(w, ch)
        choi_route = w.beta - overlap_direct(choi_of(ch), choi_of(unitary_channel(w.unitary)))
        assert kraus_route == pytest.approx(choi_route, abs=1e-10)
        assert kraus_route == pytest.approx(expectation_via_choi(w, ch), abs=1e-10)


def test_minimal_settings_runtime_budget():
    t0 = time.perf_counter()
    for gate in ("CNOT", "CZ"):
        decomp = pauli_decompose(gate_witness(gate))
        assert len(minimal_settings(decomp)) == 9
        assert not cover_exists(decomp, 8)
    assert time.perf_counter() - t0 < 1.0
