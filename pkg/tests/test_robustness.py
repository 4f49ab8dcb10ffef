import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruwitness.channels import gate_matrix, unitary_channel
from ruwitness.choi import choi_of
from ruwitness.robustness import (
    GATE_NAMES,
    NOISE_KINDS,
    NoiseSpec,
    closed_form,
    noisy_gate,
    numeric_expectation,
    scan_roots,
    sweep,
    sweep_json_obj,
    threshold,
    threshold_json_obj,
    write_sweep_csv,
)
from ruwitness.witness import expectation, gate_witness

ALL_COMBOS = [(g, k) for g in GATE_NAMES for k in NOISE_KINDS]


class TestNoiseSpec:
    def test_valid(self):
        noise = NoiseSpec("dephasing", 0.1, 0.9)
        assert (noise.q1, noise.q2) == (0.1, 0.9)

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            NoiseSpec("thermal", 0.1, 0.1)

    def test_bad_strength(self):
        with pytest.raises(ValueError):
            NoiseSpec("dephasing", -0.1, 0.5)
        with pytest.raises(ValueError):
            NoiseSpec("dephasing", 0.5, 1.1)


class TestNoisyGate:
    def test_zero_noise_equals_bare_gate(self):
        for kind in NOISE_KINDS:
            ch = noisy_gate("CNOT", NoiseSpec(kind, 0.0, 0.0))
            bare = unitary_channel(gate_matrix("CNOT"))
            assert np.max(np.abs(choi_of(ch).matrix - choi_of(bare).matrix)) < 1e-12

    def test_depolarising_kraus_count(self):
        ch = noisy_gate("CNOT", NoiseSpec("depolarising", 0.4, 0.4))
        assert ch.n_kraus == 256  # 16 * 1 * 16 pairwise products, none zero

    def test_amplitude_damping_one_sided_count(self):
        ch = noisy_gate("CZ", NoiseSpec("amplitude_damping", 0.4, 0.0))
        assert ch.n_kraus == 4

    def test_unknown_gate(self):
        with pytest.raises(ValueError):
            noisy_gate("SWAP", NoiseSpec("dephasing", 0.1, 0.1))


class TestClosedForm:
    def test_depolarising_pre_only_reduction(self):
        for q in (0.0, 0.17, 0.62, 1.0):
            qbar = 1 - 0.75 * q
            assert closed_form("CNOT", "depolarising", q, 0.0) == pytest.approx(
                0.5 - qbar**2, abs=1e-14
            )

    def test_depolarising_equal_strength_polynomial(self):
        for q in (0.0, 0.21, 0.5, 1.0):
            expected = 0.5 - (q - 2) ** 2 * (5 * q**2 - 8 * q + 4) / 16
            assert closed_form("CZ", "depolarising", q, q) == pytest.approx(expected, abs=1e-12)

    def test_amplitude_damping_cz_equal_quartic(self):
        # equal strengths collapse the CZ expression to 1/2 - (1 + gbar)^4/16
        for g in (0.0, 0.31, 0.8):
            value = closed_form("CZ", "amplitude_damping", g, g)
            assert value == pytest.approx(0.5 - (2 - g) ** 4 / 16, abs=1e-12)

    def test_depolarising_is_gate_independent(self):
        for q1 in (0.0, 0.3, 0.9):
            for q2 in (0.0, 0.5, 1.0):
                assert closed_form("CNOT", "depolarising", q1, q2) == closed_form(
                    "CZ", "depolarising", q1, q2
                )

    def test_bitflip_cnot_equals_dephasing_cnot(self):
        grid = [i / 20 for i in range(21)]
        for q1 in grid:
            for q2 in grid:
                assert closed_form("CNOT", "bitflip", q1, q2) == closed_form(
                    "CNOT", "dephasing", q1, q2
                )

    def test_exchange_symmetry(self):
        grid = [i / 6 for i in range(7)]
        for gate, kind in ALL_COMBOS:
            for q1 in grid:
                for q2 in grid:
                    assert closed_form(gate, kind, q1, q2) == pytest.approx(
                        closed_form(gate, kind, q2, q1), abs=1e-14
                    )

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            closed_form("CNOT", "dephasing", 1.2, 0.0)

    @settings(deadline=None, max_examples=60)
    @given(
        st.sampled_from(ALL_COMBOS),
        st.floats(0, 1, allow_nan=False),
        st.floats(0, 1, allow_nan=False),
    )
    def test_matches_kraus_numerics(self, combo, q1, q2):
        gate, kind = combo
        analytic = closed_form(gate, kind, q1, q2)
        numeric = expectation(gate_witness(gate), noisy_gate(gate, NoiseSpec(kind, q1, q2)))
        assert analytic == pytest.approx(numeric, abs=1e-10)

    def test_depolarising_numeric_cz_route(self):
        # the shared formula must also match the CZ witness numerics
        noise = NoiseSpec("depolarising", 0.25, 0.65)
        assert closed_form("CZ", "depolarising", 0.25, 0.65) == pytest.approx(
            numeric_expectation("CZ", noise), abs=1e-10
        )


class TestThreshold:
    def test_depolarising_pre_only_exact_root(self):
        roots = threshold("CNOT", "depolarising", "before_only")
        assert len(roots) == 1
        assert roots[0] == pytest.approx((4 - 2 * math.sqrt(2)) / 3, abs=1e-9)

    def test_dephasing_pre_only_exact_root(self):
        for gate in GATE_NAMES:
            roots = threshold(gate, "dephasing", "before_only")
            assert len(roots) == 1
            assert roots[0] == pytest.approx(1 - 1 / math.sqrt(2), abs=1e-9)

    def test_cz_dephasing_equal_two_roots(self):
        roots = threshold("CZ", "dephasing", "equal")
        assert len(roots) == 2
        lo = (1 - math.sqrt(math.sqrt(2) - 1)) / 2
        hi = (1 + math.sqrt(math.sqrt(2) - 1)) / 2
        assert roots[0] == pytest.approx(lo, abs=1e-9)
        assert roots[1] == pytest.approx(hi, abs=1e-9)

    def test_cz_bitflip_equal_exact_root(self):
        roots = threshold("CZ", "bitflip", "equal")
        assert roots == [pytest.approx(1 - 2 ** (-0.25), abs=1e-9)]

    def test_amplitude_damping_pre_only_exact_root(self):
        expected = 1 - (8**0.25 - 1) ** 2
        for gate in GATE_NAMES:
            roots = threshold(gate, "amplitude_damping", "before_only")
            assert roots == [pytest.approx(expected, abs=1e-9)]

    def test_before_equals_after(self):
        for gate, kind in ALL_COMBOS:
            before = threshold(gate, kind, "before_only")
            after = threshold(gate, kind, "after_only")
            assert before == pytest.approx(after, abs=1e-9)

    def test_no_sign_change_gives_empty(self):
        assert scan_roots(lambda t: 1.0 + t) == []
        assert scan_roots(lambda t: -1.0) == []

    def test_scan_finds_multiple_crossings(self):
        roots = scan_roots(lambda t: (t - 0.2) * (t - 0.6))
        assert roots == pytest.approx([0.2, 0.6], abs=1e-9)
        roots = scan_roots(lambda t: 0.3 - t)
        assert roots == pytest.approx([0.3], abs=1e-9)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            threshold("CNOT", "dephasing", "sideways")

    def test_json_record(self):
        roots = threshold("CNOT", "depolarising", "before_only")
        obj = threshold_json_obj("CNOT", "depolarising", "before_only", roots)
        assert obj["gate"] == "cnot"
        assert obj["noise"] == "depolarising"
        assert obj["mode"] == "before_only"
        assert obj["roots"] == [pytest.approx((4 - 2 * math.sqrt(2)) / 3, abs=1e-9)]


class TestSweep:
    def test_noiseless_corner_detected(self):
        rows = sweep("CNOT", "bitflip", 3)
        assert rows[0].q1 == 0 and rows[0].q2 == 0
        assert rows[0].value == pytest.approx(-0.5)
        assert rows[0].detected

    def test_depolarising_full_noise_corner(self):
        rows = sweep("CNOT", "depolarising", 2)
        corner = rows[-1]
        assert corner.q1 == 1 and corner.q2 == 1
        assert corner.value == pytest.approx(7 / 16)
        assert not corner.detected

    def test_row_major_order_and_symmetry(self):
        n = 5
        rows = sweep("CZ", "amplitude_damping", n)
        assert len(rows) == n * n
        value = {(r.q1, r.q2): r.value for r in rows}
        for r in rows:
            assert value[(r.q2, r.q1)] == pytest.approx(r.value, abs=1e-14)
        expected_order = [(i / (n - 1), j / (n - 1)) for i in range(n) for j in range(n)]
        assert [(r.q1, r.q2) for r in rows] == expected_order

    def test_minimum_grid(self):
        with pytest.raises(ValueError):
            sweep("CNOT", "dephasing", 1)

    def test_csv_golden(self):
        buf = io.StringIO()
        write_sweep_csv(sweep("CNOT", "depolarising", 2), buf)
        assert buf.getvalue() == (
            "q1,q2,value,detected\n"
            "0.00000000000,0.00000000000,-0.500000000000,true\n"
            "0.00000000000,1.00000000000,0.437500000000,false\n"
            "1.00000000000,0.00000000000,0.437500000000,false\n"
            "1.00000000000,1.00000000000,0.437500000000,false\n"
        )

    def test_json_form(self):
        obj = sweep_json_obj("CZ", "bitflip", sweep("CZ", "bitflip", 2))
        assert obj["gate"] == "cz" and obj["noise"] == "bitflip"
        assert len(obj["rows"]) == 4
        assert obj["rows"][0] == {"q1": 0.0, "q2": 0.0, "value": -0.5, "detected": True}
