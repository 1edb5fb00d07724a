"""Brute-force oracle: structure functions, pivotal decomposition, caps."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relfreq.oracle import (
    MAX_COMPONENTS,
    OracleError,
    StructureFunction,
    connectivity_structure,
    is_monotone,
    kofn_g_structure,
    lincon_f_structure,
    oracle_availability,
    oracle_frequency,
    oracle_pivotal,
    truth_table_structure,
)


class TestStructureFunctions:
    def test_duplicate_ids_rejected(self):
        with pytest.raises(OracleError):
            StructureFunction(("a", "a"), lambda s: True)

    def test_kofn_semantics(self):
        sf = kofn_g_structure(["a", "b", "c"], 2)
        assert sf({"a": True, "b": True, "c": False})
        assert not sf({"a": True, "b": False, "c": False})

    def test_lincon_semantics(self):
        sf = lincon_f_structure(["a", "b", "c", "d"], 2)
        assert not sf({"a": True, "b": False, "c": False, "d": True})
        assert sf({"a": False, "b": True, "c": False, "d": True})

    def test_truth_table(self):
        table = {
            (True, True): True,
            (True, False): False,
            (False, True): True,
            (False, False): False,
        }
        sf = truth_table_structure(["a", "b"], table)
        assert oracle_availability(sf, {"a": F(1, 2), "b": F(1, 3)}) == F(1, 3)

    def test_connectivity_simple_path(self):
        # s -- e1 -- m -- e2 -- t, fallible middle node
        sf = connectivity_structure(
            ids=["e1", "e2", "m"],
            nodes=["s", "m", "t"],
            edges=[("e1", "s", "m"), ("e2", "m", "t")],
            source="s",
            terminal="t",
        )
        probs = {"e1": F(1, 2), "e2": F(2, 3), "m": F(3, 4)}
        assert oracle_availability(sf, probs) == F(1, 2) * F(2, 3) * F(3, 4)

    def test_connectivity_parallel_edges(self):
        sf = connectivity_structure(
            ids=["e1", "e2"],
            nodes=["s", "t"],
            edges=[("e1", "s", "t"), ("e2", "s", "t")],
            source="s",
            terminal="t",
        )
        probs = {"e1": F(1, 2), "e2": F(1, 3)}
        assert oracle_availability(sf, probs) == 1 - F(1, 2) * F(2, 3)

    def test_monotone_detection(self):
        mono = kofn_g_structure(["a", "b", "c"], 2)
        assert is_monotone(mono)
        parity = StructureFunction(
            ("a", "b"), lambda s: s["a"] != s["b"], name="parity"
        )
        assert not is_monotone(parity)


class TestAvailability:
    def test_series_parallel_by_hand(self):
        # (a AND b) OR c
        sf = StructureFunction(
            ("a", "b", "c"), lambda s: (s["a"] and s["b"]) or s["c"]
        )
        pa, pb, pc = F(1, 2), F(2, 3), F(1, 5)
        want = pa * pb + pc - pa * pb * pc
        assert oracle_availability(sf, {"a": pa, "b": pb, "c": pc}) == want

    def test_fixed_probabilities_folded(self):
        sf = kofn_g_structure(["a", "b", "c"], 2)
        probs = {"a": F(1), "b": F(0), "c": F(1, 2)}
        # a up, b down: need c
        assert oracle_availability(sf, probs) == F(1, 2)

    def test_cap_enforced(self):
        n = MAX_COMPONENTS + 1
        ids = [f"c{i}" for i in range(n)]
        sf = kofn_g_structure(ids, 1)
        with pytest.raises(OracleError):
            oracle_availability(sf, {i: F(1, 2) for i in ids})

    def test_all_fixed_probabilities(self):
        sf = kofn_g_structure(["a", "b"], 2)
        assert oracle_availability(sf, {"a": F(1), "b": F(1)}) == 1
        assert oracle_availability(sf, {"a": F(1), "b": F(0)}) == 0


class TestPivotalAndFrequency:
    def test_pivotal_decomposition_identity(self):
        sf = lincon_f_structure(["a", "b", "c"], 2)
        probs = {"a": F(1, 3), "b": F(2, 5), "c": F(3, 7)}
        a = oracle_availability(sf, probs)
        for cid in sf.ids:
            up, down = oracle_pivotal(sf, probs, cid)
            assert a == probs[cid] * up + (1 - probs[cid]) * down

    def test_frequency_single_component(self):
        sf = StructureFunction(("a",), lambda s: s["a"])
        assert oracle_frequency(sf, {"a": F(3, 4)}, {"a": F(2)}) == F(3, 2)

    def test_frequency_series(self):
        sf = StructureFunction(("a", "b"), lambda s: s["a"] and s["b"])
        probs = {"a": F(1, 2), "b": F(2, 3)}
        rates = {"a": F(3), "b": F(5)}
        assert oracle_frequency(sf, probs, rates) == (3 + 5) * F(1, 2) * F(2, 3)

    def test_frequency_ignores_rate_of_fixed_components(self):
        sf = kofn_g_structure(["a", "b"], 1)
        probs = {"a": F(0), "b": F(1, 2)}
        rates = {"a": F(999), "b": F(1)}
        assert oracle_frequency(sf, probs, rates) == F(1) * F(1, 2)

    @given(
        st.integers(1, 4),
        st.lists(
            st.tuples(st.integers(1, 9), st.integers(0, 5)), min_size=4, max_size=4
        ),
    )
    @settings(max_examples=30, deadline=None)
    def test_frequency_nonnegative_for_monotone(self, k, params):
        ids = [f"c{i}" for i in range(4)]
        sf = kofn_g_structure(ids, k)
        probs = {i: F(pn, 10) for i, (pn, _) in zip(ids, params)}
        rates = {i: F(r) for i, (_, r) in zip(ids, params)}
        assert oracle_frequency(sf, probs, rates) >= 0
