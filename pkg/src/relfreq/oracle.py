"""Brute-force reference: exhaustive state enumeration of a structure
function gives exact availability, and pivotal decomposition gives exact
failure frequency.  Deliberately simple and independent of the
transfer-matrix engine; the engine, not the oracle, handles scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Sequence, Tuple

from .scalars import as_exact

MAX_COMPONENTS = 24


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class StructureFunction:
    """Total Boolean map from component up/down states to system state."""

    ids: Tuple[str, ...]
    fn: Callable[[Dict[str, bool]], bool]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(self.ids))
        if len(set(self.ids)) != len(self.ids):
            raise OracleError("component ids must be distinct")

    def __call__(self, state: Dict[str, bool]) -> bool:
        return bool(self.fn(state))


def kofn_g_structure(ids: Sequence[str], k: int) -> StructureFunction:
    ids = tuple(ids)
    if not (1 <= k <= len(ids)):
        raise OracleError(f"k={k} out of range for n={len(ids)}")
    return StructureFunction(
        ids, lambda s: sum(s[i] for i in ids) >= k, name=f"kofn-g:{k}/{len(ids)}"
    )


def lincon_f_structure(ids: Sequence[str], k: int) -> StructureFunction:
    """Fails iff at least k consecutive components (in list order) are down."""
    ids = tuple(ids)
    if not (1 <= k <= len(ids)):
        raise OracleError(f"k={k} out of range for n={len(ids)}")

    def up(state):
        run = 0
        for i in ids:
            run = 0 if state[i] else run + 1
            if run >= k:
                return False
        return True

    return StructureFunction(ids, up, name=f"lincon-f:{k}/{len(ids)}")


def truth_table_structure(ids: Sequence[str], table: Mapping) -> StructureFunction:
    """Explicit truth table keyed by tuples of booleans in id order."""
    ids = tuple(ids)
    table = dict(table)
    return StructureFunction(
        ids, lambda s: table[tuple(s[i] for i in ids)], name="truth-table"
    )


def connectivity_structure(
    ids: Sequence[str],
    nodes: Sequence[str],
    edges: Sequence[Tuple[str, str, str]],
    source: str,
    terminal: str,
    name: str = "two-terminal",
) -> StructureFunction:
    """s-t connectivity over failing nodes and edges.

    ``edges`` are (edge_id, node_a, node_b).  An edge is usable only if it is
    up and both endpoints are up; ids absent from ``ids`` are treated as
    perfect.  Source and terminal must themselves be up for success.
    """
    ids = tuple(ids)
    id_set = set(ids)
    nodes = tuple(nodes)
    edges = tuple(edges)

    def up(state):
        def node_up(v):
            return state[v] if v in id_set else True

        if not (node_up(source) and node_up(terminal)):
            return False
        # union-find over up nodes via usable edges
        parent = {v: v for v in nodes if node_up(v)}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for eid, a, b in edges:
            euse = state[eid] if eid in id_set else True
            if euse and a in parent and b in parent:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        return find(source) == find(terminal)

    return StructureFunction(ids, up, name=name)


def _split_fixed(probs: Mapping[str, Fraction]):
    """Components with p in {0,1} are folded out of the enumeration."""
    free, fixed = [], {}
    for cid, p in probs.items():
        p = as_exact(p)
        if p == 0:
            fixed[cid] = False
        elif p == 1:
            fixed[cid] = True
        else:
            free.append(cid)
    return free, fixed


def _integer_weights(free, probs):
    """Per-component (up, down) integer weights over a common denominator."""
    nums, dens = [], []
    denom = 1
    for cid in free:
        p = probs[cid]
        nums.append((p.numerator, p.denominator - p.numerator))
        dens.append(p.denominator)
        denom *= p.denominator
    return nums, dens, denom


def _enumerate(sf, probs, want_pivotals: bool):
    """One exhaustive pass over the free components.

    Runs over integers (a common denominator is factored out) so that the
    inner loop is gcd-free; returns the availability and, when requested,
    the pivotal differences A(p_i:=1) - A(p_i:=0) for every free id.
    """
    free, fixed = _split_fixed(probs)
    m = len(free)
    if m > MAX_COMPONENTS:
        raise OracleError(f"{m} components exceed the enumeration cap of {MAX_COMPONENTS}")
    nums, dens, denom = _integer_weights(free, probs)
    total = 0
    diff = [0] * m  # sum of weights-without-i, signed by the state of i
    prefix = [1] * (m + 1)
    for bits in itertools.product((True, False), repeat=m):
        state = dict(fixed)
        for cid, b in zip(free, bits):
            state[cid] = b
        if not sf(state):
            continue
        factors = [nums[i][0] if bits[i] else nums[i][1] for i in range(m)]
        w = 1
        for f in factors:
            w *= f
        total += w
        if want_pivotals:
            for i in range(m):
                prefix[i + 1] = prefix[i] * factors[i]
            suffix = 1
            for i in range(m - 1, -1, -1):
                w_wo = prefix[i] * suffix
                diff[i] += w_wo if bits[i] else -w_wo
                suffix *= factors[i]
    availability = Fraction(total, denom) if denom != 1 else Fraction(total)
    pivotals = {
        cid: Fraction(diff[i] * dens[i], denom) for i, cid in enumerate(free)
    }
    return availability, pivotals, free


def oracle_availability(sf: StructureFunction, probs: Mapping) -> Fraction:
    """Sum over up-states of the product of p_i / q_i, exact rational."""
    probs = {cid: as_exact(probs[cid]) for cid in sf.ids}
    availability, _, _ = _enumerate(sf, probs, want_pivotals=False)
    return availability


def oracle_pivotal(sf: StructureFunction, probs: Mapping, pivot: str):
    """(A with p_pivot := 1, A with p_pivot := 0)."""
    up = {cid: as_exact(probs[cid]) for cid in sf.ids}
    up[pivot] = Fraction(1)
    down = dict(up)
    down[pivot] = Fraction(0)
    return oracle_availability(sf, up), oracle_availability(sf, down)


def oracle_frequency(sf: StructureFunction, probs: Mapping, rates: Mapping) -> Fraction:
    """sum_i lambda_i p_i (A(p_i:=1) - A(p_i:=0)), exact by multilinearity.

    Components fixed at p=0 contribute nothing (the p_i factor vanishes) and
    perfect components carry zero rate, so only free components enter.
    """
    probs = {cid: as_exact(probs[cid]) for cid in sf.ids}
    _, pivotals, free = _enumerate(sf, probs, want_pivotals=True)
    total = Fraction(0)
    for cid in free:
        lam = as_exact(rates[cid])
        if lam != 0:
            total += lam * probs[cid] * pivotals[cid]
    return total


def is_monotone(sf: StructureFunction) -> bool:
    """Check coherence by sampling every single-bit upgrade."""
    n = len(sf.ids)
    if n > 16:
        raise OracleError("monotonicity check capped at 16 components")
    for bits in itertools.product((True, False), repeat=n):
        state = dict(zip(sf.ids, bits))
        val = sf(state)
        for cid, b in zip(sf.ids, bits):
            if not b:
                upgraded = dict(state)
                upgraded[cid] = True
                if val and not sf(upgraded):
                    return False
    return True
