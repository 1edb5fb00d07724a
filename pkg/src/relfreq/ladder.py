"""Two-terminal availability and failure frequency of a simple ladder.

Cell i contributes rail edges a_i (top) and c_i (bottom), rung b_i, and
nodes S_i, T_i; edge a_i joins S_{i-1} to S_i, c_i joins T_{i-1} to T_i,
and b_i joins S_i to T_i.  The source is S_0; cell 0 therefore has a
perfect entry edge (a_0 = 1) and no bottom rail (c_0 = 0).  Each cell maps
to one dense 3x3 transfer matrix; the availability between S_0 and S_n or
T_n is a product of those matrices.  For identical cells the closed form
in the three eigenvalues is evaluated through a rational three-term
recurrence, so exact inputs give exact outputs with no square roots.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .core import (
    Component,
    MatrixPair,
    MultilinearPoly,
    ReliabilityError,
    ReliabilityReport,
    TransferSystem,
    single_pass,
)
from .oracle import StructureFunction, connectivity_structure
from .scalars import EXACT, Scalar, as_exact, check_mode, convert

TERMINAL_S = "Sn"
TERMINAL_T = "Tn"


@dataclass(frozen=True)
class LadderCell:
    """Edges a (top rail), b (rung), c (bottom rail) and nodes S, T of one cell."""

    a: Component
    b: Component
    c: Component
    S: Component
    T: Component
    index: int = 0

    def components(self) -> Tuple[Component, ...]:
        return (self.a, self.b, self.c, self.S, self.T)


@dataclass(frozen=True)
class LadderSpec:
    cells: Tuple[LadderCell, ...]
    terminal: str = TERMINAL_T

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if not self.cells:
            raise ReliabilityError("ladder needs at least cell 0")
        if self.terminal not in (TERMINAL_S, TERMINAL_T):
            raise ReliabilityError(f"unknown terminal {self.terminal!r}")
        first = self.cells[0]
        if first.a.p != 1 or first.a.lam != 0:
            raise ReliabilityError("cell 0 must have a perfect entry edge (a=1, rate 0)")
        if first.c.p != 0:
            raise ReliabilityError("cell 0 must have no bottom rail (c=0)")

    @property
    def n(self) -> int:
        return len(self.cells) - 1


@dataclass(frozen=True)
class LadderIdenticalParams:
    """Identical edge availability p and node availability rho, with common
    edge failure rate lam and node failure rate xi, for n cells past cell 0."""

    p: Scalar
    rho: Scalar
    lam: Scalar
    xi: Scalar
    n: int

    def __post_init__(self):
        if not (0 <= self.p <= 1 and 0 <= self.rho <= 1):
            raise ReliabilityError("p and rho must lie in [0,1]")
        if self.lam < 0 or self.xi < 0:
            raise ReliabilityError("rates must be nonnegative")
        if self.n < 0:
            raise ReliabilityError("n must be nonnegative")


def entry_cell(b: Component, S: Component, T: Component) -> LadderCell:
    """Cell 0: perfect entry edge, absent bottom rail."""
    return LadderCell(
        a=Component("__entry__", 1, 0),
        b=b,
        c=Component("__no_rail__", 0, 0),
        S=S,
        T=T,
        index=0,
    )


def cell_matrix_pair(cell: LadderCell) -> MatrixPair:
    a = MultilinearPoly.variable(cell.a.id)
    b = MultilinearPoly.variable(cell.b.id)
    c = MultilinearPoly.variable(cell.c.id)
    S = MultilinearPoly.variable(cell.S.id)
    T = MultilinearPoly.variable(cell.T.id)
    one = MultilinearPoly.one()
    abcST = a * b * c * S * T
    m = (
        (a * S, b * c * S * T, abcST),
        (a * b * S * T, c * T, abcST),
        (-(a * b * S * T), -(b * c * S * T), a * (one - 2 * b) * c * S * T),
    )
    rates = {comp.id: comp.lam for comp in cell.components()}
    return MatrixPair.from_matrix(m, rates)


def build_ladder(spec: LadderSpec) -> TransferSystem:
    """Transfer system for a ladder; vL selects the S_n or T_n terminal."""
    ids = [comp.id for cell in spec.cells for comp in cell.components()]
    shared = len(set(ids)) != len(ids)
    pair_cache: Dict[int, MatrixPair] = {}
    pairs = []
    for cell in spec.cells:
        pair = pair_cache.get(id(cell))
        if pair is None:
            pair = cell_matrix_pair(cell)
            pair_cache[id(cell)] = pair
        pairs.append(pair)
    if spec.terminal == TERMINAL_S:
        v_left = (Fraction(1), Fraction(0), Fraction(0))
    else:
        v_left = (Fraction(0), Fraction(1), Fraction(0))
    components = []
    seen = set()
    for cell in spec.cells:
        for comp in cell.components():
            if comp.id not in seen:
                seen.add(comp.id)
                components.append(comp)
    return TransferSystem(
        v_left=v_left,
        pairs=tuple(pairs),
        v_right=(Fraction(1), Fraction(0), Fraction(0)),
        components=tuple(components),
        family=f"ladder:{spec.n}:{spec.terminal}{':shared' if shared else ''}",
    )


def identical_ladder_spec(params: LadderIdenticalParams, terminal: str = TERMINAL_T) -> LadderSpec:
    """Ladder with one shared interior cell object.

    All interior cells reuse the same five component ids, so the single pass
    evaluates the cell matrices once and then advances in O(1) work per cell
    regardless of n.
    """
    p, rho = as_exact(params.p), as_exact(params.rho)
    lam, xi = as_exact(params.lam), as_exact(params.xi)
    lam = Fraction(0) if p == 1 else lam
    xi = Fraction(0) if rho == 1 else xi
    cell0 = entry_cell(
        b=Component("b0", p, lam),
        S=Component("S0", rho, xi),
        T=Component("T0", rho, xi),
    )
    interior = LadderCell(
        a=Component("a", p, lam),
        b=Component("b", p, lam),
        c=Component("c", p, lam),
        S=Component("S", rho, xi),
        T=Component("T", rho, xi),
        index=1,
    )
    return LadderSpec(cells=(cell0,) + (interior,) * params.n, terminal=terminal)


def heterogeneous_ladder_spec(cells_past_entry, entry, terminal=TERMINAL_T) -> LadderSpec:
    return LadderSpec(cells=(entry,) + tuple(cells_past_entry), terminal=terminal)


def ladder_structure(spec: LadderSpec) -> StructureFunction:
    """Independent s-t connectivity structure function for a ladder spec.

    Perfect (p=1) and absent (p=0) components are folded out by the oracle's
    enumeration; ids must be globally distinct for the oracle to make sense.
    """
    nodes = []
    edges = []
    ids = []
    for i, cell in enumerate(spec.cells):
        nodes += [cell.S.id, cell.T.id]
        if i > 0:
            prev = spec.cells[i - 1]
            edges.append((cell.a.id, prev.S.id, cell.S.id))
            edges.append((cell.c.id, prev.T.id, cell.T.id))
        edges.append((cell.b.id, cell.S.id, cell.T.id))
        ids += [c.id for c in cell.components()]
    if len(set(ids)) != len(ids):
        raise ReliabilityError("oracle requires distinct component ids per cell")
    last = spec.cells[-1]
    terminal = last.S.id if spec.terminal == TERMINAL_S else last.T.id
    return connectivity_structure(
        ids=ids,
        nodes=nodes,
        edges=edges,
        source=spec.cells[0].S.id,
        terminal=terminal,
        name=f"ladder:{spec.n}:{spec.terminal}",
    )


# ---------------------------------------------------------------------------
# Identical-component closed forms


def eigen_symmetric_parts(p, rho):
    """(zeta0, zeta+ + zeta-, zeta+ * zeta-) -- all rational in p and rho."""
    zeta0 = p * rho * (1 - p * rho)
    trace_pm = p * rho * (1 + 2 * p * (1 - p) * rho)
    disc = 1 + 4 * p**2 * rho - 8 * p**3 * rho**2 + 4 * p**4 * rho**2
    prod_pm = (p * rho) ** 2 * ((1 + 2 * p * (1 - p) * rho) ** 2 - disc) / 4
    return zeta0, trace_pm, prod_pm


def _divided_power_sums(t, d, n: int):
    """h_j = (zeta+^j - zeta-^j)/(zeta+ - zeta-) for j = n and n+1.

    Three-term recurrence h_j = t h_{j-1} - d h_{j-2} with h_0 = 0, h_1 = 1;
    the degenerate zeta+ = zeta- case is covered automatically (the
    recurrence computes the limit j * zeta^(j-1)).
    """
    if n < 0:
        raise ReliabilityError("n must be nonnegative")
    hm, h = (t * 0, 1 + t * 0)  # h_0, h_1 in the operand's arithmetic
    if n == 0:
        return hm, h
    for _ in range(n - 1):
        hm, h = h, t * h - d * hm
    return h, t * h - d * hm  # h_n, h_{n+1}


def ladder_closed_form(params: LadderIdenticalParams, mode: str = EXACT):
    """(R_Sn, R_Tn) for identical components.

    Exact mode returns rationals: the two closed forms only involve the
    symmetric functions of the eigenvalue pair, so no square root appears.
    The two results differ exactly by zeta0^(n+1)/p.
    """
    check_mode(mode)
    p = convert(params.p, mode)
    rho = convert(params.rho, mode)
    n = params.n
    if p == 0:
        return (convert(0, mode), convert(0, mode))
    zeta0, t, d = eigen_symmetric_parts(p, rho)
    h_n, h_n1 = _divided_power_sums(t, d, n)
    common = p * rho * (1 + p * rho) * h_n1 - (1 - 2 * p + p * rho) * (p * rho) ** 3 * h_n
    r_s = (zeta0 ** (n + 1) + common) / (2 * p)
    r_t = (-(zeta0 ** (n + 1)) + common) / (2 * p)
    return r_s, r_t


def ladder_frequency(
    params: LadderIdenticalParams, terminal: str = TERMINAL_T, mode: str = EXACT
) -> ReliabilityReport:
    """Availability and failure frequency for the identical-component ladder,
    computed by the component-level rate operator through the matrix pass."""
    spec = identical_ladder_spec(params, terminal=terminal)
    system = build_ladder(spec)
    return single_pass(system, mode=mode)
