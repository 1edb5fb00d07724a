"""Shared test fixtures-in-spirit: builders for small reference systems."""

from fractions import Fraction

from relfreq.core import Component
from relfreq.kofn import KofnSpec
from relfreq.ladder import LadderCell, LadderSpec, TERMINAL_T, entry_cell


def example_7_2_components():
    """5-out-of-8:G worked example: p = 0.90, 0.89, ..., 0.83 with a common
    repair rate; failure rates are the steady-state-consistent multipliers."""
    return tuple(
        Component.steady_state(f"c{i+1}", Fraction(90 - i, 100)) for i in range(8)
    )


def lincon_4_11_components():
    """Consecutive worked example: p from 0.70 to 0.90 in steps of 0.02."""
    return tuple(
        Component.steady_state(f"c{i+1}", Fraction(70 + 2 * i, 100)) for i in range(11)
    )


def distinct_ladder_spec(p, rho, lam, xi, n, terminal=TERMINAL_T):
    """Ladder with one distinct component id per slot (oracle-compatible)."""
    cells = [
        entry_cell(
            Component("b0", p, lam), Component("S0", rho, xi), Component("T0", rho, xi)
        )
    ]
    for i in range(1, n + 1):
        cells.append(
            LadderCell(
                a=Component(f"a{i}", p, lam),
                b=Component(f"b{i}", p, lam),
                c=Component(f"c{i}", p, lam),
                S=Component(f"S{i}", rho, xi),
                T=Component(f"T{i}", rho, xi),
                index=i,
            )
        )
    return LadderSpec(tuple(cells), terminal)
