"""Builders for k-out-of-n:G and linear consecutive k-out-of-n:F systems.

Both families reduce to k x k transfer matrices, one matrix per component.
Component 1 sits adjacent to the right boundary vector; for the consecutive
family the list order is the physical line order, so adjacency is encoded by
position.  Closed forms for identical components are provided alongside.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence, Tuple

from .core import (
    Component,
    MatrixPair,
    MultilinearPoly,
    ReliabilityError,
    ReliabilityReport,
    TransferSystem,
)
from .scalars import EXACT, as_exact, check_mode, convert

FAMILY_G = "G"
FAMILY_LINCON_F = "LinConF"


@dataclass(frozen=True)
class KofnSpec:
    k: int
    components: Tuple[Component, ...]
    family: str = FAMILY_G
    rate_unit: str = "absolute"

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        n = len(self.components)
        if n < 1:
            raise ReliabilityError("need at least one component")
        if not (1 <= self.k <= n):
            raise ReliabilityError(f"k={self.k} out of range for n={n}")
        if self.family not in (FAMILY_G, FAMILY_LINCON_F):
            raise ReliabilityError(f"unknown family {self.family!r}")
        ids = [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            raise ReliabilityError("component ids must be distinct")

    @property
    def n(self) -> int:
        return len(self.components)


def _bidiagonal_g(comp: Component, k: int) -> MatrixPair:
    """k x k matrix with q_i on the diagonal and p_i on the superdiagonal."""
    p = MultilinearPoly.variable(comp.id)
    q = MultilinearPoly.one() - p
    zero = MultilinearPoly.zero()
    rows = []
    for r in range(k):
        row = [zero] * k
        row[r] = q
        if r + 1 < k:
            row[r + 1] = p
        rows.append(tuple(row))
    return MatrixPair.from_matrix(tuple(rows), {comp.id: comp.lam})


def build_kofn_g(spec: KofnSpec) -> TransferSystem:
    """Transfer system for a k-out-of-n:G system with distinct components.

    The availability is reported through the affine form (1, -1): the matrix
    product accumulates the probability that fewer than k components work.
    The derivative matrices carry the minus signs automatically, so no
    post-hoc sign fixing is ever applied.
    """
    if spec.family != FAMILY_G:
        raise ReliabilityError(f"expected family {FAMILY_G!r}, got {spec.family!r}")
    k = spec.k
    pairs = tuple(_bidiagonal_g(c, k) for c in spec.components)
    v_left = (Fraction(1),) + (Fraction(0),) * (k - 1)
    v_right = (Fraction(1),) * k
    return TransferSystem(
        v_left=v_left,
        pairs=pairs,
        v_right=v_right,
        offset=Fraction(1),
        sign=-1,
        components=spec.components,
        rate_unit=spec.rate_unit,
        family=f"kofn-g:{k}/{spec.n}",
    )


def _lincon_matrix(comp: Component, k: int) -> MatrixPair:
    """k x k matrix with p_i down the first column and q_i on the superdiagonal."""
    p = MultilinearPoly.variable(comp.id)
    q = MultilinearPoly.one() - p
    zero = MultilinearPoly.zero()
    rows = []
    for r in range(k):
        row = [zero] * k
        row[0] = p
        if r + 1 < k:
            row[r + 1] = q
        rows.append(tuple(row))
    return MatrixPair.from_matrix(tuple(rows), {comp.id: comp.lam})


def build_lincon_f(spec: KofnSpec) -> TransferSystem:
    """Transfer system for a linear consecutive k-out-of-n:F system.

    The system fails iff at least k consecutive components are down; the
    component list order is the line order, with component 1 applied first.
    """
    if spec.family != FAMILY_LINCON_F:
        raise ReliabilityError(
            f"expected family {FAMILY_LINCON_F!r}, got {spec.family!r}"
        )
    k = spec.k
    pairs = tuple(_lincon_matrix(c, k) for c in spec.components)
    v_left = (Fraction(1),) + (Fraction(0),) * (k - 1)
    v_right = (Fraction(1),) * k
    return TransferSystem(
        v_left=v_left,
        pairs=pairs,
        v_right=v_right,
        components=spec.components,
        rate_unit=spec.rate_unit,
        family=f"lincon-f:{spec.k}/{spec.n}",
    )


def kofn_g_availability_identical(k: int, n: int, p) -> Fraction:
    """A_{k,n} = sum_{l=k}^{n} C(n,l) p^l (1-p)^(n-l), exact for rational p."""
    p = as_exact(p)
    q = 1 - p
    return sum((comb(n, l) * p**l * q ** (n - l) for l in range(k, n + 1)), Fraction(0))


def kofn_g_identical(
    k: int,
    n: int,
    p,
    lam,
    mode: str = EXACT,
    rate_unit: str = "absolute",
) -> ReliabilityReport:
    """Closed-form report for identical components.

    The frequency is lam * k * C(n,k) * p^k * (1-p)^(n-k); the binomial index
    is k (verified against the generating-function expansion and the
    transfer-matrix pass, see the genfunc tests).
    """
    check_mode(mode)
    if not (1 <= k <= n):
        raise ReliabilityError(f"k={k} out of range for n={n}")
    p = as_exact(p)
    if not (0 <= p <= 1):
        raise ReliabilityError(f"p={p} outside [0,1]")
    lam = as_exact(lam)
    a = kofn_g_availability_identical(k, n, p)
    nu = lam * k * comb(n, k) * p**k * (1 - p) ** (n - k)
    a = convert(a, mode)
    nu = convert(nu, mode)
    return ReliabilityReport(
        availability=a,
        unavailability=1 - a,
        frequency=nu,
        failure_rate=nu / a if a != 0 else None,
        mode=mode,
        rate_unit=rate_unit,
        family=f"kofn-g:{k}/{n}",
        size=n,
    )


def identical_components(
    n: int, p, lam=None, mu=None, prefix: str = "c"
) -> Tuple[Component, ...]:
    """n components sharing one availability; rates either explicit or
    steady-state-consistent against a reference repair rate mu."""
    if lam is not None:
        return tuple(Component(f"{prefix}{i}", p, lam) for i in range(1, n + 1))
    return tuple(
        Component.steady_state(f"{prefix}{i}", p, 1 if mu is None else mu)
        for i in range(1, n + 1)
    )
