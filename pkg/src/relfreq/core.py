"""Transfer-matrix engine: multilinear polynomials, the rate operator, and
the single-pass availability/frequency recursion.

A system is described by ``A = offset + sign * (vL . M_n ... M_1 . vR)``
where each matrix entry is a multilinear polynomial in component
availabilities.  The mean failure frequency comes from applying the linear
differential operator ``sum_i lambda_i p_i d/dp_i`` to A, which at the
matrix level means threading the pair (M_k, M'_k) through one ordered pass:

    A_k = M_k A_{k-1}
    V_k = M_k V_{k-1} + M'_k A_{k-1}

Memory use is O(vector dimension), independent of the number of matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

from .scalars import APPROX, EXACT, Scalar, as_exact, check_mode, convert, rational_str


class ReliabilityError(ValueError):
    """Base class for engine errors."""


class DimensionMismatchError(ReliabilityError):
    pass


class MissingRateError(ReliabilityError):
    def __init__(self, component_id):
        super().__init__(f"no failure rate supplied for component {component_id!r}")
        self.component_id = component_id


class MissingAvailabilityError(ReliabilityError):
    def __init__(self, component_id):
        super().__init__(f"no availability supplied for component {component_id!r}")
        self.component_id = component_id


# ---------------------------------------------------------------------------
# Components


@dataclass(frozen=True)
class Component:
    """One repairable element.

    ``lam`` and ``mu`` are failure and repair rates per unit time; when the
    rates are expressed as multiples of a single reference repair rate, the
    stored values are the multipliers and the surrounding report is tagged
    ``rate_unit="mu"``.
    """

    id: str
    p: Fraction
    lam: Fraction = Fraction(0)
    mu: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "p", as_exact(self.p))
        object.__setattr__(self, "lam", as_exact(self.lam))
        if self.mu is not None:
            object.__setattr__(self, "mu", as_exact(self.mu))
        if not (0 <= self.p <= 1):
            raise ReliabilityError(f"component {self.id!r}: p={self.p} outside [0,1]")
        if self.lam < 0:
            raise ReliabilityError(f"component {self.id!r}: negative failure rate")
        if self.mu is not None and self.mu < 0:
            raise ReliabilityError(f"component {self.id!r}: negative repair rate")
        if self.p == 1 and self.lam != 0:
            raise ReliabilityError(
                f"component {self.id!r}: a perfect component must have zero failure rate"
            )

    @property
    def q(self) -> Fraction:
        return 1 - self.p

    @classmethod
    def steady_state(cls, id: str, p, mu=1) -> "Component":
        """Component whose failure rate satisfies lam * p = mu * (1 - p)."""
        p = as_exact(p)
        mu = as_exact(mu)
        if p == 0:
            raise ReliabilityError(f"component {id!r}: p=0 has no steady-state rate")
        lam = mu * (1 - p) / p
        return cls(id=id, p=p, lam=lam, mu=mu)


# ---------------------------------------------------------------------------
# Multilinear polynomials


def _norm_terms(terms) -> Tuple[Tuple[frozenset, Fraction], ...]:
    out = {}
    for ids, coeff in dict(terms).items():
        coeff = as_exact(coeff)
        if coeff != 0:
            out[frozenset(ids)] = coeff
    return tuple(sorted(out.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))))


class MultilinearPoly:
    """Multilinear polynomial over component availabilities.

    Terms map a frozenset of component ids to a rational coefficient; the
    empty set is the constant term.  No id ever appears squared: products of
    terms sharing an id are idempotent (p_i * p_i = p_i), which is the right
    semantics for expectations of Boolean indicators.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping = ()):
        self._terms = _norm_terms(terms)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @classmethod
    def zero(cls) -> "MultilinearPoly":
        return cls()

    @classmethod
    def one(cls) -> "MultilinearPoly":
        return cls({frozenset(): Fraction(1)})

    @classmethod
    def constant(cls, c) -> "MultilinearPoly":
        return cls({frozenset(): as_exact(c)})

    @classmethod
    def variable(cls, component_id: str) -> "MultilinearPoly":
        return cls({frozenset([component_id]): Fraction(1)})

    @property
    def variables(self) -> frozenset:
        out = set()
        for ids, _ in self._terms:
            out |= ids
        return frozenset(out)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        other = _as_poly(other)
        acc = dict(self._terms)
        for ids, c in other._terms:
            acc[ids] = acc.get(ids, Fraction(0)) + c
        return MultilinearPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return MultilinearPoly({ids: -c for ids, c in self._terms})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultilinearPoly({ids: c * other for ids, c in self._terms})
        other = _as_poly(other)
        acc = {}
        for ids1, c1 in self._terms:
            for ids2, c2 in other._terms:
                key = ids1 | ids2
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return MultilinearPoly(acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        if not self._terms:
            return "MultilinearPoly(0)"
        bits = []
        for ids, c in self._terms:
            mono = "*".join(sorted(ids)) if ids else "1"
            bits.append(f"{c}*{mono}")
        return "MultilinearPoly(" + " + ".join(bits) + ")"

    def evaluate(self, assignment: Mapping[str, Scalar], mode: str = EXACT) -> Scalar:
        """Evaluate at an availability assignment, entirely in one mode."""
        check_mode(mode)
        total = Fraction(0) if mode == EXACT else 0.0
        for ids, coeff in self._terms:
            term = as_exact(coeff) if mode == EXACT else float(coeff)
            for cid in ids:
                try:
                    v = assignment[cid]
                except KeyError:
                    raise MissingAvailabilityError(cid) from None
                term = term * (as_exact(v) if mode == EXACT else float(v))
            total += term
        return total


def _as_poly(x) -> MultilinearPoly:
    if isinstance(x, MultilinearPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MultilinearPoly.constant(x)
    raise TypeError(f"cannot interpret {x!r} as a multilinear polynomial")


def apply_rate_operator(
    poly: MultilinearPoly, rates: Mapping[str, Scalar]
) -> MultilinearPoly:
    """Apply ``sum_i lambda_i p_i d/dp_i`` to a multilinear polynomial.

    A term c * prod_{i in S} p_i maps to (sum_{i in S} lambda_i) * c *
    prod_{i in S} p_i, so the image lives on the same monomials.  Constants
    are annihilated.
    """
    acc = {}
    for ids, coeff in poly._terms:
        if not ids:
            continue
        lam_total = Fraction(0)
        for cid in ids:
            if cid not in rates:
                raise MissingRateError(cid)
            lam_total += as_exact(rates[cid])
        if lam_total != 0:
            acc[ids] = coeff * lam_total
    return MultilinearPoly(acc)


# ---------------------------------------------------------------------------
# Matrices and systems

PolyMatrix = Tuple[Tuple[MultilinearPoly, ...], ...]


def _freeze_matrix(m) -> PolyMatrix:
    rows = tuple(tuple(_as_poly(e) for e in row) for row in m)
    if not rows:
        raise DimensionMismatchError("empty matrix")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise DimensionMismatchError("ragged matrix")
    return rows


def derive_matrix(m: PolyMatrix, rates: Mapping[str, Scalar]) -> PolyMatrix:
    return tuple(tuple(apply_rate_operator(e, rates) for e in row) for row in m)


@dataclass(frozen=True)
class MatrixPair:
    """A transfer matrix together with its rate-operator image.

    The invariant m_prime[r][c] == apply_rate_operator(m[r][c], rates) is
    established at construction via :meth:`from_matrix`.
    """

    m: PolyMatrix
    m_prime: PolyMatrix

    def __post_init__(self):
        m = _freeze_matrix(self.m)
        mp = _freeze_matrix(self.m_prime)
        if len(m) != len(mp) or len(m[0]) != len(mp[0]):
            raise DimensionMismatchError("m and m_prime shapes differ")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "m_prime", mp)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.m), len(self.m[0]))

    @classmethod
    def from_matrix(cls, m, rates: Mapping[str, Scalar]) -> "MatrixPair":
        m = _freeze_matrix(m)
        return cls(m=m, m_prime=derive_matrix(m, rates))

    @classmethod
    def zero(cls, dim: int) -> "MatrixPair":
        z = tuple(tuple(MultilinearPoly.zero() for _ in range(dim)) for _ in range(dim))
        return cls(m=z, m_prime=z)


@dataclass(frozen=True)
class TransferSystem:
    """Left vector, ordered matrix pairs, right vector, affine convention.

    ``pairs[0]`` is applied first (adjacent to ``v_right``).  The reported
    availability is ``offset + sign * (vL . product . vR)``; the default
    affine form is (0, +1), and the k-out-of-n:G construction uses (1, -1).
    """

    v_left: Tuple[Fraction, ...]
    pairs: Tuple[MatrixPair, ...]
    v_right: Tuple[Fraction, ...]
    offset: Fraction = Fraction(0)
    sign: int = 1
    components: Tuple[Component, ...] = ()
    rate_unit: str = "absolute"
    family: str = ""

    def __post_init__(self):
        object.__setattr__(self, "v_left", tuple(as_exact(x) for x in self.v_left))
        object.__setattr__(self, "v_right", tuple(as_exact(x) for x in self.v_right))
        object.__setattr__(self, "offset", as_exact(self.offset))
        object.__setattr__(self, "pairs", tuple(self.pairs))
        object.__setattr__(self, "components", tuple(self.components))
        if self.sign not in (1, -1):
            raise ReliabilityError("sign must be +1 or -1")
        dim = len(self.v_right)
        if len(self.v_left) != dim:
            raise DimensionMismatchError("v_left and v_right dimensions differ")
        for pair in self.pairs:
            r, c = pair.shape
            if r != dim or c != dim:
                raise DimensionMismatchError(
                    f"matrix shape {pair.shape} incompatible with dimension {dim}"
                )

    @property
    def dim(self) -> int:
        return len(self.v_right)

    @property
    def size(self) -> int:
        return len(self.pairs)

    def default_assignment(self) -> dict:
        return {c.id: (c.p, c.lam) for c in self.components}


# ---------------------------------------------------------------------------
# The single pass


@dataclass(frozen=True)
class PassState:
    """The (A_k, V_k) vector pair threaded through the recursion."""

    a_vec: Tuple[Scalar, ...]
    v_vec: Tuple[Scalar, ...]
    index: int
    mode: str = EXACT

    def __post_init__(self):
        if len(self.a_vec) != len(self.v_vec):
            raise DimensionMismatchError("a_vec and v_vec dimensions differ")


def initial_state(system: TransferSystem, mode: str = EXACT) -> PassState:
    """State before any matrix is consumed: A = vR, V = 0.

    Folding M'_1 in through the first step reproduces the textbook
    initialization, since M_1 . 0 = 0.
    """
    check_mode(mode)
    a = tuple(convert(x, mode) for x in system.v_right)
    zero = Fraction(0) if mode == EXACT else 0.0
    return PassState(a_vec=a, v_vec=(zero,) * len(a), index=0, mode=mode)


def _split_assignment(assignment: Mapping) -> Tuple[dict, dict, bool]:
    """Split ``id -> p`` / ``id -> (p, lam)`` maps into (avail, rates, has_rates)."""
    avail, rates = {}, {}
    has_rates = False
    for cid, val in assignment.items():
        if isinstance(val, tuple):
            p, lam = val
            avail[cid] = p
            rates[cid] = lam
            has_rates = True
        else:
            avail[cid] = val
    return avail, rates, has_rates


def _check_probabilities(avail: Mapping[str, Scalar]):
    for cid, p in avail.items():
        if not (0 <= p <= 1):
            raise ReliabilityError(f"component {cid!r}: p={p} outside [0,1]")


def _eval_sparse(matrix: PolyMatrix, avail, mode: str):
    """Rows of (column, value) with zero entries dropped."""
    rows = []
    for row in matrix:
        out = []
        for j, entry in enumerate(row):
            v = entry.evaluate(avail, mode)
            if v != 0:
                out.append((j, v))
        rows.append(out)
    return rows


def _advance(sm, sp, a, v):
    new_a = [sum(val * a[j] for j, val in row) for row in sm]
    new_v = [
        sum(val * v[j] for j, val in mrow) + sum(val * a[j] for j, val in prow)
        for mrow, prow in zip(sm, sp)
    ]
    return new_a, new_v


def stream_step(
    state: PassState, pair: MatrixPair, assignment: Mapping
) -> PassState:
    """Consume one matrix pair.  single_pass is a fold of this step.

    ``assignment`` maps ids to availabilities, or to (p, lam) tuples; when
    rates are supplied the derivative matrix is recomputed from them instead
    of using the stored one.
    """
    avail, rates, has_rates = _split_assignment(assignment)
    _check_probabilities(avail)
    if pair.shape[1] != len(state.a_vec):
        raise DimensionMismatchError(
            f"matrix shape {pair.shape} incompatible with state dimension {len(state.a_vec)}"
        )
    mp = derive_matrix(pair.m, rates) if has_rates else pair.m_prime
    sm = _eval_sparse(pair.m, avail, state.mode)
    sp = _eval_sparse(mp, avail, state.mode)
    a, v = _advance(sm, sp, list(state.a_vec), list(state.v_vec))
    return PassState(
        a_vec=tuple(a), v_vec=tuple(v), index=state.index + 1, mode=state.mode
    )


@dataclass(frozen=True)
class ReliabilityReport:
    """A, U, mean failure frequency and mean failure rate of one system.

    Frequencies are absolute (per unit time) or multiples of a reference
    repair rate, per ``rate_unit``.
    """

    availability: Scalar
    unavailability: Scalar
    frequency: Scalar
    failure_rate: Optional[Scalar]
    mode: str
    rate_unit: str = "absolute"
    family: str = ""
    size: int = 0

    def as_dict(self) -> dict:
        def block(value):
            entry = {"decimal": repr(float(value))}
            if self.mode == EXACT:
                entry["rational"] = rational_str(value)
            entry["per"] = self.rate_unit
            return entry

        out = {
            "availability": block(self.availability),
            "unavailability": block(self.unavailability),
            "frequency": block(self.frequency),
            "meta": {
                "family": self.family,
                "mode": self.mode,
                "size": self.size,
                "rate_unit": self.rate_unit,
            },
        }
        if self.failure_rate is not None:
            out["failure_rate"] = block(self.failure_rate)
        # availability and unavailability are dimensionless
        out["availability"]["per"] = "absolute"
        out["unavailability"]["per"] = "absolute"
        return out


def finalize(system: TransferSystem, state: PassState) -> ReliabilityReport:
    """Project a fully-advanced state with vL and apply the affine form."""
    if state.index != system.size:
        raise ReliabilityError(
            f"state consumed {state.index} matrices, system has {system.size}"
        )
    mode = state.mode
    vL = [convert(x, mode) for x in system.v_left]
    x = sum(l * a for l, a in zip(vL, state.a_vec))
    y = sum(l * v for l, v in zip(vL, state.v_vec))
    offset = convert(system.offset, mode)
    availability = offset + system.sign * x
    frequency = system.sign * y
    unavailability = 1 - availability
    failure_rate = frequency / availability if availability != 0 else None
    return ReliabilityReport(
        availability=availability,
        unavailability=unavailability,
        frequency=frequency,
        failure_rate=failure_rate,
        mode=mode,
        rate_unit=system.rate_unit,
        family=system.family,
        size=system.size,
    )


def single_pass(
    system: TransferSystem,
    assignment: Optional[Mapping] = None,
    mode: str = EXACT,
) -> ReliabilityReport:
    """Evaluate availability and failure frequency in one ordered pass.

    ``assignment`` maps component ids to availabilities or (p, lam) pairs;
    when omitted, the values carried by the system's components are used.
    Repeated matrix-pair objects are evaluated once, so systems built from a
    shared cell advance in O(dim^2) per step with no polynomial work.
    """
    check_mode(mode)
    if assignment is None:
        assignment = system.default_assignment()
    avail, rates, has_rates = _split_assignment(assignment)
    _check_probabilities(avail)

    a = [convert(x, mode) for x in system.v_right]
    zero = Fraction(0) if mode == EXACT else 0.0
    v = [zero] * len(a)

    cache = {}

    def evaluated(pair):
        key = id(pair)
        mats = cache.get(key)
        if mats is None:
            mp = derive_matrix(pair.m, rates) if has_rates else pair.m_prime
            mats = (_eval_sparse(pair.m, avail, mode), _eval_sparse(mp, avail, mode))
            cache[key] = mats
        return mats

    if len(a) == 3:
        # unrolled 3x3 path; dominant for long ladders
        flat_cache = {}

        def flat(pair):
            key = id(pair)
            f = flat_cache.get(key)
            if f is None:
                sm, sp = evaluated(pair)
                dense = []
                for rows in (sm, sp):
                    for row in rows:
                        d = [zero, zero, zero]
                        for j, val in row:
                            d[j] = val
                        dense.extend(d)
                f = tuple(dense)
                flat_cache[key] = f
            return f

        a1, a2, a3 = a
        v1, v2, v3 = v
        for pair in system.pairs:
            (m11, m12, m13, m21, m22, m23, m31, m32, m33,
             d11, d12, d13, d21, d22, d23, d31, d32, d33) = flat(pair)
            na1 = m11 * a1 + m12 * a2 + m13 * a3
            na2 = m21 * a1 + m22 * a2 + m23 * a3
            na3 = m31 * a1 + m32 * a2 + m33 * a3
            v1, v2, v3 = (
                m11 * v1 + m12 * v2 + m13 * v3 + d11 * a1 + d12 * a2 + d13 * a3,
                m21 * v1 + m22 * v2 + m23 * v3 + d21 * a1 + d22 * a2 + d23 * a3,
                m31 * v1 + m32 * v2 + m33 * v3 + d31 * a1 + d32 * a2 + d33 * a3,
            )
            a1, a2, a3 = na1, na2, na3
        a = [a1, a2, a3]
        v = [v1, v2, v3]
    else:
        for pair in system.pairs:
            mats = evaluated(pair)
            a, v = _advance(mats[0], mats[1], a, v)

    state = PassState(a_vec=tuple(a), v_vec=tuple(v), index=system.size, mode=mode)
    return finalize(system, state)
