"""Points of the standard simplex and their cumulative views.

A point of the standard n-simplex is a vector of n+1 nonnegative masses
``(x_1, ..., x_{n+1})`` summing to one, read as a probability distribution on
the sites ``{1, ..., n+1}``.  Its cumulative view keeps the n partial sums
``X_j = x_1 + ... + x_j``; the final component ``X_{n+1} = 1`` is suppressed.

Two numeric backends coexist.  A value sequence is *exact* when every entry
is an ``int`` or a :class:`fractions.Fraction`; every correctness path in
this package runs on the exact backend, where all identities hold as exact
equalities.  Sequences containing floats use the float64 backend, reserved
for sampling and Monte Carlo work.

Indices in docstrings are 1-based (sites run 1..n+1, cumulative columns
1..n), matching the usual mathematical convention; storage is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Sequence, Union

from .errors import (
    DimensionMismatch,
    DomainError,
    IndexOutOfRange,
    LengthTooShort,
    NegativeMass,
    SumNotOne,
)

__all__ = [
    "Scalar",
    "Distribution",
    "CumulativeVector",
    "DistTuple",
    "OrderStatistics",
    "is_exact",
    "validate_distribution",
    "cumulative",
    "distribution_from_cumulative",
    "column",
    "order_stats",
]

#: A mass or coordinate: exact (int / Fraction) or float64.
Scalar = Union[int, Fraction, float]

#: Float-backend validation tolerance for "sums to one" on raw input.
FLOAT_SUM_TOL = 1e-12

# Looser guard applied after renormalization / float-path construction.
_FLOAT_GUARD = 1e-9


def is_exact(values: Sequence[Scalar]) -> bool:
    """True when no float appears, i.e. the exact rational backend applies."""
    return all(isinstance(v, (int, Fraction)) for v in values)


@dataclass(frozen=True)
class Distribution:
    """A point of the standard n-simplex, stored as its n+1 masses."""

    mass: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if len(self.mass) < 2:
            raise LengthTooShort(
                f"a distribution needs at least 2 sites, got {len(self.mass)}"
            )
        for k, m in enumerate(self.mass):
            if m < 0:
                raise NegativeMass(f"mass at site {k + 1} is negative: {m!r}")
        total = sum(self.mass)
        if is_exact(self.mass):
            if total != 1:
                raise SumNotOne(f"exact masses sum to {total}, not 1")
        elif abs(total - 1.0) > _FLOAT_GUARD:
            raise SumNotOne(f"float masses sum to {total!r}, not 1")

    @property
    def n(self) -> int:
        return len(self.mass) - 1

    @property
    def exact(self) -> bool:
        return is_exact(self.mass)


@dataclass(frozen=True)
class CumulativeVector:
    """The n partial sums ``X_1 <= ... <= X_n`` of a distribution."""

    partial: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if not self.partial:
            raise LengthTooShort("a cumulative vector needs at least one entry")
        slack = 0 if is_exact(self.partial) else _FLOAT_GUARD
        prev: Scalar = 0
        for k, value in enumerate(self.partial):
            if value < prev - slack:
                raise DomainError(
                    f"cumulative entries must be weakly increasing; "
                    f"X_{k + 1} = {value!r} < X_{k} = {prev!r}"
                )
            prev = value
        if prev > 1 + slack:
            raise DomainError(f"cumulative entries must stay within [0, 1]; X_n = {prev!r}")

    @property
    def n(self) -> int:
        return len(self.partial)


@dataclass(frozen=True)
class DistTuple:
    """An ordered d-tuple of distributions on a common ground space."""

    members: tuple[Distribution, ...]

    def __post_init__(self) -> None:
        if len(self.members) < 2:
            raise DimensionMismatch(f"a tuple needs d >= 2 members, got {len(self.members)}")
        n = self.members[0].n
        for i, member in enumerate(self.members):
            if member.n != n:
                raise DimensionMismatch(
                    f"member {i + 1} has n = {member.n}, expected n = {n}"
                )

    @property
    def d(self) -> int:
        return len(self.members)

    @property
    def n(self) -> int:
        return self.members[0].n

    @property
    def exact(self) -> bool:
        return all(m.exact for m in self.members)


@dataclass(frozen=True)
class OrderStatistics:
    """A sample sorted weakly increasing, with its successive gaps."""

    sorted: tuple[Scalar, ...]
    deltas: tuple[Scalar, ...]


def validate_distribution(raw: Sequence[Scalar], *, tol: float = FLOAT_SUM_TOL) -> Distribution:
    """Validate a raw mass sequence and return a :class:`Distribution`.

    Exact input (ints / Fractions) must sum to one exactly.  Float input may
    deviate from one by at most ``tol`` (default 1e-12, enough to absorb a
    round-trip through decimal text) and is then renormalized.
    """
    values = tuple(raw)
    if len(values) < 2:
        raise LengthTooShort(f"a distribution needs at least 2 sites, got {len(values)}")
    for k, m in enumerate(values):
        if m < 0:
            raise NegativeMass(f"mass at site {k + 1} is negative: {m!r}")
    if is_exact(values):
        total = sum(values)
        if total != 1:
            raise SumNotOne(f"exact masses sum to {total}, not 1")
        return Distribution(values)
    floats = tuple(float(v) for v in values)
    total = sum(floats)
    if abs(total - 1.0) > tol:
        raise SumNotOne(f"float masses sum to {total!r}; deviation exceeds {tol}")
    if total != 1.0:
        floats = tuple(v / total for v in floats)
    return Distribution(floats)


def cumulative(x: Distribution) -> CumulativeVector:
    """Partial sums ``X_j = x_1 + ... + x_j`` for j = 1..n."""
    return CumulativeVector(tuple(accumulate(x.mass[:-1])))


def distribution_from_cumulative(cv: CumulativeVector) -> Distribution:
    """Recover the distribution whose partial sums are ``cv`` (by differencing)."""
    partial = cv.partial
    mass = [partial[0]]
    mass.extend(partial[j] - partial[j - 1] for j in range(1, len(partial)))
    mass.append(1 - partial[-1])
    return Distribution(tuple(mass))


def column(xs: DistTuple, j: int) -> tuple[Scalar, ...]:
    """The j-th cumulative column ``(X^1_j, ..., X^d_j)``, 1 <= j <= n."""
    if not 1 <= j <= xs.n:
        raise IndexOutOfRange(f"column index {j} outside 1..{xs.n}")
    return tuple(sum(member.mass[:j]) for member in xs.members)


def order_stats(v: Sequence[Scalar]) -> OrderStatistics:
    """Sort a sample weakly increasing and record the gaps between neighbors."""
    values = tuple(v)
    if not values:
        raise DomainError("order statistics of an empty sample are undefined")
    ordered = tuple(sorted(values))
    deltas = tuple(ordered[i + 1] - ordered[i] for i in range(len(ordered) - 1))
    return OrderStatistics(sorted=ordered, deltas=deltas)
