"""The gap polynomial G(x; q) and the pairwise decomposition of the EMD.

Collect every gap between successive order statistics of every cumulative
column into a formal polynomial, exponents graded by Lee weight:

    G(x; q) = sum_{i=1}^{d-1} sum_{j=1}^{n}  (X_j^(i+1) - X_j^(i)) * q^wt(i).

Its derivatives at q = 1 grade how tightly the cumulative columns agree:

* G'(x; 1) is exactly the d-fold EMD of the tuple;
* G''(x; 1) is the obstruction in the Cayley-Menger-type identity

      (d - 1) * EMD(x) = G''(x; 1) + sum of all pairwise EMDs,

  the analogue of writing a simplex volume in terms of its edge lengths,
  except that here a correction term survives;
* the k-th derivative at 1 is nonnegative, and vanishes exactly when the
  middle order statistics agree in every column:
  X_j^(k) = ... = X_j^(d-k+1) for all j.

Since coefficients are nonnegative, once the k-th derivative vanishes so do
all higher ones, so EMD(x) >= (pairwise sum) / (d - 1) always, with equality
exactly when G''(x; 1) = 0 -- automatic for d <= 3, which is why a triple's
EMD is half its pairwise sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .cost import lee_weight
from .errors import DomainError, InvariantViolation
from .simplex import DistTuple, Scalar, column, is_exact, order_stats
from .transport import emd, emd_pairwise

__all__ = [
    "GPolynomial",
    "CmReport",
    "g_polynomial",
    "g_derivative_at_one",
    "cm_decompose",
    "vanishing_order",
]

# Float-backend tolerance for zero tests and the decomposition identity.
_FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class GPolynomial:
    """Gap polynomial of a tuple: coefficient per Lee weight 1..floor(d/2)."""

    d: int
    coeffs: Mapping[int, Scalar]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", MappingProxyType(dict(self.coeffs)))
        for w, c in self.coeffs.items():
            if not 1 <= w <= self.d // 2:
                raise DomainError(f"Lee weight {w} outside 1..{self.d // 2}")
            if c < 0:
                raise InvariantViolation(f"gap coefficient at weight {w} is negative: {c!r}")

    @property
    def exact(self) -> bool:
        return is_exact(tuple(self.coeffs.values()))


@dataclass(frozen=True)
class CmReport:
    """The pairwise decomposition of a tuple's EMD.

    ``(d-1) * emd == obstruction + pairwise_sum`` holds exactly on the
    rational backend; ``equality_holds`` reports the obstruction-free case,
    cross-checked against the middle-order-statistic criterion.  Float-backend
    reports set ``approximate`` and use a 1e-9 tolerance.
    """

    emd: Scalar
    pairwise_sum: Scalar
    obstruction: Scalar
    pairwise: Mapping[tuple[int, int], Scalar]
    equality_holds: bool
    approximate: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairwise", MappingProxyType(dict(self.pairwise)))


def g_polynomial(xs: DistTuple) -> GPolynomial:
    """Accumulate every column's order-statistic gaps by Lee weight."""
    d = xs.d
    zero = 0 if xs.exact else 0.0
    coeffs: dict[int, Scalar] = {w: zero for w in range(1, d // 2 + 1)}
    for j in range(1, xs.n + 1):
        deltas = order_stats(column(xs, j)).deltas
        for i in range(1, d):
            coeffs[lee_weight(i, d)] += deltas[i - 1]
    return GPolynomial(d=d, coeffs=coeffs)


def g_derivative_at_one(g: GPolynomial, k: int) -> Scalar:
    """k-th derivative of the gap polynomial at q = 1 (falling factorials)."""
    if k < 1:
        raise DomainError(f"derivative order must be >= 1, got {k}")
    total: Scalar = 0
    for w, c in g.coeffs.items():
        factor = 1
        for step in range(k):
            factor *= w - step
        if factor:
            total += c * factor
    return total


def _middles_agree(xs: DistTuple, k: int) -> bool:
    """Whether X_j^(k) = ... = X_j^(d-k+1) in every column j."""
    lo, hi = k - 1, xs.d - k  # 0-based slice bounds of the middle block
    if lo >= hi:
        return True
    tol = 0 if xs.exact else _FLOAT_TOL
    for j in range(1, xs.n + 1):
        ordered = sorted(column(xs, j))
        if ordered[hi] - ordered[lo] > tol:
            return False
    return True


def cm_decompose(xs: DistTuple) -> CmReport:
    """Decompose the d-fold EMD into pairwise EMDs plus the obstruction.

    The EMD is computed independently through the column form and verified
    against both the first-derivative identity and the decomposition identity
    (exactly on the rational backend); a failure of either is a bug and
    raises :class:`InvariantViolation`.
    """
    d = xs.d
    exact = xs.exact
    tol = 0 if exact else _FLOAT_TOL

    g = g_polynomial(xs)
    emd_value = emd(xs)
    first = g_derivative_at_one(g, 1)
    if abs(first - emd_value) > tol:
        raise InvariantViolation(
            f"G'(x;1) = {first!r} disagrees with the column form {emd_value!r}"
        )
    obstruction = g_derivative_at_one(g, 2)

    pairwise: dict[tuple[int, int], Scalar] = {}
    for k in range(1, d + 1):
        for l in range(k + 1, d + 1):
            pairwise[(k, l)] = emd_pairwise(xs.members[k - 1], xs.members[l - 1])
    pairwise_sum = sum(pairwise.values())

    if abs((d - 1) * emd_value - (obstruction + pairwise_sum)) > tol:
        raise InvariantViolation(
            f"(d-1)*EMD = {(d - 1) * emd_value!r} != obstruction + pairwise sum "
            f"= {obstruction + pairwise_sum!r}"
        )

    obstruction_free = abs(obstruction) <= tol
    middles_equal = _middles_agree(xs, 2)
    if obstruction_free != middles_equal:
        raise InvariantViolation(
            f"equality criteria disagree: obstruction {obstruction!r} vs "
            f"middle-order-statistic scan {middles_equal}"
        )

    return CmReport(
        emd=emd_value,
        pairwise_sum=pairwise_sum,
        obstruction=obstruction,
        pairwise=pairwise,
        equality_holds=obstruction_free,
        approximate=not exact,
    )


def vanishing_order(xs: DistTuple) -> int:
    """One plus the number of vanishing derivative orders of G at q = 1.

    Orders run 1..ceil(d/2).  Nonnegative coefficients make vanishing
    monotone in the order, so the count pins down which suffix of the
    derivatives is zero: 1 means even G' > 0 ... ceil(d/2) + 1 means all
    derivatives vanish, i.e. all members are equal.
    """
    g = g_polynomial(xs)
    tol = 0 if g.exact else _FLOAT_TOL
    top = (xs.d + 1) // 2
    vanished = sum(
        1 for k in range(1, top + 1) if abs(g_derivative_at_one(g, k)) <= tol
    )
    return 1 + vanished
