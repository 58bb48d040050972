"""Orders at cusps, holomorphy, valence bookkeeping and enumeration.

All orders are 24-scaled integers: entry ``t`` of an order vector is
``24 * ord_{1/t}(eta^X; Gamma0(N))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .core import (
    BoundExceeded,
    EtaQuotient,
    LevelError,
    OrderVector,
    divisors,
    euler_phi,
    psi_index,
    weight_numerator,
)
from .matrices import _build_A, _inverse_A
from .search import (
    LatticeProblem,
    count_weighted_solutions,
    default_bound,
    integrality_congruences,
    solve_parallel,
)


@dataclass(frozen=True)
class CuspClass:
    t: int
    multiplicity: int


@dataclass(frozen=True)
class ValenceReport:
    left: int
    right: int

    @property
    def balanced(self) -> bool:
        return self.left == self.right


def _on_level(X: EtaQuotient, N: int | None) -> tuple[EtaQuotient, int]:
    N = X.level if N is None else N
    if any(N % d for d in X.support()):
        raise LevelError(f"eta quotient {X} does not live on Gamma0({N})")
    return X.at_level(N), N


def order_map(X: EtaQuotient, N: int | None = None) -> OrderVector:
    """``Y = A_N X``; defaults to the declared level of ``X``."""
    X, N = _on_level(X, N)
    return OrderVector(N, linalg.matvec(_build_A(N), X.vector()))


def ord_infinity_24(X: EtaQuotient) -> int:
    """``24 * ord_inf = sum_d d X_d``, independent of the level."""
    return sum(d * e for d, e in X.exponents)


def is_holomorphic(X: EtaQuotient, N: int | None = None) -> bool:
    return min(order_map(X, N).values) >= 0


def cusp_classes(N: int) -> tuple[CuspClass, ...]:
    """One class per ``t | N``, counting ``phi(gcd(t, N/t))`` cusps."""
    return tuple(CuspClass(t, euler_phi(gcd(t, N // t))) for t in divisors(N))


def cusp_count(N: int) -> int:
    return sum(c.multiplicity for c in cusp_classes(N))


def valence_check(X: EtaQuotient, N: int | None = None) -> ValenceReport:
    Y = order_map(X, N)
    left = sum(c.multiplicity * y for c, y in zip(cusp_classes(Y.level), Y.values))
    return ValenceReport(left, weight_numerator(X) * psi_index(Y.level))


def fricke_conjugate(X: EtaQuotient, N: int | None = None) -> EtaQuotient:
    """Exponent reversal ``X'_d = X_{N/d}``; automorphy constants are dropped."""
    X, N = _on_level(X, N)
    return EtaQuotient.from_dict({N // d: e for d, e in X.exponents}, N)


def from_orders(Y, N: int) -> EtaQuotient | None:
    """The unique ``X`` with ``A_N X = Y``, or ``None`` if it is not integral."""
    X = linalg.matvec(_inverse_A(N), [Fraction(v) for v in Y])
    if any(x.denominator != 1 for x in X):
        return None
    return EtaQuotient.from_vector(N, (int(x) for x in X))


def count_order_solutions(N: int, k: int) -> int:
    """Nonnegative solutions of ``sum_t phi(gcd(t, N/t)) x_t = k psi(N)``;
    an upper bound for the number of holomorphic quotients of weight k/2."""
    if k < 0:
        return 0
    return count_weighted_solutions([c.multiplicity for c in cusp_classes(N)], k * psi_index(N))


def enumerate_holomorphic(
    N: int,
    k: int,
    bound: int | None = None,
    workers: int = 1,
    method: str = "rational",
) -> list[EtaQuotient]:
    """All holomorphic eta quotients on Gamma0(N) with ``sigma(X) = k``.

    Enumerates order vectors on the valence hyperplane, largest divisor
    first, and keeps those that are images of integral exponent vectors.
    Raises :class:`BoundExceeded` when the raw solution count of the
    hyperplane exceeds ``bound``.
    """
    if k < 1:
        raise ValueError("weight numerator must be positive")
    bound = default_bound() if bound is None else bound
    raw = count_order_solutions(N, k)
    if raw > bound:
        raise BoundExceeded(raw, bound)
    n = len(divisors(N))
    prob = LatticeProblem(
        size=n,
        congruences=integrality_congruences(N, method),
        weights=tuple(c.multiplicity for c in cusp_classes(N)),
        total=k * psi_index(N),
        order=tuple(reversed(range(n))),
    )
    found = set()
    for Y in solve_parallel(prob, workers):
        X = from_orders(Y, N)
        if X is None:
            raise ArithmeticError(f"integrality filter admitted non-integral orders {Y}")
        found.add(X)
    return sorted(found, key=lambda X: X.vector())
