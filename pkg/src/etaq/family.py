"""The family ``f_{p,n}``, the eta quotient ``F_N = eta^v`` and membership in
the polytope spanned by the columns of ``B_N``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .analytics import is_holomorphic, order_map, ord_infinity_24
from .core import EtaQuotient, LevelError, is_prime, true_level, weight_numerator
from .matrices import build_B


@dataclass(frozen=True)
class FamilyMember:
    p: int
    n: int
    exponents: EtaQuotient

    @property
    def parity(self) -> str:
        return "even" if self.n % 2 == 0 else "odd"

    @property
    def level(self) -> int:
        return self.p**self.n


def build_f(p: int, n: int) -> FamilyMember:
    """Exponent vector of ``f_{p,n}`` at level ``p^n``.

    Defined for ``n > 3``; the odd case excludes ``p = 2``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n <= 3:
        raise ValueError(f"family undefined for n = {n}; need n > 3")
    if n % 2 and p == 2:
        raise ValueError("family undefined for p = 2 and odd n")
    X = {1: -(p - 1), p**n: -(p - 1)}
    if n % 2 == 0:
        X[p] = p
        X[p ** (n - 1)] = (p - 1) ** 2
        for s in range(1, n // 2):
            X[p ** (2 * s - 1)] = X.get(p ** (2 * s - 1), 0) + p * p - 3 * p + 1
            X[p ** (2 * s)] = X.get(p ** (2 * s), 0) + p * p - 2 * p + 2
    else:
        X[p] = p
        X[p ** (n - 1)] = p
        for s in range(1, n):
            X[p**s] = X.get(p**s, 0) + p * p - 3 * p + 2
    return FamilyMember(p, n, EtaQuotient.from_dict(X, p**n))


@dataclass(frozen=True)
class FamilyReport:
    p: int
    n: int
    exponents: EtaQuotient
    orders: tuple[int, ...]
    holomorphic: bool
    level: int
    palindromic: bool
    ord_inf_24: int
    ord0_24: int
    weight_numerator: int
    failures: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_family(p: int, n: int) -> FamilyReport:
    """Check holomorphy, exact level, palindromy and the extreme orders.

    ``ord_inf = ord_0 = 1/24`` is required for even ``n`` only; for odd
    ``n`` the orders are reported as computed.
    """
    f = build_f(p, n)
    X = f.exponents
    N = p**n
    Y = order_map(X, N)
    vec = X.vector()
    report = dict(
        orders=Y.values,
        holomorphic=min(Y.values) >= 0,
        level=true_level(X),
        palindromic=vec == vec[::-1],
        ord_inf_24=Y[N],
        ord0_24=Y[1],
    )
    failures = []
    if not report["holomorphic"]:
        failures.append("not holomorphic")
    if report["level"] != N:
        failures.append(f"level {report['level']} != {N}")
    if not report["palindromic"]:
        failures.append("not palindromic")
    if Y[N] != ord_infinity_24(X):
        failures.append("order at infinity disagrees with sum d*X_d")
    if report["ord0_24"] != report["ord_inf_24"]:
        failures.append("orders at 0 and infinity differ")
    if n % 2 == 0 and report["ord_inf_24"] != 1:
        failures.append(f"24*ord_inf = {report['ord_inf_24']} != 1")
    return FamilyReport(p, n, X, weight_numerator=weight_numerator(X), failures=tuple(failures), **report)


def build_F(N: int) -> EtaQuotient:
    """``F_N = eta^v`` with ``v`` the sum of the columns of ``B_N``."""
    v = [sum(row) for row in build_B(N).rows]
    return EtaQuotient.from_vector(N, v)


def closed_form_F_even(p: int, m: int) -> EtaQuotient:
    """``F_{p^{2m}}`` read off its product form."""
    if not is_prime(p) or m < 1:
        raise ValueError("need a prime p and m >= 1")
    if m == 1:
        return EtaQuotient.from_dict({p: p * p - 1}, p * p)
    X = {p: p * (p - 1), p ** (2 * m - 1): p * (p - 1)}
    for r in range(2, 2 * m - 1):
        X[p**r] = (p - 1) ** 2
    return EtaQuotient.from_dict(X, p ** (2 * m))


def quotient_F_over_f(p: int, m: int) -> EtaQuotient:
    """Exponents of ``F_{p^{2m}} / f_{p,2m}``."""
    if m < 2:
        raise ValueError("f_{p,2m} needs m >= 2")
    return build_F(p ** (2 * m)) - build_f(p, 2 * m).exponents


def closed_form_F_over_f(p: int, m: int) -> EtaQuotient:
    """``F_{p^{2m}} / f_{p,2m}`` from its product form (``m >= 2``)."""
    if m < 2:
        raise ValueError("f_{p,2m} needs m >= 2")
    X = {1: p - 1, p: p - 2, p ** (2 * m): p - 1}
    for r in range(1, m):
        for d, e in ((p ** (2 * r - 1), 1), (p ** (2 * r + 1), p - 1), (p ** (2 * r), -1)):
            X[d] = X.get(d, 0) + e
    return EtaQuotient.from_dict(X, p ** (2 * m))


@dataclass(frozen=True)
class ZnMembership:
    coefficients: tuple[Fraction, ...]

    @property
    def member(self) -> bool:
        return all(0 <= c <= 1 for c in self.coefficients)


def zn_membership(X: EtaQuotient, N: int | None = None) -> ZnMembership:
    """Coordinates ``C_d`` of ``X = sum_d C_d v_d`` in the basis of
    ``B_N`` columns; a member when every ``C_d`` lies in ``[0, 1]``."""
    N = X.level if N is None else N
    if any(N % d for d in X.support()):
        raise LevelError(f"eta quotient {X} does not live on Gamma0({N})")
    C = linalg.solve(build_B(N).rows, X.at_level(N).vector())
    return ZnMembership(tuple(C))


def zn_criterion(X: EtaQuotient, N: int | None = None) -> bool:
    """Holomorphy of both ``X`` and ``F_N / X``."""
    N = X.level if N is None else N
    return is_holomorphic(X, N) and is_holomorphic(build_F(N) - X.at_level(N), N)

