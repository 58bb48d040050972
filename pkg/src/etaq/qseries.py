"""Exact q-expansions of eta quotients.

A :class:`QSeries` is ``q^(a/24) * sum_n c_n q^n`` truncated after
``len(coefficients)`` terms.  Every eta quotient expands with integer
coefficients because each factor ``prod (1 - q^{dn})^{X_d}`` has constant
term 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .core import EtaQuotient, true_level


@dataclass(frozen=True)
class QSeries:
    leading_exponent_24: int
    coefficients: tuple[int, ...]

    @property
    def precision(self) -> int:
        return len(self.coefficients)

    def __mul__(self, other: "QSeries") -> "QSeries":
        n = min(self.precision, other.precision)
        return QSeries(
            self.leading_exponent_24 + other.leading_exponent_24,
            _mul(self.coefficients, other.coefficients, n),
        )

    def truncate(self, terms: int) -> "QSeries":
        return QSeries(self.leading_exponent_24, self.coefficients[:terms])

    def __str__(self) -> str:
        return format_series(self)


def _mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return tuple(out)


def _inverse(a, n):
    """Reciprocal of a power series with constant term +-1."""
    if a[0] not in (1, -1):
        raise ValueError("series inversion needs a unit constant term")
    inv = [0] * n
    inv[0] = a[0]
    for m in range(1, n):
        s = sum(a[k] * inv[m - k] for k in range(1, min(m, len(a) - 1) + 1))
        inv[m] = -s * a[0]
    return tuple(inv)


def _pow(a, e, n):
    if e < 0:
        return _inverse(_pow(a, -e, n), n)
    result = (1,) + (0,) * (n - 1)
    base = tuple(a[:n]) + (0,) * max(0, n - len(a))
    while e:
        if e & 1:
            result = _mul(result, base, n)
        e >>= 1
        if e:
            base = _mul(base, base, n)
    return result


def euler_product(terms: int) -> tuple[int, ...]:
    """``prod_{n>=1} (1 - q^n)`` to ``terms`` coefficients, from the
    pentagonal number theorem."""
    if terms < 1:
        raise ValueError("need at least one term")
    c = [0] * terms
    k = 0
    while True:
        hit = False
        for g in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2):
            if g < terms:
                c[g] = -1 if k % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return tuple(c)


def eta_series(terms: int) -> QSeries:
    return QSeries(1, euler_product(terms))


def _dilate(a, d, n):
    out = [0] * n
    for i, x in enumerate(a):
        if i * d >= n:
            break
        out[i * d] = x
    return tuple(out)


def quotient_series(X: EtaQuotient, terms: int) -> QSeries:
    """Expansion of ``prod_d eta(d z)^{X_d}`` to ``terms`` coefficients."""
    if terms < 1:
        raise ValueError("need at least one term")
    base = euler_product(terms)
    num = (1,) + (0,) * (terms - 1)
    den = num
    for d, e in X.exponents:
        factor = _pow(_dilate(base, d, terms), abs(e), terms)
        if e > 0:
            num = _mul(num, factor, terms)
        else:
            den = _mul(den, factor, terms)
    coeffs = _mul(num, _inverse(den, terms), terms)
    return QSeries(sum(d * e for d, e in X.exponents), coeffs)


def distinctness_terms(X: EtaQuotient, X2: EtaQuotient) -> int:
    """Number of terms after which distinct quotients must differ.

    With ``M`` the lcm of both levels, if the expansions agree on the
    leading exponent and on ``M + 1`` coefficients, the quotient
    ``eta^(X - X2)`` is ``1 + O(q^(M+1))``; taking logarithms, the
    coefficient of ``q^m`` for ``m | M`` is a triangular combination
    ``-sum_{d | m} Z_d d sigma(m/d) / m`` of ``Z = X - X2``, so ``Z = 0``.
    """
    return lcm(*(true_level(Z) for Z in (X, X2) if not Z.is_zero())) + 1


def series_distinct(X: EtaQuotient, X2: EtaQuotient, terms: int | None = None) -> bool:
    """True iff the expansions differ within ``terms`` coefficients.

    ``terms`` defaults to :func:`distinctness_terms`, which makes the
    answer exact.
    """
    if X.as_dict() == X2.as_dict():
        raise ValueError("series_distinct needs two different exponent vectors")
    if terms is None:
        terms = distinctness_terms(X, X2)
    a, b = quotient_series(X, terms), quotient_series(X2, terms)
    return a != b


def format_series(s: QSeries) -> str:
    """``q^(a/24) * (c0 + c1 q + ...)`` with exact integers."""
    lead = Fraction(s.leading_exponent_24, 24)
    if lead == 0:
        prefix = ""
    elif lead == 1:
        prefix = "q * "
    elif lead.denominator == 1:
        prefix = f"q^{lead.numerator} * "
    else:
        prefix = f"q^({lead.numerator}/{lead.denominator}) * "
    parts = []
    for n, c in enumerate(s.coefficients):
        if c == 0:
            continue
        mono = "" if n == 0 else ("q" if n == 1 else f"q^{n}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mono) else ""
        term = body + mono
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    parts.append("+ …" if parts else "0 + …")
    return f"{prefix}({' '.join(parts)})"
