"""Divisor arithmetic and the eta-quotient exponent data model.

An eta quotient ``prod_d eta(d z)^{X_d}`` is stored as an :class:`EtaQuotient`:
a declared level ``N`` together with the nonzero exponents ``X_d`` for
``d | N``.  Orders at cusps are carried as integers scaled by 24
(:class:`OrderVector`), so no rational arithmetic is needed for them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Mapping


class LevelError(ValueError):
    """An exponent vector or cusp index does not live on the requested level."""


class BoundExceeded(RuntimeError):
    """A search space is larger than the configured bound."""

    def __init__(self, size, bound):
        super().__init__(f"bound exceeded: search space {size} > bound {bound}")
        self.size = size
        self.bound = bound


class ParseError(ValueError):
    """Malformed eta-quotient expression; ``position`` is 1-based."""

    def __init__(self, message, position):
        super().__init__(f"parse error at position {position}: {message}")
        self.position = position


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as ascending ``(p, e)`` pairs."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


@lru_cache(maxsize=4096)
def divisors(N: int) -> tuple[int, ...]:
    """All divisors of ``N`` in ascending order."""
    if N < 1:
        raise ValueError(f"level must be positive, got {N}")
    divs = [1]
    for p, e in factorize(N):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"totient undefined for {n}")
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def psi_index(N: int) -> int:
    """Index of Gamma0(N) in SL2(Z): ``N * prod_{p | N} (1 + 1/p)``."""
    result = N
    for p, _ in factorize(N):
        result = result // p * (p + 1)
    return result


def _lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


@dataclass(frozen=True)
class EtaQuotient:
    """Exponent vector ``X`` on ``D_N``; absent divisors have exponent 0.

    ``exponents`` holds ``(d, X_d)`` pairs with ``X_d != 0``, ascending in
    ``d``.  Build instances with :meth:`from_dict` rather than directly.
    """

    level: int
    exponents: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.level < 1:
            raise LevelError(f"level must be positive, got {self.level}")
        for d, e in self.exponents:
            if d < 1 or self.level % d:
                raise LevelError(f"{d} does not divide the level {self.level}")
            if e == 0:
                raise ValueError("zero exponents must be omitted")
        keys = [d for d, _ in self.exponents]
        if keys != sorted(set(keys)):
            raise ValueError("exponents must be strictly ascending in d")

    @classmethod
    def from_dict(cls, mapping: Mapping[int, int], level: int | None = None) -> "EtaQuotient":
        entries = tuple(sorted((int(d), int(e)) for d, e in mapping.items() if e))
        if level is None:
            if not entries:
                raise LevelError("constant eta quotient has no level")
            level = _lcm(d for d, _ in entries)
        return cls(level, entries)

    @classmethod
    def from_vector(cls, level: int, values: Iterable[int]) -> "EtaQuotient":
        """Inverse of :meth:`vector`: values aligned with ``divisors(level)``."""
        values = list(values)
        divs = divisors(level)
        if len(values) != len(divs):
            raise ValueError(f"expected {len(divs)} entries for level {level}")
        return cls(level, tuple((d, int(v)) for d, v in zip(divs, values) if v))

    def __getitem__(self, d: int) -> int:
        return dict(self.exponents).get(d, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def vector(self, level: int | None = None) -> tuple[int, ...]:
        """Dense exponents indexed by ascending divisors of ``level``."""
        level = self.level if level is None else level
        if level % self.true_level_or_one():
            raise LevelError(f"eta quotient of level {self.true_level_or_one()} is not on Gamma0({level})")
        m = self.as_dict()
        return tuple(m.get(d, 0) for d in divisors(level))

    def at_level(self, level: int) -> "EtaQuotient":
        if any(level % d for d, _ in self.exponents):
            raise LevelError(f"eta quotient of level {self.true_level_or_one()} is not on Gamma0({level})")
        return EtaQuotient(level, self.exponents)

    def is_zero(self) -> bool:
        return not self.exponents

    def support(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.exponents)

    def true_level_or_one(self) -> int:
        return _lcm(self.support())

    def __add__(self, other: "EtaQuotient") -> "EtaQuotient":
        level = _lcm([self.level, other.level])
        m = self.as_dict()
        for d, e in other.exponents:
            m[d] = m.get(d, 0) + e
        return EtaQuotient.from_dict(m, level)

    def __neg__(self) -> "EtaQuotient":
        return EtaQuotient(self.level, tuple((d, -e) for d, e in self.exponents))

    def __sub__(self, other: "EtaQuotient") -> "EtaQuotient":
        return self + (-other)

    def scale(self, k: int) -> "EtaQuotient":
        """Exponentwise multiple, i.e. the k-th power of the eta quotient."""
        return EtaQuotient.from_dict({d: k * e for d, e in self.exponents}, self.level)

    def __str__(self) -> str:
        return format_eta_quotient(self)


@dataclass(frozen=True)
class OrderVector:
    """``values[i] = 24 * ord_{1/t}`` for ``t = divisors(level)[i]``."""

    level: int
    values: tuple[int, ...]

    def __getitem__(self, t: int) -> int:
        try:
            return self.values[divisors(self.level).index(t)]
        except ValueError:
            raise LevelError(f"{t} does not divide {self.level}") from None

    def as_dict(self) -> dict[int, int]:
        return dict(zip(divisors(self.level), self.values))

    def as_fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, 24) for v in self.values)


def weight_numerator(X: EtaQuotient) -> int:
    """``sigma(X) = sum_d X_d``; the weight is ``sigma(X) / 2``."""
    return sum(e for _, e in X.exponents)


def true_level(X: EtaQuotient) -> int:
    """lcm of the support of ``X``."""
    if X.is_zero():
        raise LevelError("constant eta quotient has no level")
    return _lcm(X.support())


def rescale(X: EtaQuotient, d: int) -> EtaQuotient:
    """The eta quotient ``z -> X(d z)`` at level ``d * N``."""
    if d < 1:
        raise ValueError(f"rescaling factor must be positive, got {d}")
    return EtaQuotient(d * X.level, tuple((d * e_d, e) for e_d, e in X.exponents))


_TOKEN = re.compile(r"\S+")
_FACTOR = re.compile(r"([0-9]+)\^([+-]?[0-9]+)")
_LEVEL = re.compile(r"@([0-9]+)")


def parse_eta_quotient(text: str) -> EtaQuotient:
    """Parse ``"1^-1 2^1 4^2 8^1 16^-1"`` with an optional ``@N`` level.

    The level marker may be its own token or glued to the last factor.
    Raises :class:`ParseError` carrying the 1-based column of the offending
    token.
    """
    exps: dict[int, int] = {}
    level = None
    level_pos = None
    for match in _TOKEN.finditer(text):
        token, pos = match.group(), match.start() + 1
        if level is not None:
            raise ParseError("nothing may follow the level marker", pos)
        body, at, tail = token.partition("@")
        if at:
            lm = _LEVEL.fullmatch("@" + tail)
            if lm is None:
                raise ParseError(f"bad level marker {'@' + tail!r}", pos + len(body))
            level, level_pos = int(lm.group(1)), pos + len(body)
            if level < 1:
                raise ParseError("level must be positive", level_pos)
        if not body:
            continue
        fm = _FACTOR.fullmatch(body)
        if fm is None:
            raise ParseError(f"expected d^e, got {body!r}", pos)
        d, e = int(fm.group(1)), int(fm.group(2))
        if d < 1:
            raise ParseError("divisor must be positive", pos)
        if d in exps:
            raise ParseError(f"divisor {d} repeated", pos)
        exps[d] = e
    if level is None:
        if not any(exps.values()):
            raise ParseError("constant eta quotient needs an explicit @N level", max(len(text), 1))
        return EtaQuotient.from_dict(exps)
    bad = [d for d in exps if level % d]
    if bad:
        raise ParseError(f"{bad[0]} does not divide the level {level}", level_pos)
    return EtaQuotient.from_dict(exps, level)


def format_eta_quotient(X: EtaQuotient) -> str:
    """Text form accepted by :func:`parse_eta_quotient`.

    The ``@N`` suffix is written only when the declared level differs from
    the true level, so the output always re-parses to the same value.
    """
    body = " ".join(f"{d}^{e}" for d, e in X.exponents)
    if X.is_zero() or X.level != true_level(X):
        return f"{body} @{X.level}".strip()
    return body
