"""Order matrices ``A_N``, their rescaled inverses ``B_N``, and Smith data.

Rows and columns are indexed by ``divisors(N)`` in ascending order.  For a
prime power ``p^n`` that is ``p^0, ..., p^n``, so index ``i`` stands for
``p^i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from . import linalg
from .core import LevelError, divisors, factorize, is_prime
from .linalg import Matrix


@dataclass(frozen=True)
class DivisorMatrix:
    """Square matrix indexed by ``(t, d)`` in ``D_N x D_N``."""

    level: int
    rows: Matrix

    @property
    def divisors(self) -> tuple[int, ...]:
        return divisors(self.level)

    def entry(self, t: int, d: int):
        divs = self.divisors
        try:
            return self.rows[divs.index(t)][divs.index(d)]
        except ValueError:
            raise LevelError(f"({t}, {d}) is not a pair of divisors of {self.level}") from None

    def column(self, d: int) -> tuple:
        j = self.divisors.index(d)
        return tuple(row[j] for row in self.rows)

    def __len__(self) -> int:
        return len(self.rows)


OrderMatrix = DivisorMatrix


def order_entry(N: int, t: int, d: int) -> int:
    """``24 * ord_{1/t}(eta_d; Gamma0(N)) = N gcd(d,t)^2 / (d gcd(t^2, N))``."""
    if N < 1 or t < 1 or d < 1 or N % t or N % d:
        raise LevelError(f"t={t} and d={d} must both divide N={N}")
    num = N * gcd(d, t) ** 2
    den = d * gcd(t * t, N)
    if num % den:
        raise ArithmeticError(f"non-integral order entry at N={N}, t={t}, d={d}")
    return num // den


@lru_cache(maxsize=1024)
def _build_A(N: int) -> Matrix:
    divs = divisors(N)
    return tuple(tuple(order_entry(N, t, d) for d in divs) for t in divs)


def build_A(N: int) -> OrderMatrix:
    return DivisorMatrix(N, _build_A(N))


def prime_power_A(p: int, n: int) -> Matrix:
    """``A_{p^n}`` from its row pattern, without any gcd evaluation.

    Row ``i`` reads ``p^{n-2i+j}`` up to the diagonal and ``p^{n-j}`` after
    it in the top half; in the bottom half (``2i >= n``) it reads ``p^j``
    up to the diagonal and ``p^{2i-j}`` after it.
    """
    rows = []
    for i in range(n + 1):
        if 2 * i <= n:
            rows.append(tuple(p ** (n - 2 * i + j) if j <= i else p ** (n - j) for j in range(n + 1)))
        else:
            rows.append(tuple(p**j if j <= i else p ** (2 * i - j) for j in range(n + 1)))
    return tuple(rows)


def _kronecker_layout(N: int, blocks: list[Matrix]) -> Matrix:
    """Reorder a Kronecker product over ``p^e || N`` into ascending divisors.

    The product indexes rows by exponent tuples ``(a_1, ..., a_m)`` in
    lexicographic order of the primes; each tuple is the divisor
    ``prod p_k^{a_k}``.
    """
    fac = factorize(N)
    product_matrix: Matrix = ((1,),)
    for block in blocks:
        product_matrix = linalg.kron(product_matrix, block)
    lex_divisors = [
        _prod(p**a for (p, _), a in zip(fac, exps))
        for exps in product(*(range(e + 1) for _, e in fac))
    ]
    position = {d: k for k, d in enumerate(lex_divisors)}
    perm = [position[d] for d in divisors(N)]
    return tuple(tuple(product_matrix[r][c] for c in perm) for r in perm)


def _prod(values) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def kronecker_A(N: int) -> OrderMatrix:
    """``A_N`` as the Kronecker product of its prime-power blocks."""
    blocks = [prime_power_A(p, e) for p, e in factorize(N)]
    return DivisorMatrix(N, _kronecker_layout(N, blocks))


def _check_prime_power(p: int, n: int, n_min: int = 1) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < n_min:
        raise ValueError(f"exponent must be at least {n_min}, got {n}")


def inverse_A_prime_power(p: int, n: int) -> DivisorMatrix:
    """Closed-form tridiagonal inverse of ``A_{p^n}``.

    Entry ``(p^i, p^j)`` times ``p^{n-1}(p^2-1)`` is ``p`` at the two
    corners, ``-p^{min(j, n-j)}`` next to the diagonal, and
    ``p^{min(j-1, n-j-1)} (p^2+1)`` on the interior diagonal.
    """
    _check_prime_power(p, n)
    scale = p ** (n - 1) * (p * p - 1)
    rows = []
    for i in range(n + 1):
        row = []
        for j in range(n + 1):
            if i == j and j in (0, n):
                v = p
            elif abs(i - j) == 1:
                v = -(p ** min(j, n - j))
            elif i == j:
                v = p ** min(j - 1, n - j - 1) * (p * p + 1)
            else:
                v = 0
            row.append(Fraction(v, scale))
        rows.append(tuple(row))
    return DivisorMatrix(p**n, tuple(rows))


@lru_cache(maxsize=1024)
def _inverse_A(N: int) -> Matrix:
    return linalg.inverse(_build_A(N))


def inverse_A(N: int) -> DivisorMatrix:
    """``A_N^{-1}`` for any level, by exact elimination."""
    return DivisorMatrix(N, _inverse_A(N))


@lru_cache(maxsize=1024)
def _build_B(N: int) -> tuple[Matrix, tuple[int, ...]]:
    return linalg.primitive_column_scaling(_inverse_A(N))


def build_B(N: int) -> OrderMatrix:
    """Column ``t`` is ``m_t * A_N^{-1}(., t)`` with ``m_t`` the least
    positive integer making it integral."""
    return DivisorMatrix(N, _build_B(N)[0])


def column_scales(N: int) -> tuple[int, ...]:
    """The multipliers ``m_{t,N}`` used by :func:`build_B`, by ascending t."""
    return _build_B(N)[1]


def prime_power_B(p: int, n: int) -> Matrix:
    """``B_{p^n}`` from its tridiagonal pattern.

    The general pattern is degenerate for ``n == 1``, where the column
    scaling gives ``[[p, -1], [-1, p]]`` directly.
    """
    _check_prime_power(p, n)
    if n == 1:
        return ((p, -1), (-1, p))
    rows = [[0] * (n + 1) for _ in range(n + 1)]
    rows[0][0], rows[0][1] = p, -p
    rows[n][n - 1], rows[n][n] = -p, p
    for i in range(1, n):
        rows[i][i] = p * p + 1
        rows[i][i - 1] = -1 if i == 1 else -p
        rows[i][i + 1] = -1 if i == n - 1 else -p
    return linalg.as_matrix(rows)


def kronecker_B(N: int) -> OrderMatrix:
    """``B_N`` as the Kronecker product of the prime-power patterns."""
    blocks = [prime_power_B(p, e) for p, e in factorize(N)]
    return DivisorMatrix(N, _kronecker_layout(N, blocks))


@dataclass(frozen=True)
class SmithData:
    """Explicit unimodular ``U, V`` with ``D = U B_{p^n} V``."""

    p: int
    n: int
    D: Matrix
    U: Matrix
    V: Matrix
    Uprime: Matrix
    Vprime: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(self.n + 1))


def smith_diagonal(p: int, n: int) -> tuple[int, ...]:
    """``(1, ..., 1, p^{n-1}, p^{n-1}(p^2-1))`` with ``n + 1`` entries."""
    _check_prime_power(p, n)
    return (1,) * (n - 1) + (p ** (n - 1), p ** (n - 1) * (p * p - 1))


def _smith_small(p: int, n: int):
    q = p * p
    if n == 1:
        U = ((0, -1), (1, p))
        V = ((1, p), (0, 1))
        Up = ((p, 1), (-1, 0))
        Vp = ((1, -p), (0, 1))
    elif n == 2:
        U = ((0, 1, 0), (0, p, 1), (1, p, 1))
        V = ((0, -1, q), (0, 0, 1), (-1, 1, 1))
        Up = ((0, -1, 1), (1, 0, 0), (-p, 1, 0))
        Vp = ((-1, q + 1, -1), (-1, q, 0), (0, 1, 0))
    else:
        U = ((0, -1, -p, -q), (0, 0, -1, -p), (0, 0, -p, -(q + 1)), (1, p, q, p**3))
        V = ((1, 0, 1, p**3), (0, 0, 1, p), (0, -1, p, 1), (0, 0, 0, 1))
        Up = ((p, 0, 0, 1), (-1, p, 0, 0), (0, -(q + 1), p, 0), (0, p, -1, 0))
        Vp = ((1, -1, 0, -p * (q - 1)), (0, p, -1, -(q - 1)), (0, 1, 0, -p), (0, 0, 0, 1))
    return U, V, Up, Vp


def _U_entry(p: int, n: int, i: int, j: int) -> int:
    if i < n - 1:
        return -(p ** (j - i - 1)) if j > 0 and j > i else 0
    if i == n - 1:
        return 0 if j == 0 else -(p ** (n - j)) * ((p ** (2 * (j - 1)) - 1) // (p * p - 1))
    return 1 if j == 0 else p**j


def _V_entry(p: int, n: int, i: int, j: int) -> int:
    if i == n:
        return int(j == n)
    if i == 0:
        return {0: 1, n - 1: 1, n: p**n}.get(j, 0)
    if j == 0:
        return 0
    if j < n - 1:
        return -(p ** (i - j - 1)) if i > j else 0
    if j == n - 1:
        return p ** (i - 1)
    return p ** (n - i - 1)


def _Uprime_entry(p: int, n: int, i: int, j: int) -> int:
    if i == 0:
        return {0: p, n: 1}.get(j, 0)
    if i < n - 1:
        if j == 0:
            return -1 if i == 1 else 0
        if j < n - 2:
            return p if i == j else (-1 if i == j + 1 else 0)
        if j == n - 2:
            return p if i == n - 2 else 0
        return 0
    if i == n - 1:
        if j == 0 or j == n:
            return 0
        if j < n - 2:
            return -(p ** (n - j))
        # the (n-1, n-2) cell takes the tabulated -(p^2+1)
        return -(p * p + 1) if j == n - 2 else p
    if j == 0 or j == n:
        return 0
    if j < n - 2:
        return p ** (n - j - 1)
    return p if j == n - 2 else -1


def _Vprime_entry(p: int, n: int, i: int, j: int) -> int:
    if i == n:
        return int(j == n)
    if j == 0:
        return int(i == 0)
    if i == 0:
        if j == n:
            return -(p ** (n - 2)) * (p * p - 1)
        return -1 if j == 1 else 0
    if i < n - 1:
        if j == n:
            return -(p ** (n - i - 2)) * (p * p - 1)
        return p if i == j else (-1 if i == j - 1 else 0)
    if j == n:
        return -(p ** (n - 2))
    return int(j == 1)


def _tabulate(fn, p: int, n: int) -> Matrix:
    return tuple(tuple(fn(p, n, i, j) for j in range(n + 1)) for i in range(n + 1))


@lru_cache(maxsize=256)
def smith_data(p: int, n: int) -> SmithData:
    """Materialize the explicit ``U, V, U', V'`` and ``D`` for ``p^n``.

    ``n <= 3`` uses the tabulated small matrices; ``n > 3`` fills the
    general entry tables.
    """
    _check_prime_power(p, n)
    if n <= 3:
        U, V, Up, Vp = _smith_small(p, n)
    else:
        U, V, Up, Vp = (_tabulate(fn, p, n) for fn in (_U_entry, _V_entry, _Uprime_entry, _Vprime_entry))
    D = linalg.diagonal(smith_diagonal(p, n))
    return SmithData(p, n, D, U, V, Up, Vp)


def verify_proposition1(p: int, n: int) -> bool:
    """``U U' = I``, ``V V' = I`` and ``D = U B V`` exactly, against the
    column-scaled ``B_{p^n}``."""
    s = smith_data(p, n)
    B = build_B(p**n).rows
    eye = linalg.identity(n + 1)
    return (
        linalg.matmul(s.U, s.Uprime) == eye
        and linalg.matmul(s.V, s.Vprime) == eye
        and linalg.matmul(linalg.matmul(s.U, B), s.V) == s.D
    )


def last_two_columns_V(p: int, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Closed forms of the last two columns of ``V`` for ``p^n``."""
    _check_prime_power(p, n)
    if n == 1:
        return (1, 0), (p, 1)
    if n == 2:
        return (-1, 0, 1), (p * p, 1, 1)
    first = (1,) + tuple(p**k for k in range(n - 1)) + (0,)
    second = (p**n,) + tuple(p ** (n - 2 - k) for k in range(n - 1)) + (1,)
    return first, second


def invariant_factors(M: Matrix) -> tuple[int, ...]:
    """Invariant factors ``d_1 | d_2 | ...`` of a nonsingular integer matrix."""
    if isinstance(M, DivisorMatrix):
        M = M.rows
    return linalg.smith_form(linalg.to_int(M))[0]


def largest_invariant_factor(p: int, n: int) -> int:
    return smith_diagonal(p, n)[-1]
