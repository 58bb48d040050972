"""Backtracking enumeration of integer points cut out by congruences.

Both holomorphic-quotient enumeration and factorization search reduce to
the same problem: list nonnegative integer vectors ``y`` (optionally boxed,
optionally on a weighted hyperplane) such that ``A_N^{-1} y`` is integral.
Integrality is a finite set of linear congruences; each one is enforced as
soon as the last of its variables is assigned, which turns most of the box
into arithmetic progressions that are never visited.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterator, Sequence

from . import linalg
from .core import factorize
from .matrices import _inverse_A, column_scales, smith_data

DEFAULT_BOUND = 10**8


def default_bound() -> int:
    """Search-space bound, overridable through ``ETAQ_MAX_BOX``."""
    raw = os.environ.get("ETAQ_MAX_BOX")
    return int(raw) if raw else DEFAULT_BOUND


@dataclass(frozen=True)
class Congruence:
    """``sum_i coeffs[i] * y[i] == 0 (mod modulus)``."""

    coeffs: tuple[int, ...]
    modulus: int

    def holds(self, y: Sequence[int]) -> bool:
        return sum(c * v for c, v in zip(self.coeffs, y)) % self.modulus == 0


def _normalize(coeffs, modulus) -> Congruence | None:
    coeffs = [c % modulus for c in coeffs]
    g = gcd(modulus, *coeffs)
    if g == modulus:
        return None
    return Congruence(tuple(c // g for c in coeffs), modulus // g)


def _rational_rows(rows) -> tuple[Congruence, ...]:
    out = []
    for row in rows:
        L = lcm(*(Fraction(x).denominator for x in row))
        c = _normalize([int(x * L) for x in row], L)
        if c is not None:
            out.append(c)
    return tuple(out)


@lru_cache(maxsize=512)
def integrality_congruences(N: int, method: str = "rational") -> tuple[Congruence, ...]:
    """Congruences on ``y`` equivalent to ``A_N^{-1} y`` being integral.

    ``"rational"`` clears denominators row by row in ``A_N^{-1}``.
    ``"smith"`` goes through ``D = U B_N V`` instead: with ``c = y / m``
    (``m`` the column scales of ``B_N``), integrality of ``B_N c`` is
    integrality of ``D V^{-1} c``.  Prime powers use the explicit Smith
    data; other levels fall back to the generic reduction.
    """
    if method == "rational":
        return _rational_rows(_inverse_A(N))
    if method != "smith":
        raise ValueError(f"unknown integrality method {method!r}")
    fac = factorize(N)
    if len(fac) == 1:
        s = smith_data(*fac[0])
        diag, v_inv = s.diagonal, s.Vprime
    elif N == 1:
        return ()
    else:
        from .matrices import build_B

        diag, _, V = linalg.smith_form(build_B(N).rows)
        v_inv = linalg.to_int(linalg.inverse(V))
    m = column_scales(N)
    L = lcm(*m)
    out = []
    for d_i, row in zip(diag, v_inv):
        c = _normalize([row[t] * (L // m[t]) for t in range(len(m))], L // gcd(L, d_i))
        if c is not None:
            out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class LatticeProblem:
    """Points ``y >= 0`` with optional upper bounds and weighted total.

    ``order`` is the sequence in which coordinates are assigned; values of
    each coordinate are tried in increasing order, so results come out
    lexicographically sorted with respect to ``order``.
    """

    size: int
    congruences: tuple[Congruence, ...] = ()
    upper: tuple[int, ...] | None = None
    weights: tuple[int, ...] | None = None
    total: int | None = None
    order: tuple[int, ...] | None = None

    def __post_init__(self):
        if (self.weights is None) != (self.total is None):
            raise ValueError("weights and total go together")
        if self.upper is None and self.weights is None:
            raise ValueError("problem is unbounded")
        if self.weights is not None and min(self.weights) < 1:
            raise ValueError("weights must be positive")

    def solutions(self, prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
        yield from _Runner(self).run(tuple(prefix), None)

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        """Feasible assignments of the first ``depth`` coordinates in ``order``."""
        return list(_Runner(self).run((), depth))


class _Runner:
    def __init__(self, prob: LatticeProblem):
        n = prob.size
        self.prob = prob
        self.order = prob.order or tuple(range(n))
        pos = {v: k for k, v in enumerate(self.order)}
        # congruences grouped by the position of their last live variable
        self.closing: list[list[int]] = [[] for _ in range(n)]
        self.touching: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for ci, c in enumerate(prob.congruences):
            live = [v for v in range(n) if c.coeffs[v]]
            if not live:
                continue
            self.closing[max(pos[v] for v in live)].append(ci)
            for v in live:
                self.touching[v].append((ci, c.coeffs[v]))
        self.sums = [0] * len(prob.congruences)
        self.y = [0] * n

    def _assign(self, var, value, sign):
        for ci, coef in self.touching[var]:
            self.sums[ci] += sign * coef * value

    def _candidates(self, k, lo, hi):
        """Values for position ``k`` in ``[lo, hi]`` passing the congruences
        that close there."""
        var = self.order[k]
        close = self.closing[k]
        if not close:
            yield from range(lo, hi + 1)
            return
        congs = self.prob.congruences
        first = congs[close[0]]
        q = first.modulus
        c = first.coeffs[var] % q
        r = (-self.sums[close[0]]) % q
        g = gcd(c, q)
        if r % g:
            return
        step = q // g
        start = (r // g) * pow(c // g, -1, step) % step if step > 1 else 0
        start += ((lo - start + step - 1) // step) * step if start < lo else 0
        rest = [(congs[ci].coeffs[var], congs[ci].modulus, ci) for ci in close[1:]]
        for value in range(start, hi + 1, step):
            if all((self.sums[ci] + cf * value) % m == 0 for cf, m, ci in rest):
                yield value

    def run(self, prefix, depth):
        prob = self.prob
        n = prob.size
        remaining = prob.total

        def rec(k, remaining):
            if k == n or (depth is not None and k == depth):
                yield tuple(self.y) if depth is None else tuple(self.y[v] for v in self.order[:k])
                return
            var = self.order[k]
            lo, hi = 0, prob.upper[var] if prob.upper is not None else None
            if prob.weights is not None:
                w = prob.weights[var]
                cap = remaining // w
                hi = cap if hi is None else min(hi, cap)
                if k == n - 1:
                    if remaining % w:
                        return
                    lo = cap
                    if lo > hi:
                        return
            if k < len(prefix):
                if not lo <= prefix[k] <= hi:
                    return
                values = [v for v in self._candidates(k, prefix[k], prefix[k])]
            else:
                values = self._candidates(k, lo, hi)
            for value in values:
                self.y[var] = value
                self._assign(var, value, 1)
                yield from rec(k + 1, None if remaining is None else remaining - value * prob.weights[var])
                self._assign(var, value, -1)
            self.y[var] = 0

        yield from rec(0, remaining)


def _solve_chunk(args):
    prob, prefixes = args
    out = []
    for prefix in prefixes:
        out.extend(prob.solutions(prefix))
    return out


def solve_parallel(prob: LatticeProblem, workers: int, split_depth: int = 2) -> list[tuple[int, ...]]:
    """All solutions, sorted, computed by ``workers`` processes.

    The first ``split_depth`` coordinates in assignment order are
    enumerated up front and dealt round-robin to the workers; the merged
    result is sorted, so it does not depend on scheduling.
    """
    if workers <= 1:
        return sorted(prob.solutions())
    prefixes = prob.prefixes(min(split_depth, prob.size))
    chunks = [prefixes[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_solve_chunk, [(prob, c) for c in chunks if c])
        merged = [y for part in parts for y in part]
    return sorted(merged)


def count_weighted_solutions(weights: Sequence[int], total: int) -> int:
    """Number of ``x >= 0`` with ``sum w_i x_i == total`` (coin-change DP)."""
    ways = [1] + [0] * total
    for w in weights:
        for s in range(w, total + 1):
            ways[s] += ways[s - w]
    return ways[total]
