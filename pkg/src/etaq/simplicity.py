"""Primitivity, factorization search, simplicity and irreducibility
certificates for holomorphic eta quotients.

A factorization ``eta^X = eta^{X'} * eta^{X - X'}`` into holomorphic
quotients on Gamma0(N) is the same thing as an integer order vector
``0 <= Y' <= Y = A_N X`` whose preimage ``A_N^{-1} Y'`` is integral, so the
search runs in order space over the box ``prod_t [0, Y_t]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import linalg
from .analytics import enumerate_holomorphic, from_orders, order_map
from .core import (
    BoundExceeded,
    EtaQuotient,
    LevelError,
    is_prime,
    true_level,
    weight_numerator,
)
from .family import build_f
from .matrices import build_B, column_scales, last_two_columns_V, smith_data
from .search import LatticeProblem, default_bound, integrality_congruences, solve_parallel

PRIMITIVITY_NOTE = "operational definition: support gcd 1 and support lcm equal to the level"
IRREDUCIBILITY_NOTE = (
    "simple holomorphic eta quotients of prime power level are irreducible "
    "(cited external result, not verified here)"
)


@dataclass(frozen=True)
class Factorization:
    g: EtaQuotient
    h: EtaQuotient


def _level(X: EtaQuotient, N: int | None) -> int:
    N = X.level if N is None else N
    if any(N % d for d in X.support()):
        raise LevelError(f"eta quotient {X} does not live on Gamma0({N})")
    return N


def is_primitive(X: EtaQuotient, N: int | None = None) -> bool:
    """Not a rescaling (support gcd 1) and of full level (support lcm N)."""
    if X.is_zero():
        raise ValueError("the constant eta quotient has no primitivity")
    N = _level(X, N)
    return gcd(*X.support()) == 1 and true_level(X) == N


def factor_box_size(X: EtaQuotient, N: int | None = None) -> int:
    size = 1
    for y in order_map(X, N).values:
        size *= y + 1
    return size


def _factor_problem(Y, N, method, upper=None):
    return LatticeProblem(
        size=len(Y),
        congruences=integrality_congruences(N, method),
        upper=tuple(Y if upper is None else upper),
    )


def find_factorizations(
    X: EtaQuotient,
    N: int | None = None,
    limit: int | None = None,
    bound: int | None = None,
    method: str = "rational",
    workers: int = 1,
) -> list[Factorization]:
    """Unordered factorizations into two nonconstant holomorphic quotients.

    Each pair is reported once, the lexicographically smaller exponent
    vector first, in lexicographic order of the smaller factor's orders.
    """
    N = _level(X, N)
    Y = order_map(X, N).values
    if min(Y) < 0:
        raise ValueError(f"{X} is not holomorphic on Gamma0({N})")
    if X.is_zero():
        raise ValueError("the constant eta quotient has no factors")
    bound = default_bound() if bound is None else bound
    box = factor_box_size(X, N)
    if box > bound:
        raise BoundExceeded(box, bound)
    prob = _factor_problem(Y, N, method)
    if method == "rational" and workers <= 1:
        candidates = prob.solutions()
    else:
        candidates = iter(solve_parallel(prob, workers))
    Xa = X.at_level(N)
    out = []
    for Yp in candidates:
        rest = tuple(a - b for a, b in zip(Y, Yp))
        if not any(Yp) or not any(rest) or Yp > rest:
            continue
        g = from_orders(Yp, N)
        if g is None:
            raise ArithmeticError(f"integrality filter admitted non-integral orders {Yp}")
        h = Xa - g
        if h.vector() < g.vector():
            g, h = h, g
        out.append(Factorization(g, h))
        if limit is not None and len(out) >= limit:
            break
    return out


def is_quasi_irreducible(X: EtaQuotient, N: int | None = None, bound: int | None = None) -> bool:
    return not find_factorizations(X, N, limit=1, bound=bound)


def is_simple(X: EtaQuotient, N: int | None = None, bound: int | None = None) -> bool:
    return is_primitive(X, N) and is_quasi_irreducible(X, N, bound)


def extremes_lemma_by_search(X: EtaQuotient, N: int | None = None, bound: int | None = None) -> bool:
    """Admissible ``Y'`` with zero first and last entries is zero.

    Checked exhaustively over the box with both extreme coordinates fixed
    at 0.
    """
    N = _level(X, N)
    Y = order_map(X, N).values
    upper = (0,) + tuple(Y[1:-1]) + (0,)
    bound = default_bound() if bound is None else bound
    size = 1
    for y in upper:
        size *= y + 1
    if size > bound:
        raise BoundExceeded(size, bound)
    return all(not any(Yp) for Yp in _factor_problem(Y, N, "rational", upper).solutions())


@dataclass(frozen=True)
class Certificate:
    status: str
    witness: object = None
    reason: str = ""
    details: dict = field(default_factory=dict)


CERTIFIED = "certified-irreducible"
INAPPLICABLE = "inapplicable"
DECOMPOSED = "decomposition-found"


def _class_solutions(a, b, C1, C2, target_first, target_last, L):
    """Classes ``(l1, l2)`` in ``Z/a x Z/b`` whose extreme coordinates of
    ``l1/a C1 + l2/b C2`` are ``target/L`` mod 1, with ``a | L`` and ``b | L``.

    Loops over ``l1`` and solves for ``l2`` from whichever of the two
    congruences pins it down most tightly.
    """
    eqs = [
        (C1[0] * (L // a), C2[0] * (L // b), target_first),
        (C1[-1] * (L // a), C2[-1] * (L // b), target_last),
    ]
    eqs.sort(key=lambda e: gcd(e[1], L))
    (k1, k2, t), (o1, o2, ot) = eqs
    g = gcd(k2, L)
    step = L // g
    inv = pow(k2 // g, -1, step) if step > 1 else 0
    out = []
    for l1 in range(a):
        r = (t - l1 * k1) % L
        if r % g:
            continue
        start = (r // g) * inv % step if step > 1 else 0
        for l2 in range(start, b, step):
            if (l1 * o1 + l2 * o2 - ot) % L == 0:
                out.append((l1, l2))
    out.sort()
    return out


def coset_certificate(p: int, n: int, X: EtaQuotient | None = None, bound: int | None = None) -> Certificate:
    """Replay the Smith-coset argument for quasi-irreducibility at ``p^n``.

    Works in the coordinates ``C = B_N^{-1} X``.  A factor ``C'`` with
    ``0 <= C' <= C`` lies in ``B_N^{-1} Z^n``, so modulo ``Z^n`` it is
    ``l1/d' C1 + l2/d C2`` for the last two columns ``C1, C2`` of ``V`` and
    the two nontrivial invariant factors ``d' | d``.  When the extreme
    coordinates of ``C`` are both ``1/d``, a factor must carry ``1/d`` in
    exactly one extreme coordinate and 0 in the other; if no class does,
    no factorization exists.  The companion fact (both extremes 0 forces
    ``C' = 0``) is settled from the congruence when every ``C_t < 1`` and
    by exhaustive search otherwise.
    """
    if not is_prime(p) or n < 1:
        return Certificate(INAPPLICABLE, reason="need a prime p and n >= 1")
    N = p**n
    if X is None:
        try:
            X = build_f(p, n).exponents
        except ValueError as exc:
            return Certificate(INAPPLICABLE, reason=str(exc))
    if any(N % d for d in X.support()) or X.is_zero():
        return Certificate(INAPPLICABLE, reason=f"not a nonconstant eta quotient on Gamma0({N})")
    Y = order_map(X, N).values
    if min(Y) < 0:
        return Certificate(INAPPLICABLE, reason="not holomorphic")
    s = smith_data(p, n)
    diag = s.diagonal
    a, d = diag[-2], diag[-1]
    if any(x != 1 for x in diag[:-2]):
        return Certificate(INAPPLICABLE, reason=f"unexpected Smith diagonal {diag}")
    C1, C2 = last_two_columns_V(p, n)
    if tuple(row[-2] for row in s.V) != C1 or tuple(row[-1] for row in s.V) != C2:
        return Certificate(INAPPLICABLE, reason="closed-form V columns disagree with the Smith data")
    m = column_scales(N)
    C = tuple(Fraction(y, mt) for y, mt in zip(Y, m))
    details = {"orders": Y, "coordinates": C, "invariant_factors": (a, d), "C1": C1, "C2": C2}
    if C[0] != Fraction(1, d) or C[-1] != Fraction(1, d):
        return Certificate(INAPPLICABLE, reason="extreme coordinates are not both 1/d", details=details)

    hits = _class_solutions(a, d, C1, C2, 1, 0, d) + _class_solutions(a, d, C1, C2, 0, 1, d)
    zero_classes = _class_solutions(a, d, C1, C2, 0, 0, d)
    details["admissible_classes"] = tuple(hits)
    if hits:
        try:
            found = find_factorizations(X, N, limit=1, bound=bound)
        except BoundExceeded as exc:
            return Certificate(INAPPLICABLE, witness=hits[0], reason=str(exc), details=details)
        if found:
            return Certificate(DECOMPOSED, witness=found[0], details=details)
        return Certificate(INAPPLICABLE, witness=hits[0], reason="congruence admits a class but no factor exists", details=details)

    if zero_classes == [(0, 0)] and max(C) < 1:
        details["extremes_lemma"] = "congruence"
    else:
        try:
            ok = extremes_lemma_by_search(X, N, bound)
        except BoundExceeded as exc:
            return Certificate(INAPPLICABLE, reason=f"extremes lemma unchecked: {exc}", details=details)
        if not ok:
            return Certificate(INAPPLICABLE, reason="a nonzero factor vanishes at both extreme cusps", details=details)
        details["extremes_lemma"] = "search"
    return Certificate(CERTIFIED, details=details)


def _frac_vec(v):
    return tuple(x - (x.numerator // x.denominator) for x in v)


def smith_bijection(p: int, n: int) -> bool:
    """``l -> V D^{-1} l mod Z^n`` maps ``prod Z/d_i`` bijectively onto
    ``[0,1)^n`` intersected with ``B^{-1} Z^n``.

    The target set is built independently as the subgroup of
    ``(Q/Z)^n`` generated by the columns of ``B^{-1}``.
    """
    s = smith_data(p, n)
    B = build_B(p**n).rows
    Binv = linalg.inverse(B)
    size = n + 1
    gens = [_frac_vec(col) for col in linalg.transpose(Binv)]
    zero = tuple(Fraction(0) for _ in range(size))
    target = {zero}
    queue = deque([zero])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _frac_vec(tuple(a + b for a, b in zip(x, g)))
            if y not in target:
                target.add(y)
                queue.append(y)

    diag = s.diagonal
    image = set()
    count = 0

    def rec(i, ell):
        nonlocal count
        if i == size:
            count += 1
            v = linalg.matvec(s.V, [Fraction(l, di) for l, di in zip(ell, diag)])
            image.add(_frac_vec(v))
            return
        for l in range(diag[i]):
            rec(i + 1, ell + [l])

    rec(0, [])
    in_lattice = all(linalg.is_integral([linalg.matvec(B, c)]) for c in target)
    return in_lattice and count == len(image) and image == target


@dataclass
class ScanReport:
    p: int
    n: int
    max_weight_num: int
    simple: list[EtaQuotient] = field(default_factory=list)
    family_weight: int | None = None
    holomorphic_counts: dict = field(default_factory=dict)
    undecided: list[EtaQuotient] = field(default_factory=list)
    complete: bool = True
    note: str = ""

    @property
    def heavier_simple(self) -> list[EtaQuotient]:
        if self.family_weight is None:
            return []
        return [X for X in self.simple if weight_numerator(X) > self.family_weight]

    @property
    def consistent(self) -> bool:
        return not self.heavier_simple


def conjecture_scan(p: int, n: int, max_weight_num: int, bound: int | None = None) -> ScanReport:
    """Simple holomorphic eta quotients of level exactly ``p^n`` and weight
    numerator at most ``max_weight_num``.

    Stops at the first weight whose enumeration exceeds ``bound`` and marks
    the report incomplete.
    """
    N = p**n
    report = ScanReport(p, n, max_weight_num)
    try:
        report.family_weight = weight_numerator(build_f(p, n).exponents)
    except ValueError:
        pass
    for k in range(1, max_weight_num + 1):
        try:
            found = enumerate_holomorphic(N, k, bound=bound)
        except BoundExceeded as exc:
            report.complete = False
            report.note = f"weight numerator {k}: {exc}"
            break
        exact = [X for X in found if true_level(X) == N]
        report.holomorphic_counts[k] = len(exact)
        for X in exact:
            if not is_primitive(X, N):
                continue
            try:
                if is_quasi_irreducible(X, N, bound):
                    report.simple.append(X)
            except BoundExceeded:
                report.undecided.append(X)
                report.complete = False
    if report.undecided and not report.note:
        report.note = f"{len(report.undecided)} quotients undecided: factor box above bound"
    return report

