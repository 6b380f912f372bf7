"""Permutations of [n] in one-line notation, Bruhat order, and covers.

A permutation is a plain tuple of ints ``(u(1), ..., u(n))`` with entries
exactly ``{1, ..., n}``.  Transpositions are pairs ``(i, j)`` of positions,
1-based, ``i < j``.  All comparisons use the sorted-prefix criterion for the
(strong) Bruhat order, so everything here is exact integer arithmetic.
"""

from __future__ import annotations

from bisect import insort
from itertools import combinations
from typing import Iterable, Optional, Sequence

Perm = tuple[int, ...]
Transposition = tuple[int, int]

__all__ = [
    "Perm",
    "Transposition",
    "permutation",
    "parse",
    "fmt",
    "identity",
    "longest",
    "inverse",
    "compose",
    "apply_transposition",
    "simple",
    "eval_word",
    "conjugate_by_longest",
    "length",
    "bruhat_leq",
    "covers_up",
    "covers_down",
    "pattern_avoids",
    "moment_image",
    "plucker_support",
]


def permutation(entries: Iterable[int]) -> Perm:
    """Validate ``entries`` as one-line notation and return it as a tuple."""
    p = tuple(int(x) for x in entries)
    n = len(p)
    if n < 1 or set(p) != set(range(1, n + 1)):
        raise ValueError(f"not a permutation of [1..n]: {p!r}")
    return p


def parse(text: str) -> Perm:
    """Parse ``"3412"`` (compact, n <= 9) or ``"[3,4,1,2]"`` (bracketed)."""
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        return permutation(int(t) for t in s[1:-1].split(","))
    if not s.isdigit():
        raise ValueError(f"cannot parse permutation from {text!r}")
    return permutation(int(c) for c in s)


def fmt(p: Perm) -> str:
    """One-line text form; compact for n <= 9, bracketed beyond."""
    if len(p) <= 9:
        return "".join(str(x) for x in p)
    return "[" + ",".join(str(x) for x in p) + "]"


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def longest(n: int) -> Perm:
    """The longest element w0 = (n, n-1, ..., 1)."""
    return tuple(range(n, 0, -1))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x - 1] = i + 1
    return tuple(inv)


def compose(p: Perm, q: Perm) -> Perm:
    """(p q)(i) = p(q(i))."""
    if len(p) != len(q):
        raise ValueError("degree mismatch")
    return tuple(p[x - 1] for x in q)


def apply_transposition(p: Perm, t: Transposition) -> Perm:
    """Right multiplication p * t_{i,j}: swaps positions i and j of p."""
    i, j = t
    if not (1 <= i < j <= len(p)):
        raise ValueError(f"bad transposition {t!r} for n={len(p)}")
    q = list(p)
    q[i - 1], q[j - 1] = q[j - 1], q[i - 1]
    return tuple(q)


def simple(n: int, i: int) -> Perm:
    """The simple reflection s_i in S_n."""
    return apply_transposition(identity(n), (i, i + 1))


def eval_word(n: int, indices: Sequence[int]) -> Perm:
    """Product s_{j1} s_{j2} ... s_{jm} in S_n, evaluated left to right."""
    p = identity(n)
    for j in indices:
        p = apply_transposition(p, (j, j + 1))
    return p


def conjugate_by_longest(p: Perm) -> Perm:
    """w0 p w0; sends s_i to s_{n-i}."""
    n = len(p)
    return tuple(n + 1 - p[n - i] for i in range(1, n + 1))


def length(p: Perm) -> int:
    """Number of inversions, i.e. Coxeter length."""
    return sum(1 for i, j in combinations(range(len(p)), 2) if p[i] > p[j])


def _prefixes_dominated(a: Perm, b: Perm, lo: int, hi: int) -> bool:
    # sorted{a(1..p)} <= sorted{b(1..p)} entrywise for each p in [lo, hi).
    pa: list[int] = sorted(a[: lo - 1])
    pb: list[int] = sorted(b[: lo - 1])
    for p in range(lo - 1, hi - 1):
        insort(pa, a[p])
        insort(pb, b[p])
        for x, y in zip(pa, pb):
            if x > y:
                return False
    return True


def bruhat_leq(v: Perm, w: Perm) -> bool:
    """v <= w in the Bruhat order (sorted-prefix criterion)."""
    n = len(v)
    if len(w) != n:
        raise ValueError("degree mismatch")
    if v == w:
        return True
    # prefix length n always ties, so only 1..n-1 need checking
    return _prefixes_dominated(v, w, 1, n)


def covers_up(
    u: Perm, bound_w: Optional[Perm] = None
) -> tuple[tuple[Transposition, Perm], ...]:
    """All (t, u t) with u lessdot u t, optionally restricted to u t <= bound_w.

    Cover criterion: t = (i, j) works iff u(i) < u(j) and no position strictly
    between i and j carries a value strictly between u(i) and u(j).  When a
    bound is given (u <= bound_w assumed), only prefixes i <= p < j can break
    u t <= bound_w, so just those are compared.  Pairs come back sorted by t.
    """
    n = len(u)
    out = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            a, b = u[i - 1], u[j - 1]
            if a > b:
                continue
            if any(a < u[p - 1] < b for p in range(i + 1, j)):
                continue
            z = apply_transposition(u, (i, j))
            if bound_w is None or _prefixes_dominated(z, bound_w, i, j):
                out.append(((i, j), z))
    return tuple(out)


def covers_down(
    u: Perm, bound_v: Optional[Perm] = None
) -> tuple[tuple[Transposition, Perm], ...]:
    """All (t, u t) with u t lessdot u, optionally restricted to bound_v <= u t."""
    n = len(u)
    out = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            a, b = u[i - 1], u[j - 1]
            if a < b:
                continue
            if any(b < u[p - 1] < a for p in range(i + 1, j)):
                continue
            z = apply_transposition(u, (i, j))
            if bound_v is None or _prefixes_dominated(bound_v, z, i, j):
                out.append(((i, j), z))
    return tuple(out)


def pattern_avoids(w: Perm, pattern: Perm) -> bool:
    """True iff no subsequence of w is order-isomorphic to ``pattern``."""
    k = len(pattern)
    rank_of = {x: r for r, x in enumerate(sorted(pattern), start=1)}
    target = tuple(rank_of[x] for x in pattern)
    for sub in combinations(w, k):
        order = sorted(sub)
        if tuple(order.index(x) + 1 for x in sub) == target:
            return False
    return True


def moment_image(u: Perm) -> Perm:
    """Torus moment image of the fixed point uB: the one-line form of u^{-1}.

    With this normalization the moment images of the fixed points indexed by
    [v^{-1}, w^{-1}] are exactly the one-line vectors of [v, w], i.e. the
    vertex candidates of the interval polytope of (v, w).
    """
    return inverse(u)


def plucker_support(u: Perm, d: int) -> tuple[int, ...]:
    """The sorted first-d values {u(1), ..., u(d)}, 1 <= d <= n-1."""
    if not (1 <= d <= len(u) - 1):
        raise ValueError(f"d={d} out of range for n={len(u)}")
    return tuple(sorted(u[:d]))
