"""Bruhat intervals [v, w]: enumeration, covers, atoms/coatoms, Boolean tests."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations as _itperms
from typing import Optional

from .permutations import (
    Perm,
    Transposition,
    bruhat_leq,
    covers_down,
    covers_up,
    fmt,
    length,
)

__all__ = [
    "NotComparableError",
    "BruhatInterval",
    "build_interval",
    "atoms",
    "coatoms",
    "boolean_structure",
    "is_boolean",
    "maximal_chain",
    "subintervals",
    "interval_to_json",
]


class NotComparableError(ValueError):
    """Raised when an interval is requested for v not <= w."""


def _sort_key(p: Perm):
    return (length(p), p)


@dataclass(frozen=True)
class BruhatInterval:
    """The interval [v, w] with elements sorted by (rank, lex).

    covers holds triples (i, j, t): elements[i] lessdot elements[j] via the
    position transposition t.
    """

    v: Perm
    w: Perm
    elements: tuple[Perm, ...]
    covers: tuple[tuple[int, int, Transposition], ...]


def build_interval(v: Perm, w: Perm) -> BruhatInterval:
    """Enumerate [v, w] and its cover relations.

    For small ambient degree the whole group is filtered; for larger degree a
    breadth-first closure from v (bounded above by w) is used, which stays
    cheap when the interval itself is small.
    """
    n = len(v)
    if len(w) != n:
        raise ValueError("degree mismatch")
    if not bruhat_leq(v, w):
        raise NotComparableError(f"{fmt(v)} is not <= {fmt(w)}")
    if n <= 7:
        elems = {
            p
            for p in map(tuple, _itperms(range(1, n + 1)))
            if bruhat_leq(v, p) and bruhat_leq(p, w)
        }
    else:
        elems = {v}
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                for _, z in covers_up(u, w):
                    if z not in elems:
                        elems.add(z)
                        nxt.append(z)
            frontier = nxt
    ordered = tuple(sorted(elems, key=_sort_key))
    index = {p: i for i, p in enumerate(ordered)}
    covers = []
    for i, u in enumerate(ordered):
        for t, z in covers_up(u, w):
            covers.append((i, index[z], t))
    return BruhatInterval(v, w, ordered, tuple(covers))


def atoms(I: BruhatInterval) -> tuple[Perm, ...]:
    """Elements covering v inside [v, w], sorted."""
    return tuple(sorted((z for _, z in covers_up(I.v, I.w)), key=_sort_key))


def coatoms(I: BruhatInterval) -> tuple[Perm, ...]:
    """Elements covered by w inside [v, w], sorted."""
    return tuple(sorted((z for _, z in covers_down(I.w, I.v)), key=_sort_key))


def boolean_structure(I: BruhatInterval) -> Optional[dict[Perm, int]]:
    """Witness that [v, w] is a Boolean lattice, or None.

    The witness maps each element z to the bitmask of atoms below z.  The map
    is an order isomorphism onto the subset lattice when (a) |I| = 2^m for m
    atoms, (b) it is injective, and (c) every Boolean cover mask -> mask|bit
    is also a relation z <= z' in the interval: any containment of masks
    factors through such covers, so both directions of monotonicity follow
    (the forward direction is transitivity of <=).
    """
    ats = atoms(I)
    m = len(ats)
    if len(I.elements) != 1 << m:
        return None
    masks: dict[Perm, int] = {}
    by_mask: dict[int, Perm] = {}
    for z in I.elements:
        mask = 0
        for k, a in enumerate(ats):
            if bruhat_leq(a, z):
                mask |= 1 << k
        if mask in by_mask:
            return None
        masks[z] = mask
        by_mask[mask] = z
    for z, mask in masks.items():
        for k in range(m):
            bit = 1 << k
            if not mask & bit:
                if not bruhat_leq(z, by_mask[mask | bit]):
                    return None
    return masks


def is_boolean(I: BruhatInterval) -> bool:
    return boolean_structure(I) is not None


def maximal_chain(v: Perm, w: Perm) -> tuple[Perm, ...]:
    """The lex-least saturated chain from v to w (deterministic)."""
    if not bruhat_leq(v, w):
        raise NotComparableError(f"{fmt(v)} is not <= {fmt(w)}")
    chain = [v]
    u = v
    while u != w:
        ups = covers_up(u, w)
        u = min(z for _, z in ups)
        chain.append(u)
    return tuple(chain)


def subintervals(I: BruhatInterval) -> tuple[tuple[Perm, Perm], ...]:
    """All comparable pairs (x, y) with v <= x <= y <= w, sorted."""
    out = []
    for x in I.elements:
        for y in I.elements:
            if length(x) <= length(y) and bruhat_leq(x, y):
                out.append((x, y))
    return tuple(sorted(out, key=lambda p: (_sort_key(p[0]), _sort_key(p[1]))))


def interval_to_json(I: BruhatInterval) -> str:
    doc = {
        "v": fmt(I.v),
        "w": fmt(I.w),
        "elements": [fmt(p) for p in I.elements],
        "covers": [[i, j, f"({t[0]},{t[1]})"] for i, j, t in I.covers],
    }
    return json.dumps(doc, indent=2)
