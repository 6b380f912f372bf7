"""Interval enumeration, atoms/coatoms, Boolean recognition, chains."""

from __future__ import annotations

import json
import random
from itertools import combinations, permutations as itperms

import pytest

from bip.intervals import (
    NotComparableError,
    atoms,
    boolean_structure,
    build_interval,
    coatoms,
    interval_to_json,
    is_boolean,
    maximal_chain,
    subintervals,
)
from bip.permutations import bruhat_leq, fmt, identity, length, longest, parse


def P(s):
    return parse(s)


def all_perms(n):
    return [tuple(p) for p in itperms(range(1, n + 1))]


# ---------------------------------------------------------------- enumeration


def test_interval_1324_3412_elements():
    I = build_interval(P("1324"), P("3412"))
    assert {fmt(p) for p in I.elements} == {
        "1324", "1342", "1423", "1432", "2314",
        "2413", "3124", "3142", "3214", "3412",
    }
    # sorted by (rank, lex)
    ranks = [length(p) for p in I.elements]
    assert ranks == sorted(ranks)
    assert I.elements[0] == P("1324") and I.elements[-1] == P("3412")


def test_interval_rejects_incomparable():
    with pytest.raises(NotComparableError):
        build_interval(P("2143"), P("1324"))


def test_interval_covers_are_covers():
    I = build_interval(P("1324"), P("4231"))
    assert len(I.elements) == 16
    for i, j, t in I.covers:
        x, y = I.elements[i], I.elements[j]
        assert length(y) == length(x) + 1
        assert bruhat_leq(x, y)
        swapped = [k for k in range(4) if x[k] != y[k]]
        assert (swapped[0] + 1, swapped[1] + 1) == t


def test_interval_bfs_route_matches_filter_route():
    # the BFS path is used for n > 7; force it through a degree-8 embedding
    v4, w4 = P("1324"), P("3412")
    pad = tuple(range(5, 9))
    v8 = v4 + pad
    w8 = w4 + pad
    I8 = build_interval(v8, w8)
    I4 = build_interval(v4, w4)
    assert {p[:4] for p in I8.elements} == set(I4.elements)
    assert len(I8.elements) == len(I4.elements)


def test_singleton_interval():
    I = build_interval(P("321"), P("321"))
    assert I.elements == (P("321"),)
    assert atoms(I) == () and coatoms(I) == ()
    assert is_boolean(I)


# ---------------------------------------------------------------- atoms/coatoms


def test_atoms_and_coatoms_13254_35142():
    I = build_interval(P("13254"), P("35142"))
    assert {fmt(p) for p in atoms(I)} == {
        "13524", "31254", "13452", "15234", "23154", "14253",
    }
    assert {fmt(p) for p in coatoms(I)} == {
        "31542", "35124", "15342", "34152", "25143",
    }


def test_atoms_of_two_run_interval():
    # v = 14325, w = v s1 s4 s3 = 41532: covers inside the interval stay
    # within the blocks [1,2] and [3,5]
    I = build_interval(P("14325"), P("41532"))
    assert {fmt(p) for p in atoms(I)} == {"41325", "14523", "14352"}


def test_atoms_match_cover_level():
    rng = random.Random(7)
    perms = all_perms(5)
    for _ in range(30):
        v, w = rng.choice(perms), rng.choice(perms)
        if not bruhat_leq(v, w):
            continue
        I = build_interval(v, w)
        lv = length(v)
        assert set(atoms(I)) == {p for p in I.elements if length(p) == lv + 1}
        lw = length(w)
        assert set(coatoms(I)) == {p for p in I.elements if length(p) == lw - 1}


# ---------------------------------------------------------------- Boolean


def _boolean_oracle(I):
    """Independent route: backtracking Hasse-diagram isomorphism onto 2^[m]."""
    elems = list(I.elements)
    m = len(atoms(I))
    if len(elems) != 1 << m:
        return False
    base = length(I.v)
    rank = {x: length(x) - base for x in elems}
    if sorted(rank.values()) != sorted(bin(s).count("1") for s in range(1 << m)):
        return False
    # an injective cover-to-cover map with equal cover counts is surjective,
    # so completing the assignment below really is a Hasse isomorphism
    if len(I.covers) != m * (1 << max(m - 1, 0)):
        return False
    ups = {x: set() for x in elems}
    for i, j, _ in I.covers:
        ups[elems[i]].add(elems[j])
    cube_ups = {
        s: {s | (1 << k) for k in range(m) if not s & (1 << k)} for s in range(1 << m)
    }
    order = sorted(elems, key=lambda x: (rank[x], x))
    assign = {}
    used = set()

    def extend(idx):
        if idx == len(order):
            return True
        x = order[idx]
        for s in range(1 << m):
            if s in used or bin(s).count("1") != rank[x]:
                continue
            # covers already assigned must map to cube covers, both directions
            ok = True
            for y, t in assign.items():
                if x in ups[y] and s not in cube_ups[t]:
                    ok = False
                    break
                if y in ups[x] and t not in cube_ups[s]:
                    ok = False
                    break
            if not ok:
                continue
            assign[x] = s
            used.add(s)
            if extend(idx + 1):
                return True
            del assign[x]
            used.discard(s)
        return False

    return extend(0)


def test_boolean_known_values():
    assert is_boolean(build_interval(P("1324"), P("4231")))
    assert not is_boolean(build_interval(P("1324"), P("3412")))  # 4-crown
    assert not is_boolean(build_interval(P("2143"), P("4231")))  # 4-crown
    assert is_boolean(build_interval(identity(4), P("2143")))


def test_boolean_witness_is_order_isomorphism():
    I = build_interval(P("1324"), P("4231"))
    wit = boolean_structure(I)
    assert wit is not None
    assert sorted(wit.values()) == list(range(16))
    for x in I.elements:
        for y in I.elements:
            assert bruhat_leq(x, y) == (wit[x] | wit[y] == wit[y])


def test_boolean_agrees_with_backtracking_oracle_s4():
    perms = all_perms(4)
    for v in perms:
        for w in perms:
            if bruhat_leq(v, w):
                I = build_interval(v, w)
                assert is_boolean(I) == _boolean_oracle(I), (v, w)


def test_boolean_agrees_with_backtracking_oracle_s5_sampled():
    rng = random.Random(13)
    perms = all_perms(5)
    done = 0
    while done < 150:
        v, w = rng.choice(perms), rng.choice(perms)
        if not bruhat_leq(v, w):
            continue
        I = build_interval(v, w)
        assert is_boolean(I) == _boolean_oracle(I), (v, w)
        done += 1


# ---------------------------------------------------------------- chains


def test_maximal_chain_shape_and_determinism():
    v, w = P("1324"), P("4231")
    chain = maximal_chain(v, w)
    assert chain[0] == v and chain[-1] == w
    assert len(chain) == length(w) - length(v) + 1
    for x, y in zip(chain, chain[1:]):
        assert length(y) == length(x) + 1 and bruhat_leq(x, y)
    # lex-least at each step
    I = build_interval(v, w)
    assert chain[1] == min(atoms(I))
    assert maximal_chain(v, w) == chain


def test_maximal_chain_trivial():
    assert maximal_chain(P("312"), P("312")) == (P("312"),)


# ---------------------------------------------------------------- subintervals, JSON


def test_subintervals_are_all_comparable_pairs():
    I = build_interval(P("1324"), P("3412"))
    subs = subintervals(I)
    expect = {
        (x, y)
        for x in I.elements
        for y in I.elements
        if bruhat_leq(x, y)
    }
    assert set(subs) == expect
    assert len(subs) == len(expect)


def test_interval_json_shape():
    I = build_interval(P("1324"), P("3412"))
    doc = json.loads(interval_to_json(I))
    assert doc["v"] == "1324" and doc["w"] == "3412"
    assert len(doc["elements"]) == 10
    for i, j, label in doc["covers"]:
        assert 0 <= i < j < 10
        assert label.startswith("(") and label.endswith(")")


def test_interval_of_whole_group():
    I = build_interval(identity(4), longest(4))
    assert len(I.elements) == 24
    assert len(atoms(I)) == 3 and len(coatoms(I)) == 3
