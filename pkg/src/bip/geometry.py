"""Exact integer convex hulls, face lattices, and combinatorial equivalence.

Points are integer vectors (for interval polytopes: the one-line vectors of
the interval elements).  The hull is computed by double description on the
homogenized constraint cone: points are projected onto an affinely
independent coordinate subset (an integer-affine isomorphism of the affine
hull), each projected point q contributes the constraint row (q, 1), and the
extreme rays (alpha, beta) of {y : row . y >= 0 for all rows} are exactly the
facet inequalities alpha . x >= -beta.  Everything is integer arithmetic; the
only rationals appear transiently when inverting the initial simplicial basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from .intervals import build_interval
from .permutations import Perm

__all__ = [
    "LatticePolytope",
    "FaceLattice",
    "hull",
    "interval_polytope",
    "dim_geometric",
    "vertex_degree",
    "is_simple_vertex",
    "is_smooth_vertex",
    "incidence_isomorphism",
    "combinatorially_equivalent",
    "is_combinatorial_cube",
    "cube_lattice",
    "lattice_to_json",
    "to_off",
]

Point = tuple[int, ...]


# ------------------------------------------------------------------ linalgebra


def _rank_profile(rows: Sequence[Sequence[int]]) -> tuple[int, list[int], list[int]]:
    """Fraction-free elimination; returns (rank, pivot row ids, pivot col ids)."""
    work = [list(r) for r in rows]
    ids = list(range(len(work)))
    ncols = len(work[0]) if work else 0
    pivot_rows: list[int] = []
    pivot_cols: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        ids[r], ids[piv] = ids[piv], ids[r]
        head = work[r]
        for i in range(r + 1, len(work)):
            if work[i][col]:
                a, b = head[col], work[i][col]
                work[i] = [a * y - b * x for x, y in zip(head, work[i])]
        pivot_rows.append(ids[r])
        pivot_cols.append(col)
        r += 1
        if r == len(work):
            break
    return r, pivot_rows, pivot_cols


def _rank(rows: Sequence[Sequence[int]]) -> int:
    return _rank_profile(rows)[0]


def affine_rank(points: Sequence[Point]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return _rank([[x - b for x, b in zip(p, base)] for p in points[1:]])


def _det(matrix: list[list[int]]) -> int:
    """Bareiss determinant, exact."""
    m = [row[:] for row in matrix]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        return tuple(vec)
    lead = next(x for x in vec if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in vec)


def _inverse_columns(matrix: list[list[int]]) -> list[tuple[int, ...]]:
    """Primitive integer vectors spanning the columns of matrix^{-1}."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    cols = []
    for j in range(n):
        column = [aug[i][n + j] for i in range(n)]
        denom = 1
        for x in column:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        cols.append(_primitive([int(x * denom) for x in column]))
    return cols


# ------------------------------------------------------------------ data types


@dataclass(frozen=True)
class LatticePolytope:
    """Deduplicated, lexicographically sorted integer points with hull data."""

    points: tuple[Point, ...]
    dim: int
    vertex_mask: tuple[bool, ...]


@dataclass
class FaceLattice:
    """Facets and vertex incidence of a hull; full lattice computed on demand.

    facets[k] is (normal, offset) with normal . x >= offset over the ambient
    coordinates; facet_vertices[k] lists point indices lying on facet k.
    """

    points: tuple[Point, ...]
    dim: int
    facets: tuple[tuple[Point, int], ...]
    facet_vertices: tuple[tuple[int, ...], ...]
    vertex_mask: tuple[bool, ...]
    _proj: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    _faces: Optional[dict[frozenset, int]] = field(repr=False, default=None)

    def vertex_count(self) -> int:
        return sum(self.vertex_mask)

    def faces(self) -> dict[frozenset, int]:
        """All nonempty proper and improper faces as vertex sets -> dimension."""
        if self._faces is None:
            self._faces = _close_faces(self)
        return self._faces

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * max(self.dim, 0)
        for _, d in self.faces().items():
            if 0 <= d < self.dim:
                counts[d] += 1
        return tuple(counts)


# ------------------------------------------------------------------ hull


def _project(points: Sequence[Point]) -> tuple[list[tuple[int, ...]], list[int], int]:
    """Project onto pivot columns of the difference matrix (affine iso)."""
    base = points[0]
    diffs = [[x - b for x, b in zip(p, base)] for p in points[1:]]
    d, _, cols = _rank_profile(diffs)
    proj = [tuple(p[c] for c in cols) for p in points]
    return proj, cols, d


def _initial_simplex(proj: list[tuple[int, ...]]) -> list[int]:
    base = proj[0]
    diffs = [[x - b for x, b in zip(p, base)] for p in proj[1:]]
    _, rows, _ = _rank_profile(diffs)
    return [0] + [i + 1 for i in rows]


def _dual_description(proj: list[tuple[int, ...]], d: int):
    """Extreme rays (alpha, beta) of {y : (q_i, 1) . y >= 0}, with tight masks."""
    rows = [q + (1,) for q in proj]
    m = len(rows)

    def full_tight(ray: tuple[int, ...]) -> int:
        mask = 0
        for i, row in enumerate(rows):
            if sum(a * b for a, b in zip(row, ray)) == 0:
                mask |= 1 << i
        return mask

    init = _initial_simplex(proj)
    matrix = [list(rows[i]) for i in init]
    det = _det([row[:] for row in matrix])
    rays = []
    for col in _inverse_columns(matrix):
        # orient so the simplex row dot products are >= 0
        ray = col if det > 0 else tuple(-x for x in col)
        # the inverse columns satisfy M . col = e_k / scale with the sign of det
        if any(sum(a * b for a, b in zip(rows[i], ray)) < 0 for i in init):
            ray = tuple(-x for x in ray)
        rays.append(ray)
    tights = [full_tight(r) for r in rays]

    processed = 0
    for i in init:
        processed |= 1 << i
    order = [i for i in range(m) if i not in set(init)]
    for k in order:
        row = rows[k]
        vals = [sum(a * b for a, b in zip(row, r)) for r in rays]
        if all(v >= 0 for v in vals):
            processed |= 1 << k
            continue
        pos = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays: list[tuple[int, ...]] = []
        new_tights: list[int] = []
        for ip in pos:
            for im in neg:
                common = tights[ip] & tights[im] & processed
                if bin(common).count("1") < d - 1:
                    continue
                adjacent = True
                for io in range(len(rays)):
                    if io in (ip, im):
                        continue
                    if common & tights[io] & processed == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = tuple(
                    vals[ip] * b - vals[im] * a
                    for a, b in zip(rays[ip], rays[im])
                )
                ray = _primitive(combo)
                new_rays.append(ray)
                new_tights.append(full_tight(ray))
        keep = pos + zero
        rays = [rays[i] for i in keep] + new_rays
        tights = [tights[i] for i in keep] + new_tights
        processed |= 1 << k
    return rays, tights


def hull(points: Sequence[Sequence[int]]) -> tuple[LatticePolytope, FaceLattice]:
    """Exact convex hull: facet inequalities and vertex incidence."""
    pts = tuple(sorted({tuple(int(x) for x in p) for p in points}))
    if not pts:
        raise ValueError("no points")
    ncoords = len(pts[0])
    if any(len(p) != ncoords for p in pts):
        raise ValueError("points of mixed dimension")
    proj, cols, d = _project(pts)
    if d == 0:
        poly = LatticePolytope(pts, 0, (True,))
        return poly, FaceLattice(pts, 0, (), (), (True,), tuple(proj))

    rays, tights = _dual_description(proj, d)
    facets = []
    facet_vertices = []
    for ray, tight in sorted(zip(rays, tights)):
        alpha, beta = ray[:-1], ray[-1]
        normal = [0] * ncoords
        for c, a in zip(cols, alpha):
            normal[c] = a
        members = tuple(i for i in range(len(pts)) if tight >> i & 1)
        facets.append((tuple(normal), -beta))
        facet_vertices.append(members)

    # a point is a vertex iff its tight facet normals span the full dim
    tight_at: list[list[int]] = [[] for _ in pts]
    for k, members in enumerate(facet_vertices):
        for i in members:
            tight_at[i].append(k)
    vertex_mask = []
    for i in range(len(pts)):
        normals = [rays[0][:0]]  # placeholder, replaced below
        normals = [facets[k][0] for k in tight_at[i]]
        normals_proj = [tuple(nrm[c] for c in cols) for nrm in normals]
        vertex_mask.append(len(normals_proj) >= d and _rank(normals_proj) == d)
    mask = tuple(vertex_mask)
    # facet members restricted to vertices (non-vertex points never bound faces)
    facet_vertices = tuple(
        tuple(i for i in members if mask[i]) for members in facet_vertices
    )
    poly = LatticePolytope(pts, d, mask)
    lattice = FaceLattice(pts, d, tuple(facets), facet_vertices, mask, tuple(proj))
    return poly, lattice


def interval_polytope(v: Perm, w: Perm) -> tuple[LatticePolytope, FaceLattice]:
    """Hull of the one-line vectors of [v, w]; every element is a vertex."""
    I = build_interval(v, w)
    poly, lattice = hull(I.elements)
    if not all(poly.vertex_mask):
        raise RuntimeError("interval point failed the vertex test")
    return poly, lattice


def dim_geometric(v: Perm, w: Perm) -> int:
    """Affine dimension of the interval's point set (no hull needed)."""
    return affine_rank(build_interval(v, w).elements)


# ------------------------------------------------------------------ face lattice


def _close_faces(F: FaceLattice) -> dict[frozenset, int]:
    proj = F._proj
    vertex_ids = [i for i, isv in enumerate(F.vertex_mask) if isv]
    top = frozenset(vertex_ids)
    sets = {frozenset(members) for members in F.facet_vertices}
    frontier = set(sets)
    while frontier:
        nxt = set()
        for fs in list(frontier):
            for gs in list(sets):
                isect = fs & gs
                if isect and isect not in sets:
                    sets.add(isect)
                    nxt.add(isect)
        frontier = nxt
    sets.add(top)
    out: dict[frozenset, int] = {}
    for fs in sets:
        out[fs] = affine_rank([proj[i] for i in sorted(fs)])
    return out


def euler_characteristic(F: FaceLattice) -> int:
    """Alternating sum over nonempty faces, full face included; always 1."""
    return sum((-1) ** d for d in F.faces().values())


def _edges_at(F: FaceLattice, idx: int) -> list[int]:
    out = []
    for fs, d in F.faces().items():
        if d == 1 and idx in fs:
            other = next(i for i in fs if i != idx)
            out.append(other)
    return sorted(out)


def _point_index(F: FaceLattice, z: Sequence[int]) -> int:
    key = tuple(int(x) for x in z)
    try:
        idx = F.points.index(key)
    except ValueError:
        raise ValueError(f"{key} is not a point of this polytope") from None
    if not F.vertex_mask[idx]:
        raise ValueError(f"{key} is not a vertex")
    return idx


def vertex_degree(F: FaceLattice, z: Sequence[int]) -> int:
    """Number of polytope edges at the point z (given in ambient coordinates)."""
    return len(_edges_at(F, _point_index(F, z)))


def is_simple_vertex(F: FaceLattice, z: Sequence[int]) -> bool:
    return vertex_degree(F, z) == F.dim


def is_smooth_vertex(F: FaceLattice, z: Sequence[int]) -> bool:
    """Simple, and the primitive edge directions at z span the full lattice.

    The index of the edge-direction lattice inside its saturation equals the
    gcd of the maximal minors of the direction matrix, so smoothness is
    "simple and that gcd is 1".
    """
    idx = _point_index(F, z)
    others = _edges_at(F, idx)
    if len(others) != F.dim:
        return False
    if F.dim == 0:
        return True
    base = F.points[idx]
    dirs = [
        _primitive([x - b for x, b in zip(F.points[j], base)]) for j in others
    ]
    ncols = len(base)
    g = 0
    for cols in combinations(range(ncols), F.dim):
        minor = _det([[vec[c] for c in cols] for vec in dirs])
        g = gcd(g, minor)
        if g == 1:
            return True
    return g == 1


# ------------------------------------------------------------------ equivalence


def _refine_colors(F: FaceLattice):
    """Stable color refinement on the vertex/facet incidence bipartite graph."""
    vids = [i for i, isv in enumerate(F.vertex_mask) if isv]
    vpos = {i: k for k, i in enumerate(vids)}
    nfac = len(F.facet_vertices)
    inc_v: list[list[int]] = [[] for _ in vids]
    inc_f: list[list[int]] = [[] for _ in range(nfac)]
    for f, members in enumerate(F.facet_vertices):
        for i in members:
            inc_v[vpos[i]].append(f)
            inc_f[f].append(vpos[i])
    vcol = [0] * len(vids)
    fcol = [0] * nfac
    while True:
        vsig = [
            (vcol[k], tuple(sorted(fcol[f] for f in inc_v[k])))
            for k in range(len(vids))
        ]
        fsig = [
            (fcol[f], tuple(sorted(vcol[k] for k in inc_f[f])))
            for f in range(nfac)
        ]
        vmap = {s: c for c, s in enumerate(sorted(set(vsig)))}
        fmap = {s: c for c, s in enumerate(sorted(set(fsig)))}
        nv = [vmap[s] for s in vsig]
        nf = [fmap[s] for s in fsig]
        if nv == vcol and nf == fcol:
            break
        vcol, fcol = nv, nf
    return vids, vcol, fcol, inc_v, inc_f


def incidence_isomorphism(P: FaceLattice, Q: FaceLattice):
    """Vertex bijection carrying facets onto facets, or None.

    Vertex-facet incidence determines the whole face lattice of a polytope,
    so this decides combinatorial equivalence.  Individualization-refinement:
    refine stable colors, split the first ambiguous class on each side, and
    recurse; a completed assignment is verified against the exact incidence.
    """
    if P.dim != Q.dim:
        return None
    if P.vertex_count() != Q.vertex_count():
        return None
    if len(P.facet_vertices) != len(Q.facet_vertices):
        return None
    sizes = sorted(len(m) for m in P.facet_vertices)
    if sizes != sorted(len(m) for m in Q.facet_vertices):
        return None

    vids_p, vcol_p, fcol_p, inc_vp, inc_fp = _refine_colors(P)
    vids_q, vcol_q, fcol_q, inc_vq, inc_fq = _refine_colors(Q)

    fsets_p = [frozenset(inc) for inc in inc_fp]
    fsets_q = {frozenset(inc) for inc in inc_fq}

    def search(vc_p, fc_p, vc_q, fc_q):
        if sorted(vc_p) != sorted(vc_q) or sorted(fc_p) != sorted(fc_q):
            return None
        # find the smallest ambiguous vertex class
        classes: dict[int, list[int]] = {}
        for k, c in enumerate(vc_p):
            classes.setdefault(c, []).append(k)
        ambiguous = sorted(
            (len(ks), c) for c, ks in classes.items() if len(ks) > 1
        )
        if not ambiguous:
            # colors are discrete on vertices: read the mapping off
            by_col_q = {c: k for k, c in enumerate(vc_q)}
            if len(by_col_q) != len(vc_q):
                return None
            mapping = {k: by_col_q[c] for k, c in enumerate(vc_p)}
            image_sets = {
                frozenset(mapping[k] for k in fs) for fs in fsets_p
            }
            if image_sets == fsets_q:
                return mapping
            return None
        _, c = ambiguous[0]
        k0 = classes[c][0]
        fresh = max(max(vc_p), max(vc_q)) + 1
        for k1 in [k for k, cc in enumerate(vc_q) if cc == c]:
            nv_p = list(vc_p)
            nv_q = list(vc_q)
            nv_p[k0] = fresh
            nv_q[k1] = fresh
            rp = _stabilize(nv_p, fc_p, inc_vp, inc_fp)
            rq = _stabilize(nv_q, fc_q, inc_vq, inc_fq)
            found = search(*rp, *rq)
            if found is not None:
                return found
        return None

    def _stabilize(vcol, fcol, inc_v, inc_f):
        vcol, fcol = list(vcol), list(fcol)
        while True:
            vsig = [
                (vcol[k], tuple(sorted(fcol[f] for f in inc_v[k])))
                for k in range(len(vcol))
            ]
            fsig = [
                (fcol[f], tuple(sorted(vcol[k] for k in inc_f[f])))
                for f in range(len(fcol))
            ]
            vmap = {s: c for c, s in enumerate(sorted(set(vsig)))}
            fmap = {s: c for c, s in enumerate(sorted(set(fsig)))}
            nv = [vmap[s] for s in vsig]
            nf = [fmap[s] for s in fsig]
            if nv == vcol and nf == fcol:
                return vcol, fcol
            vcol, fcol = nv, nf

    local = search(vcol_p, fcol_p, vcol_q, fcol_q)
    if local is None:
        return None
    return {vids_p[k]: vids_q[j] for k, j in local.items()}


def combinatorially_equivalent(P: FaceLattice, Q: FaceLattice) -> bool:
    return incidence_isomorphism(P, Q) is not None


def cube_lattice(d: int) -> FaceLattice:
    """The face lattice of the standard d-cube (reference for cube tests)."""
    pts = tuple(sorted(tuple(b >> k & 1 for k in range(d)) for b in range(1 << d)))
    if d == 0:
        return FaceLattice(pts, 0, (), (), (True,), pts)
    facets = []
    members = []
    for k in range(d):
        for val in (0, 1):
            normal = tuple(int(c == k) * (1 if val == 0 else -1) for c in range(d))
            offset = 0 if val == 0 else -1
            facets.append((normal, offset))
            members.append(tuple(i for i, p in enumerate(pts) if p[k] == val))
    mask = tuple(True for _ in pts)
    return FaceLattice(pts, d, tuple(facets), tuple(members), mask, pts)


def is_combinatorial_cube(F: FaceLattice) -> bool:
    d = F.dim
    if F.vertex_count() != 1 << d:
        return False
    if len(F.facet_vertices) != (2 * d if d else 0):
        return False
    if any(len(m) != 1 << (d - 1) for m in F.facet_vertices if d):
        return False
    return combinatorially_equivalent(F, cube_lattice(d))


# ------------------------------------------------------------------ output


def lattice_to_json(F: FaceLattice) -> str:
    doc = {
        "dim": F.dim,
        "f_vector": list(F.f_vector()),
        "facets": [
            {
                "normal": list(normal),
                "offset": offset,
                "vertices": list(members),
            }
            for (normal, offset), members in zip(F.facets, F.facet_vertices)
        ],
    }
    return json.dumps(doc, indent=2)


def to_off(F: FaceLattice) -> str:
    """OFF text for 3-dimensional hulls, in projected integer coordinates."""
    if F.dim != 3:
        raise ValueError(f"OFF export needs a 3-dimensional polytope, got {F.dim}")
    vids = [i for i, isv in enumerate(F.vertex_mask) if isv]
    vpos = {i: k for k, i in enumerate(vids)}
    coords = [F._proj[i] for i in vids]
    lines = ["OFF", f"{len(vids)} {len(F.facet_vertices)} 0"]
    for q in coords:
        lines.append(" ".join(str(x) for x in q))
    for members in F.facet_vertices:
        ring = _cyclic_order([F._proj[i] for i in members])
        ordered = [vpos[members[k]] for k in ring]
        lines.append(str(len(members)) + " " + " ".join(str(k) for k in ordered))
    return "\n".join(lines) + "\n"


def _cyclic_order(pts: list[tuple[int, ...]]) -> list[int]:
    """Indices of coplanar points in convex position, in cyclic order."""
    base = pts[0]
    diffs = [[x - b for x, b in zip(p, base)] for p in pts]
    _, _, cols = _rank_profile(diffs)
    c0, c1 = cols[0], cols[1]
    m = len(pts)
    sa = sum(p[c0] for p in pts)
    sb = sum(p[c1] for p in pts)
    rel = [(m * p[c0] - sa, m * p[c1] - sb) for p in pts]

    def half(v):
        return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1

    def cmp(i, j):
        hi, hj = half(rel[i]), half(rel[j])
        if hi != hj:
            return -1 if hi < hj else 1
        cross = rel[i][0] * rel[j][1] - rel[j][0] * rel[i][1]
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(range(m), key=cmp_to_key(cmp))
