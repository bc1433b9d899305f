"""Simplicial fans on ``K^vee`` as triangulations of its level-1 slice.

A maximal cone of the fan is the cone over a maximal simplex of the slice
polytope, so a fan is stored as a list of point tuples (the vertices, a
subset of the slice) and index tuples of size ``rank N``.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .cones import GorensteinPair, extreme_rays
from .decomp import Decomposition, product_decomposition
from .linalg import Vector, int_det, pairing, rank, solve
from .lp import linprog


@dataclass(frozen=True)
class Triangulation:
    points: tuple[Vector, ...]
    simplices: tuple[tuple[int, ...], ...]
    weights: tuple[Fraction, ...] | None = None
    distinguished: Decomposition | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def simplex_points(self, i: int) -> tuple[Vector, ...]:
        return tuple(self.points[j] for j in self.simplices[i])

    def to_json(self) -> dict:
        return {
            "vertices": [list(p) for p in self.points],
            "simplices": [list(s) for s in self.simplices],
            "weights": None if self.weights is None else [str(w) for w in self.weights],
        }


def lower_hull_cells(points: Sequence[Vector], weights: Sequence) -> list[tuple[int, ...]]:
    """Cells of the regular subdivision induced by lifting ``points`` to ``weights``.

    Points must lie on a common affine hyperplane not through the origin
    (the level-1 slice).  Lower facets of the cone over the lifted points,
    together with the upward vertical ray, are read off by double
    description.
    """
    n = len(points[0])
    scale = lcm(*(Fraction(w).denominator for w in weights))
    lifted = [tuple(p) + (int(Fraction(w) * scale),) for p, w in zip(points, weights)]
    up = (0,) * n + (1,)
    normals = extreme_rays(lifted + [up], n + 1)
    cells = []
    for y in normals:
        if y[-1] <= 0:
            continue
        cell = tuple(i for i, q in enumerate(lifted) if pairing(q, y) == 0)
        cells.append(cell)
    return sorted(cells)


def _walls(simplices):
    walls = defaultdict(list)
    for si, s in enumerate(simplices):
        for pos, v in enumerate(s):
            walls[s[:pos] + s[pos + 1 :]].append((si, v))
    return walls


def check_regularity(points: Sequence[Vector], simplices: Sequence[Sequence[int]]) -> tuple[Fraction, ...] | None:
    """Weights whose lower hull induces the triangulation, or None.

    Solves the strict local-folding system exactly: for every interior wall
    shared by ``F + a`` and ``F + b``, the point ``b`` must lie strictly above
    the affine interpolation of the weights on ``F + a``.  The slack is
    maximized (capped at 1) and must come out positive.
    """
    pts = [tuple(p) for p in points]
    npts = len(pts)
    simplices = [tuple(s) for s in simplices]
    walls = _walls(simplices)
    if any(len(v) > 2 for v in walls.values()):
        return None
    A_ub, b_ub = [], []
    for occ in walls.values():
        if len(occ) != 2:
            continue
        for (si, _), (_, b) in (occ, occ[::-1]):
            sigma = simplices[si]
            lam = solve([list(col) for col in zip(*(pts[j] for j in sigma))], pts[b])
            row = [Fraction(0)] * (npts + 1)
            for j, l in zip(sigma, lam):
                row[j] += l
            row[b] -= 1
            row[-1] = Fraction(1)
            A_ub.append(row)
            b_ub.append(0)
    cap = [Fraction(0)] * npts + [Fraction(1)]
    A_ub.append(cap)
    b_ub.append(1)
    c = [0] * npts + [1]
    res = linprog(c, A_ub, b_ub)
    if res.status != "optimal" or res.value <= 0:
        return None
    w = res.x[:npts]
    base = min(w)
    return tuple(x - base for x in w)


def check_centrality(T: Triangulation, d: Decomposition) -> bool:
    """Whether every maximal simplex has all distinguished points as vertices."""
    idx = {p: i for i, p in enumerate(T.points)}
    missing = [p for p in d.points if p not in idx]
    if missing:
        raise ValueError(f"distinguished points {missing} are not vertices of the triangulation")
    need = {idx[p] for p in d.points}
    return all(need <= set(s) for s in T.simplices)


def quotient_maximal_cones(T: Triangulation, d: Decomposition) -> list[tuple[Vector, ...]]:
    """Ray data of the maximal cones of the quotient fan.

    Each maximal simplex minus the distinguished points, deduplicated in
    simplex order.
    """
    if not check_centrality(T, d):
        raise ValueError("centrality fails; the quotient fan is undefined")
    dist = set(d.points)
    out: list[tuple[Vector, ...]] = []
    for i in range(len(T.simplices)):
        cone = tuple(sorted(p for p in T.simplex_points(i) if p not in dist))
        if cone not in out:
            out.append(cone)
    return out


def normalized_volume(points: Sequence[Vector], simplices: Sequence[Sequence[int]]) -> int:
    return sum(abs(int_det([points[j] for j in s])) for s in simplices)


def triangulation_from_weights(points: Sequence[Vector], weights: Sequence) -> Triangulation | None:
    """Regular triangulation from a lifting, restricted to its vertices; None if some cell is not a simplex."""
    n = len(points[0])
    cells = lower_hull_cells(points, weights)
    if any(len(c) != n or rank([points[j] for j in c]) != n for c in cells):
        return None
    used = sorted({j for c in cells for j in c})
    remap = {j: i for i, j in enumerate(used)}
    verts = tuple(tuple(points[j]) for j in used)
    simplices = tuple(sorted(tuple(sorted(remap[j] for j in c)) for c in cells))
    w = tuple(Fraction(weights[j]) for j in used)
    return Triangulation(verts, simplices, w)


def build_central_triangulation(
    pair: GorensteinPair, d: Decomposition, seed: int = 0, max_tries: int = 64
) -> Triangulation | None:
    """Placing triangulation with the distinguished points placed first.

    The distinguished points get height 0 and every other slice point a
    height growing geometrically in a seeded random order.  The result is
    accepted only when it is a triangulation, satisfies centrality, and the
    exact regularity check returns a certificate; otherwise another order is
    tried, up to ``max_tries``.
    """
    dist = list(d.points)
    rest = [p for p in pair.slice_Kdual1 if p not in set(dist)]
    rng = random.Random(seed)
    for attempt in range(max_tries):
        order = rest[:]
        rng.shuffle(order)
        base = 2 ** (2 + attempt % 4 * 4)
        pts = dist + order
        heights = [0] * len(dist) + [base ** (j + 1) for j in range(len(order))]
        T = triangulation_from_weights(pts, heights)
        if T is None or any(p not in T.points for p in dist):
            continue
        T = _sorted_triangulation(T)
        if not check_centrality(T, d):
            continue
        w = check_regularity(T.points, T.simplices)
        if w is None:
            continue
        return Triangulation(T.points, T.simplices, w, d)
    return None


def _sorted_triangulation(T: Triangulation) -> Triangulation:
    order = sorted(range(len(T.points)), key=lambda i: T.points[i])
    remap = {old: new for new, old in enumerate(order)}
    pts = tuple(T.points[i] for i in order)
    simplices = tuple(sorted(tuple(sorted(remap[j] for j in s)) for s in T.simplices))
    w = None if T.weights is None else tuple(T.weights[i] for i in order)
    return Triangulation(pts, simplices, w, T.distinguished)


def product_triangulation(T1: Triangulation, T2: Triangulation) -> Triangulation:
    """Join of two triangulations on the direct-sum slice: cells ``sigma1 + sigma2``."""
    n1, n2 = T1.dim, T2.dim
    pts = [p + (0,) * n2 for p in T1.points] + [(0,) * n1 + p for p in T2.points]
    off = len(T1.points)
    simplices = [s1 + tuple(off + j for j in s2) for s1 in T1.simplices for s2 in T2.simplices]
    w = None
    if T1.weights is not None and T2.weights is not None:
        w = tuple(T1.weights) + tuple(T2.weights)
    dist = None
    if T1.distinguished is not None and T2.distinguished is not None:
        dist = product_decomposition(T1.distinguished, T2.distinguished)
    return _sorted_triangulation(Triangulation(tuple(pts), tuple(simplices), w, dist))


def triangulation_from_json(data: dict) -> Triangulation:
    w = data.get("weights")
    return Triangulation(
        tuple(tuple(p) for p in data["vertices"]),
        tuple(tuple(s) for s in data["simplices"]),
        None if w is None else tuple(Fraction(x) for x in w),
    )
