"""Rational polyhedral cones and reflexive Gorenstein pairs.

Both lattices M and N are identified with Z^n, the pairing being the dot
product.  A :class:`Cone` is always full-dimensional and strongly convex;
degenerate input is rejected when the cone is built.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import (
    Vector,
    independent_rows,
    pairing,
    primitive,
    rank,
    solve,
)


def extreme_rays(constraints: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Extreme rays of ``{y : <a, y> >= 0 for all a in constraints}``.

    Double description method (Motzkin) with integer rays and the
    combinatorial adjacency test.  The constraint system must have rank
    ``dim`` so that the solution cone is pointed.
    """
    A = [tuple(a) for a in constraints]
    basis = independent_rows(A)
    if len(basis) != dim:
        raise ValueError("constraint system is not of full rank")
    # Initial simplicial cone: columns of the inverse of A_B.
    rays: list[tuple[Vector, frozenset[int]]] = []
    AB = [A[i] for i in basis]
    for j, bj in enumerate(basis):
        x = solve(AB, [int(k == j) for k in range(dim)])
        lcm = math.lcm(*(v.denominator for v in x))
        r = primitive([int(v * lcm) for v in x])
        rays.append((r, frozenset(b for b in basis if b != bj)))
    processed = set(basis)
    for i, a in enumerate(A):
        if i in processed:
            continue
        vals = [pairing(a, r) for r, _ in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        new = [rays[k] for k in pos] + [(rays[k][0], rays[k][1] | {i}) for k in zero]
        for p in pos:
            for q in neg:
                common = rays[p][1] & rays[q][1]
                if len(common) < dim - 2:
                    continue
                if any(k not in (p, q) and common <= rays[k][1] for k in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                r = tuple(vp * y - vq * x for x, y in zip(rays[p][0], rays[q][0]))
                new.append((primitive(r), common | {i}))
        rays = new
        processed.add(i)
    return sorted({r for r, _ in rays})


@dataclass(frozen=True)
class Cone:
    """Full-dimensional strongly convex rational polyhedral cone.

    ``rays`` are the primitive extreme ray generators, ``facets`` the
    primitive inner facet normals (the rays of the dual cone); both sorted.
    """

    rays: tuple[Vector, ...]
    facets: tuple[Vector, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def contains(self, v: Sequence[int]) -> bool:
        return all(pairing(f, v) >= 0 for f in self.facets)

    def to_json(self) -> dict:
        return {"rank": self.dim, "rays": [list(r) for r in self.rays]}


def make_cone(generators: Iterable[Sequence[int]]) -> Cone:
    """Cone generated by ``generators``; redundant generators are dropped."""
    gens = sorted({primitive(g) for g in generators if any(g)})
    if not gens:
        raise ValueError("cone needs at least one nonzero generator")
    dim = len(gens[0])
    if rank(gens) != dim:
        raise ValueError("cone is not full-dimensional")
    facets = extreme_rays(gens, dim)
    if rank(facets) != dim:
        raise ValueError("cone is not strongly convex")
    rays = tuple(
        g for g in gens if rank([f for f in facets if pairing(f, g) == 0]) == dim - 1
    )
    return Cone(rays, tuple(facets))


def cone_from_json(data: dict) -> Cone:
    rays = data["rays"]
    if any(len(r) != data.get("rank", len(rays[0])) for r in rays):
        raise ValueError("ray length does not match rank")
    return make_cone(rays)


def dual_cone(C: Cone) -> Cone:
    """``C^vee = {y : <x, y> >= 0 for x in C}``; its facet normals are C's rays."""
    return Cone(C.facets, C.rays)


def cone_over_polytope(vertices: Sequence[Sequence[int]]) -> Cone:
    """Cone over a lattice polytope placed at height 1, ``{(a; a P) : a >= 0}``."""
    pts = [tuple(v) for v in vertices]
    if not pts:
        raise ValueError("empty polytope")
    lifted = [(1,) + p for p in pts]
    if rank(lifted) != len(lifted[0]):
        raise ValueError("degenerate polytope: not full-dimensional")
    return make_cone(lifted)


def gorenstein_degree(C: Cone) -> Vector | None:
    """The integral ``d`` with ``<g, d> = 1`` on every ray generator, if any."""
    rows = [C.rays[i] for i in independent_rows(C.rays)]
    x = solve(rows, [1] * len(rows))
    if x is None or any(v.denominator != 1 for v in x):
        return None
    d = tuple(int(v) for v in x)
    if any(pairing(g, d) != 1 for g in C.rays):
        return None
    return d


@dataclass(frozen=True)
class GorensteinPair:
    """A reflexive Gorenstein cone ``K`` in M with its dual ``K^vee`` in N.

    ``deg`` lies in K and has pairing 1 with the rays of ``K^vee``;
    ``deg_dual`` lies in ``K^vee`` and has pairing 1 with the rays of K.
    ``slice_K1`` and ``slice_Kdual1`` are the lattice points at level 1.
    """

    K: Cone
    K_dual: Cone
    deg: Vector
    deg_dual: Vector
    index: int
    slice_K1: tuple[Vector, ...]
    slice_Kdual1: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.deg)

    def summary(self) -> dict:
        return {
            "rank": self.rank,
            "index": self.index,
            "deg": list(self.deg),
            "deg_dual": list(self.deg_dual),
            "rays_K": [list(r) for r in self.K.rays],
            "rays_K_dual": [list(r) for r in self.K_dual.rays],
            "slice_K1_size": len(self.slice_K1),
            "slice_Kdual1_size": len(self.slice_Kdual1),
        }


def _slice(cone: Cone, degree: Vector, h: int) -> list[Vector]:
    """Lattice points m of ``cone`` with ``<m, degree> = h``, sorted."""
    n = cone.dim
    # The slice is the polytope with vertices h*g/<g,degree>; its box bounds
    # are exact.
    verts = [[Fraction(h * x, pairing(g, degree)) for x in g] for g in cone.rays]
    lo = [math.floor(min(v[i] for v in verts)) for i in range(n)]
    hi = [math.ceil(max(v[i] for v in verts)) for i in range(n)]
    # Solve the level equation for one coordinate instead of boxing it.
    j = min((i for i in range(n) if degree[i]), key=lambda i: abs(degree[i]))
    others = [i for i in range(n) if i != j]
    out = []
    for vals in itertools.product(*(range(lo[i], hi[i] + 1) for i in others)):
        rest = h - sum(degree[i] * v for i, v in zip(others, vals))
        if rest % degree[j]:
            continue
        xj = rest // degree[j]
        if not lo[j] <= xj <= hi[j]:
            continue
        m = [0] * n
        for i, v in zip(others, vals):
            m[i] = v
        m[j] = xj
        m = tuple(m)
        if cone.contains(m):
            out.append(m)
    return sorted(out)


def check_reflexive_pair(C: Cone) -> GorensteinPair | None:
    """Certify that ``C`` is a reflexive Gorenstein cone; None otherwise."""
    deg_dual = gorenstein_degree(C)
    if deg_dual is None:
        return None
    Cd = dual_cone(C)
    deg = gorenstein_degree(Cd)
    if deg is None:
        return None
    k = pairing(deg, deg_dual)
    return GorensteinPair(
        K=C,
        K_dual=Cd,
        deg=deg,
        deg_dual=deg_dual,
        index=k,
        slice_K1=tuple(_slice(C, deg_dual, 1)),
        slice_Kdual1=tuple(_slice(Cd, deg, 1)),
    )


def slice_points(pair: GorensteinPair, side: str, h: int) -> list[Vector]:
    """Lattice points of K (``side="K"``) or ``K^vee`` (``side="dual"``) at level h.

    The level is measured against the opposite degree element.
    """
    if h < 1:
        raise ValueError("level must be positive")
    if side == "K":
        return _slice(pair.K, pair.deg_dual, h)
    if side == "dual":
        return _slice(pair.K_dual, pair.deg, h)
    raise ValueError(f"unknown side {side!r}")


def embed(v: Sequence[int], offset: int, total: int) -> Vector:
    out = [0] * total
    out[offset : offset + len(v)] = v
    return tuple(out)


def direct_sum(p1: GorensteinPair, p2: GorensteinPair) -> GorensteinPair:
    """The pair ``K1 + K2`` in ``M1 + M2``; index adds."""
    n1, n2 = p1.rank, p2.rank
    n = n1 + n2
    rays = [embed(r, 0, n) for r in p1.K.rays] + [embed(r, n1, n) for r in p2.K.rays]
    facets = [embed(f, 0, n) for f in p1.K.facets] + [embed(f, n1, n) for f in p2.K.facets]
    K = Cone(tuple(sorted(rays)), tuple(sorted(facets)))
    Kd = dual_cone(K)
    deg = p1.deg + p2.deg
    deg_dual = p1.deg_dual + p2.deg_dual
    # A level-1 point of a sum has level 1 in one factor and 0 (hence is 0) in
    # the other.
    sK = [embed(m, 0, n) for m in p1.slice_K1] + [embed(m, n1, n) for m in p2.slice_K1]
    sD = [embed(m, 0, n) for m in p1.slice_Kdual1] + [embed(m, n1, n) for m in p2.slice_Kdual1]
    return GorensteinPair(
        K=K,
        K_dual=Kd,
        deg=deg,
        deg_dual=deg_dual,
        index=p1.index + p2.index,
        slice_K1=tuple(sorted(sK)),
        slice_Kdual1=tuple(sorted(sD)),
    )


def orthant(n: int) -> Cone:
    return make_cone([tuple(int(i == j) for j in range(n)) for i in range(n)])


def transform_cone(C: Cone, U: Sequence[Sequence[int]]) -> Cone:
    """Image of ``C`` under the unimodular map ``x -> U x``."""
    return make_cone([tuple(pairing(row, r) for row in U) for r in C.rays])
