"""Decompositions ``deg^vee = 1/2 (s_1 + ... + s_2r) + t_1 + ... + t_(k-r)``.

Every s and t point must lie at level 1: each nonzero lattice point of
``K^vee`` pairs to at least 1 with ``deg``, and the levels of the 2r
half-weighted and k-r unit-weighted points already add up to k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cones import GorensteinPair
from .linalg import Vector, pairing, rank, vsum


@dataclass(frozen=True)
class Decomposition:
    r: int
    s: tuple[Vector, ...]
    t: tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(sorted(tuple(p) for p in self.s)))
        object.__setattr__(self, "t", tuple(sorted(tuple(p) for p in self.t)))

    @property
    def points(self) -> tuple[Vector, ...]:
        """Distinguished points, s-block first."""
        return self.s + self.t

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def to_json(self) -> dict:
        return {"r": self.r, "s": [list(p) for p in self.s], "t": [list(p) for p in self.t]}

    @classmethod
    def from_json(cls, data: dict) -> "Decomposition":
        return cls(int(data["r"]), tuple(map(tuple, data["s"])), tuple(map(tuple, data["t"])))

    def __str__(self) -> str:
        parts = [str(p) for p in self.t]
        if self.s:
            parts.append("1/2(" + " + ".join(str(p) for p in self.s) + ")")
        return " + ".join(parts)


@dataclass(frozen=True)
class ValidationReport:
    counts: bool
    sum_identity: bool
    distinct: bool
    in_slice: bool
    independent: bool
    off_level: tuple[Vector, ...] = ()

    @property
    def ok(self) -> bool:
        return self.counts and self.sum_identity and self.distinct and self.in_slice and self.independent

    def to_json(self) -> dict:
        return {
            "counts": self.counts,
            "sum_identity": self.sum_identity,
            "distinct": self.distinct,
            "in_slice": self.in_slice,
            "independent": self.independent,
            "off_level": [list(p) for p in self.off_level],
            "ok": self.ok,
        }


def validate(pair: GorensteinPair, d: Decomposition) -> ValidationReport:
    k = pair.index
    pts = list(d.s) + list(d.t)
    counts = 0 <= d.r <= k and len(d.s) == 2 * d.r and len(d.t) == k - d.r
    n = pair.rank
    total = vsum(d.s, n)
    total = tuple(a + 2 * b for a, b in zip(total, vsum(d.t, n)))
    sum_identity = total == tuple(2 * x for x in pair.deg_dual)
    distinct = len(set(pts)) == len(pts)
    slice_set = set(pair.slice_Kdual1)
    in_slice = all(p in slice_set for p in pts)
    off_level = tuple(p for p in pts if pairing(pair.deg, p) != 1)
    independent = bool(pts) and rank(pts) == len(pts)
    return ValidationReport(counts, sum_identity, distinct, in_slice, independent, off_level)


def enumerate_decompositions(
    pair: GorensteinPair, r_min: int = 0, r_max: int | None = None
) -> list[Decomposition]:
    """All decompositions with ``r_min <= r <= r_max``, each exactly once.

    Depth-first over the level-1 slice of ``K^vee``; a branch is cut as soon
    as its residual leaves ``K^vee`` or the chosen points become dependent.
    """
    k = pair.index
    if r_max is None:
        r_max = k
    if not 0 <= r_min <= r_max <= k:
        raise ValueError(f"need 0 <= r_min <= r_max <= {k}")
    pts = list(pair.slice_Kdual1)
    rays = pair.K.rays
    two_deg = tuple(2 * x for x in pair.deg_dual)
    out: list[Decomposition] = []

    def feasible(res: Vector) -> bool:
        return all(pairing(g, res) >= 0 for g in rays)

    def pick(start, need, weight, residual, chosen, used, done):
        if need == 0:
            done(residual, chosen)
            return
        for i in range(start, len(pts)):
            if i in used:
                continue
            if len(pts) - i < need:
                break
            p = pts[i]
            res = tuple(a - weight * b for a, b in zip(residual, p))
            if not feasible(res):
                continue
            nxt = chosen + [p]
            if rank(nxt) < len(nxt):
                continue
            pick(i + 1, need - 1, weight, res, nxt, used | {i}, done)

    for r in range(r_min, r_max + 1):
        found: list[Decomposition] = []

        def after_t(residual, t_chosen, r=r, found=found):
            used = {pts.index(p) for p in t_chosen}

            def after_s(res2, chosen):
                if not any(res2):
                    found.append(Decomposition(r, tuple(chosen[len(t_chosen):]), tuple(t_chosen)))

            pick(0, 2 * r, 1, residual, list(t_chosen), used, after_s)

        pick(0, k - r, 2, two_deg, [], frozenset(), after_t)
        found.sort(key=lambda d: (d.s, d.t))
        out.extend(found)
    return out


def product_decomposition(d1: Decomposition, d2: Decomposition) -> Decomposition:
    """Decomposition of ``deg1^vee + deg2^vee`` on the direct-sum pair."""
    pts1, pts2 = d1.points, d2.points
    if not pts1 or not pts2:
        raise ValueError("empty decomposition")
    n1, n2 = len(pts1[0]), len(pts2[0])
    if any(len(p) != n1 for p in pts1) or any(len(p) != n2 for p in pts2):
        raise ValueError("factor mismatch: inconsistent point ranks")
    z1, z2 = (0,) * n1, (0,) * n2
    return Decomposition(
        d1.r + d2.r,
        tuple(p + z2 for p in d1.s) + tuple(z1 + p for p in d2.s),
        tuple(p + z2 for p in d1.t) + tuple(z1 + p for p in d2.t),
    )


def partition_of(pair: GorensteinPair, d: Decomposition, m: Sequence[int]) -> tuple[str, int | None]:
    """Classify ``m`` in the level-1 slice of K against the decomposition.

    Returns ``("t", i)`` when m pairs to 1 with exactly ``t_i`` and to 0 with
    every other distinguished point, ``("s", None)`` when m kills every t and
    pairs to 2 with the s-block in total; raises ValueError otherwise.
    """
    tp = [pairing(m, t) for t in d.t]
    sp = [pairing(m, s) for s in d.s]
    if all(v == 0 for v in tp) and sum(sp) == 2:
        return "s", None
    ones = [i for i, v in enumerate(tp) if v == 1]
    if len(ones) == 1 and sum(tp) == 1 and not any(sp):
        return "t", ones[0]
    raise ValueError(f"partition violated at {tuple(m)}: t-pairings {tp}, s-pairings {sp}")
