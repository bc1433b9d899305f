"""Potential, group characters, base-point-freeness and flatness checks.

Groups are handled through character lattices only.  The character lattice
of ``G^`` is ``Z^S / L`` where S is the level-1 slice of ``K^vee`` and L is
the image of ``Ann(deg^vee)`` under ``m -> (<m,n>)_n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .cones import GorensteinPair
from .decomp import Decomposition, partition_of
from .fans import Triangulation
from .laurent import LaurentPoly, Scalar, cox_var, point_of, substitute
from .linalg import (
    Vector,
    in_lattice,
    kernel_basis,
    pairing,
    quotient_invariants,
    smith_normal_form,
    solve,
    sub,
)


class InvariantBreach(RuntimeError):
    """A property guaranteed by the construction failed; indicates bad input or a bug."""


def random_coefficients(pair: GorensteinPair, seed: int = 0) -> dict[Vector, Fraction]:
    """Seeded generic coefficients ``p/q`` with ``1 <= p, q <= 97``."""
    rng = random.Random(seed)
    return {m: Fraction(rng.randint(1, 97), rng.randint(1, 97)) for m in pair.slice_K1}


@dataclass(frozen=True)
class Potential:
    pair: GorensteinPair
    decomposition: Decomposition
    coefficients: Mapping[Vector, Scalar] = field(repr=False)
    C: LaurentPoly = field(repr=False)
    C1: LaurentPoly = field(repr=False)
    C2: LaurentPoly = field(repr=False)
    f: tuple[LaurentPoly, ...] = field(repr=False)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(cox_var(n) for n in self.pair.slice_Kdual1)

    @property
    def s_vars(self) -> tuple[str, ...]:
        return tuple(cox_var(s) for s in self.decomposition.s)

    @property
    def t_vars(self) -> tuple[str, ...]:
        return tuple(cox_var(t) for t in self.decomposition.t)


def check_potential(P: Potential) -> list[str]:
    """Names of violated potential invariants (empty when all hold)."""
    bad = []
    if P.C != P.C1 + P.C2:
        bad.append("C = C1 + C2")
    lin = LaurentPoly.const(0)
    for tv, fi in zip(P.t_vars, P.f):
        lin = lin + LaurentPoly.var(tv) * fi
    if P.C1 != lin:
        bad.append("C1 = sum z(t_i) f_i")
    dist = set(P.s_vars) | set(P.t_vars)
    if any(set(fi.used_variables()) & dist for fi in P.f):
        bad.append("f_i free of s/t variables")
    if P.C2.used_variables() and set(P.C2.used_variables()) & set(P.t_vars):
        bad.append("C2 free of t variables")
    if P.C2 and P.C2.total_degree(P.s_vars) != {2}:
        bad.append("C2 quadratic in s variables")
    cox = set(P.variables)
    if any(x < 0 for e in P.C.terms for v, x in zip(P.C.variables, e) if v in cox):
        bad.append("C polynomial in Cox variables")
    return bad


def build_potential(
    pair: GorensteinPair,
    d: Decomposition,
    coefficients: Mapping[Vector, Scalar] | None = None,
    seed: int = 0,
) -> Potential:
    """Assemble ``C = sum c(m) prod z(n)^<m,n>`` and split it along ``d``.

    Coefficients may be rationals or Laurent polynomials in parameter
    variables.  Missing coefficients are filled from ``seed``.
    """
    coeffs = dict(random_coefficients(pair, seed))
    if coefficients is not None:
        coeffs.update({tuple(m): c for m, c in coefficients.items()})
    names = tuple(cox_var(n) for n in pair.slice_Kdual1)
    t_index = {t: names.index(cox_var(t)) for t in d.t}
    C = LaurentPoly.const(0, names)
    C1 = LaurentPoly.const(0, names)
    C2 = LaurentPoly.const(0, names)
    f = [LaurentPoly.const(0, names) for _ in d.t]
    for m in pair.slice_K1:
        exps = tuple(pairing(m, n) for n in pair.slice_Kdual1)
        term = LaurentPoly(names, {exps: 1}) * coeffs[m]
        C = C + term
        try:
            kind, i = partition_of(pair, d, m)
        except ValueError as exc:
            raise InvariantBreach(str(exc)) from exc
        if kind == "s":
            C2 = C2 + term
        else:
            C1 = C1 + term
            j = t_index[d.t[i]]
            reduced = list(exps)
            reduced[j] -= 1
            f[i] = f[i] + LaurentPoly(names, {tuple(reduced): 1}) * coeffs[m]
    P = Potential(pair, d, coeffs, C, C1, C2, tuple(f))
    bad = check_potential(P)
    if bad:
        raise InvariantBreach(f"potential invariants violated: {bad}")
    return P


# -- characters -------------------------------------------------------------


def _alpha(deg_dual: Vector) -> Vector:
    """A lattice point pairing to 1 with the primitive ``deg_dual``."""
    U, S, V = smith_normal_form([list(deg_dual)])
    if S[0][0] != 1:
        raise ValueError("degree element is not primitive")
    n = len(deg_dual)
    a = tuple(U[0][0] * V[i][0] for i in range(n))
    assert pairing(a, deg_dual) == 1
    return a


@dataclass(frozen=True)
class CharacterData:
    slice_dual: tuple[Vector, ...]
    relations: tuple[Vector, ...]  # generators of L in Z^S
    ghat_torus_rank: int
    ghat_finite: tuple[int, ...]
    h_weight: Vector
    gbar_torus_rank: int
    gbar_finite: tuple[int, ...]
    alpha: Vector
    chi_weight: Vector

    def weight_of(self, exps: Mapping[str, int] | Sequence[int]) -> Vector:
        if isinstance(exps, Mapping):
            vec = [0] * len(self.slice_dual)
            index = {p: i for i, p in enumerate(self.slice_dual)}
            for v, x in exps.items():
                p = point_of(v)
                if p is not None and p in index:
                    vec[index[p]] += x
            return tuple(vec)
        return tuple(exps)

    def same_character(self, e1: Sequence[int], e2: Sequence[int]) -> bool:
        return in_lattice(sub(e1, e2), self.relations)

    def h_degree(self, e: Sequence[int]) -> int:
        return pairing(e, self.h_weight)

    def to_json(self) -> dict:
        return {
            "torus_rank": self.ghat_torus_rank,
            "finite": list(self.ghat_finite),
            "h_weight": list(self.h_weight),
            "gbar": {"torus_rank": self.gbar_torus_rank, "finite": list(self.gbar_finite)},
            "alpha": list(self.alpha),
            "chi_weight": list(self.chi_weight),
        }


def chi_weight(pair: GorensteinPair, alpha: Sequence[int]) -> Vector:
    if pairing(alpha, pair.deg_dual) != 1:
        raise ValueError("alpha must pair to 1 with deg_dual")
    return tuple(pairing(alpha, n) for n in pair.slice_Kdual1)


def character_data(pair: GorensteinPair, d: Decomposition) -> CharacterData:
    S = pair.slice_Kdual1
    ann = kernel_basis([list(pair.deg_dual)])
    L = tuple(tuple(pairing(m, n) for n in S) for m in ann)
    L = tuple(row for row in L if any(row))
    torus, finite = quotient_invariants(L, len(S))
    special = {p: 1 for p in d.s}
    special.update({p: 2 for p in d.t})
    h = tuple(special.get(n, 0) for n in S)
    for row in L:
        if pairing(row, h) != 0:
            raise InvariantBreach("h_weight is not a cocharacter of G^")
    # characters of G^/H: classes of h-orthogonal vectors modulo L
    B = kernel_basis([list(h)])
    coords = []
    for row in L:
        x = solve([list(col) for col in zip(*B)], row)
        if x is None or any(v.denominator != 1 for v in x):
            raise InvariantBreach("relation lattice not inside h-orthogonal lattice")
        coords.append([int(v) for v in x])
    gt, gf = quotient_invariants(coords, len(B))
    alpha = _alpha(pair.deg_dual)
    return CharacterData(
        slice_dual=S,
        relations=L,
        ghat_torus_rank=torus,
        ghat_finite=tuple(finite),
        h_weight=h,
        gbar_torus_rank=gt,
        gbar_finite=tuple(gf),
        alpha=alpha,
        chi_weight=chi_weight(pair, alpha),
    )


def _monomials(p: LaurentPoly) -> list[dict[str, int]]:
    return [{v: x for v, x in zip(p.variables, e) if x} for e in sorted(p.terms)]


@dataclass
class SemiinvarianceReport:
    items: list[dict] = field(default_factory=list)
    f_ghat_weight_trivial: list[bool] = field(default_factory=list)

    def add(self, item: str, monomial, passed: bool):
        self.items.append({"item": item, "monomial": monomial, "passed": bool(passed)})

    @property
    def ok(self) -> bool:
        return all(it["passed"] for it in self.items)

    def failures(self) -> list[dict]:
        return [it for it in self.items if not it["passed"]]

    def to_json(self) -> dict:
        counts: dict[str, list[int]] = {}
        for it in self.items:
            c = counts.setdefault(it["item"], [0, 0])
            c[0] += it["passed"]
            c[1] += 1
        return {
            "ok": self.ok,
            "checks": {k: {"passed": a, "total": b} for k, (a, b) in sorted(counts.items())},
            "failures": [{"item": f["item"], "monomial": f["monomial"]} for f in self.failures()],
            "f_ghat_weight_trivial": self.f_ghat_weight_trivial,
        }


def verify_semiinvariance(P: Potential, cd: CharacterData) -> SemiinvarianceReport:
    """Check the character of every monomial of ``C2``, ``z(t_i) f_i`` and ``f_i``.

    ``C2`` and ``z(t_i) f_i`` must have ``G^``-character chi and H-degree 2.
    Each ``f_i`` must have H-degree 0 and be ``G^``-homogeneous.  Whether the
    common character of ``f_i`` is trivial is recorded separately; it is
    ``chi - [z(t_i)]``, which vanishes only for special pairs.
    """
    rep = SemiinvarianceReport()
    chi = cd.chi_weight
    for mono in _monomials(P.C2):
        e = cd.weight_of(mono)
        rep.add("C2 chi-weight", mono, cd.same_character(e, chi))
        rep.add("C2 H-degree 2", mono, cd.h_degree(e) == 2)
    for tv, fi in zip(P.t_vars, P.f):
        zt = LaurentPoly.var(tv)
        for mono in _monomials(zt * fi):
            e = cd.weight_of(mono)
            rep.add("z(t_i) f_i chi-weight", mono, cd.same_character(e, chi))
            rep.add("z(t_i) f_i H-degree 2", mono, cd.h_degree(e) == 2)
        weights = [cd.weight_of(mono) for mono in _monomials(fi)]
        for mono, e in zip(_monomials(fi), weights):
            rep.add("f_i H-degree 0", mono, cd.h_degree(e) == 0)
            rep.add("f_i G^-homogeneous", mono, cd.same_character(e, weights[0]))
        rep.f_ghat_weight_trivial.append(
            bool(weights) and cd.same_character(weights[0], (0,) * len(chi))
        )
    return rep


# -- base point freeness and flatness --------------------------------------


def _cones_of(T: Triangulation, d: Decomposition) -> list[tuple[Vector, ...]]:
    dist = set(d.points)
    out = []
    for i in range(len(T.simplices)):
        cone = tuple(sorted(p for p in T.simplex_points(i) if p not in dist))
        if cone not in out:
            out.append(cone)
    return out


def find_bpf_witnesses(pair: GorensteinPair, d: Decomposition, T: Triangulation):
    """Witness search without the centrality precondition.

    Returns ``(witnesses, missing)``: witnesses maps ``(i, cone)`` to a point m
    of the level-1 slice of K with ``<m, t_i> = 1`` and ``<m, n> = 0`` on the
    cone's rays; ``missing`` lists the pairs with no such m.
    """
    witnesses: dict[tuple[int, tuple[Vector, ...]], Vector] = {}
    missing = []
    for cone in _cones_of(T, d):
        for i, t in enumerate(d.t):
            m = next(
                (m for m in pair.slice_K1 if pairing(m, t) == 1 and all(pairing(m, n) == 0 for n in cone)),
                None,
            )
            if m is None:
                missing.append((i, cone))
            else:
                witnesses[(i, cone)] = m
    return witnesses, missing


def bpf_witnesses(pair: GorensteinPair, d: Decomposition, T: Triangulation) -> dict:
    """Base-point-freeness witnesses for every section and quotient maximal cone.

    Totality is a theorem for central triangulations, so a missing witness
    raises :class:`InvariantBreach`.
    """
    from .fans import check_centrality

    if not check_centrality(T, d):
        raise ValueError("centrality fails")
    witnesses, missing = find_bpf_witnesses(pair, d, T)
    if missing:
        raise InvariantBreach(f"no base-point-freeness witness for {missing}")
    return witnesses


@dataclass(frozen=True)
class FlatnessReport:
    verdict: str  # "PASS" or "UNKNOWN"
    witnesses: tuple[tuple[tuple[Vector, ...], Vector], ...]
    missing: tuple[tuple[Vector, ...], ...]
    samples: int
    samples_nonzero: int

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witnesses": [{"cone": [list(n) for n in c], "m": list(m)} for c, m in self.witnesses],
            "missing": [[list(n) for n in c] for c in self.missing],
            "samples": self.samples,
            "samples_nonzero": self.samples_nonzero,
        }


def flatness_check(
    pair: GorensteinPair,
    d: Decomposition,
    T: Triangulation,
    coefficients: Mapping[Vector, Scalar] | None = None,
    samples: int = 8,
    seed: int = 0,
) -> FlatnessReport:
    """One-sided flatness test for the quadric fibration ``C2 = 0``.

    PASS when every quotient maximal cone has a point m of the level-1 slice
    of K, orthogonal to all t's and to the cone's rays, with ``c(m) != 0``:
    the monomial of m then survives over the whole closed stratum, so every
    fiber is a hypersurface.  UNKNOWN otherwise.  Independently, C2 is
    specialized at ``samples`` seeded base points and must stay a nonzero
    quadric.
    """
    if d.r == 0:
        raise ValueError("flatness needs r >= 1")
    P = build_potential(pair, d, coefficients, seed=seed)
    coeffs = P.coefficients
    found, missing = [], []
    for cone in _cones_of(T, d):
        m = next(
            (
                m
                for m in pair.slice_K1
                if coeffs[m] != 0
                and all(pairing(m, t) == 0 for t in d.t)
                and all(pairing(m, n) == 0 for n in cone)
            ),
            None,
        )
        if m is None:
            missing.append(cone)
        else:
            found.append((cone, m))
    rng = random.Random(seed)
    base = [v for v in P.variables if v not in set(P.s_vars)]
    good = 0
    for _ in range(samples):
        point = {v: Fraction(rng.choice([-1, 1]) * rng.randint(1, 97), rng.randint(1, 97)) for v in base}
        q = substitute(P.C2, point)
        if q and q.total_degree(P.s_vars) == {2}:
            good += 1
    verdict = "PASS" if not missing and good == samples else "UNKNOWN"
    return FlatnessReport(verdict, tuple(found), tuple(missing), samples, good)
