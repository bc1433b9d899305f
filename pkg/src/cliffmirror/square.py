"""The cone over the square and its two-fold direct sum.

The square has vertices ``(+-1, +-1)``; the cone over it has index 1 and
nine degree-1 points ``m = (1, a, b)``.  Their coefficients are labelled
``a_ij`` with ``i = 2 - b`` and ``j = a + 2``, so row i tracks the base
coordinate power ``t^(2-i)`` in the quadric chart and column j the fiber
variable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .cones import GorensteinPair, check_reflexive_pair, cone_over_polytope, direct_sum
from .decomp import Decomposition, enumerate_decompositions
from .laurent import LaurentPoly, cox_var, discriminant_quadratic, monomial_ratio, rename, substitute
from .mirror import build_potential
from .quadric import QuadricFibration, coranks_on_divisor, corank_at, degeneration_divisor, gram_matrix

SQUARE = ((1, 1), (1, -1), (-1, -1), (-1, 1))

T_POINT = (1, 0, 0)
S_PAIR = ((1, -1, 0), (1, 1, 0))
S_PAIR_OTHER = ((1, 0, -1), (1, 0, 1))


def square_pair() -> GorensteinPair:
    pair = check_reflexive_pair(cone_over_polytope(SQUARE))
    assert pair is not None
    return pair


def exe_pair() -> GorensteinPair:
    p = square_pair()
    return direct_sum(p, p)


def label(m) -> tuple[int, int]:
    _, a, b = m
    return 2 - b, a + 2


def point_of_label(i: int, j: int) -> tuple[int, int, int]:
    return (1, j - 2, 2 - i)


def seeded_labels(seed: int) -> dict[tuple[int, int], Fraction]:
    """Generic ``a_ij`` as ``p/q`` with ``1 <= p, q <= 97``."""
    rng = random.Random(seed)
    return {(i, j): Fraction(rng.randint(1, 97), rng.randint(1, 97)) for i in (1, 2, 3) for j in (1, 2, 3)}


def coefficients(labels: Mapping[tuple[int, int], object]) -> dict:
    return {point_of_label(i, j): c for (i, j), c in labels.items()}


def symbolic_labels() -> dict[tuple[int, int], LaurentPoly]:
    return {(i, j): LaurentPoly.var(f"a{i}{j}") for i in (1, 2, 3) for j in (1, 2, 3)}


def reference_decompositions() -> list[Decomposition]:
    return [
        Decomposition(0, (), (T_POINT,)),
        Decomposition(1, S_PAIR, ()),
    ]


def exe_reference_decompositions() -> list[Decomposition]:
    """The three product decompositions: t+t, t + s-pair, s-pair + s-pair."""
    z = (0, 0, 0)
    left = lambda p: p + z  # noqa: E731
    right = lambda p: z + p  # noqa: E731
    return [
        Decomposition(0, (), (left(T_POINT), right(T_POINT))),
        Decomposition(1, tuple(right(s) for s in S_PAIR), (left(T_POINT),)),
        Decomposition(2, tuple(left(s) for s in S_PAIR) + tuple(right(s) for s in S_PAIR), ()),
    ]


# -- the elliptic curve and the quadric family ------------------------------


def elliptic_section(labels: Mapping, x: str = "x", y: str = "y") -> LaurentPoly:
    """The section f of the r = 0 decomposition in the chart ``x = z(1,1,0)``, ``y = z(1,0,1)``.

    The other two rays of the fan are set to 1.  This is the nine-term curve
    equation multiplied by ``x*y``, so it is quadratic in each variable.
    """
    pair = square_pair()
    P = build_potential(pair, reference_decompositions()[0], coefficients(labels))
    f = P.f[0]
    f = substitute(f, {cox_var((1, -1, 0)): 1, cox_var((1, 0, -1)): 1})
    return rename(f, {cox_var((1, 1, 0)): x, cox_var((1, 0, 1)): y})


def quadric_family(labels: Mapping, s_pair=S_PAIR, t: str = "t") -> QuadricFibration:
    """Gram matrix of the r = 1 quadric over the chart with base coordinate t.

    For the s-pair ``(1,-1,0), (1,1,0)`` the base coordinate is ``z(1,0,1)``;
    for ``(1,0,-1), (1,0,1)`` it is ``z(1,1,0)``.  The other base Cox
    coordinates are set to 1.
    """
    pair = square_pair()
    d = Decomposition(1, s_pair, ())
    P = build_potential(pair, d, coefficients(labels))
    base = [n for n in pair.slice_Kdual1 if n not in s_pair]
    keep = (1, 0, 1) if s_pair == S_PAIR else (1, 1, 0)
    chart = {cox_var(n): 1 for n in base if n != keep}
    QF = gram_matrix(P, chart=chart)
    gram = tuple(tuple(rename(e, {cox_var(keep): t}) for e in row) for row in QF.gram)
    return QuadricFibration(QF.s_vars, gram, (t,), QF.chart + ((cox_var(keep), t),))


@dataclass(frozen=True)
class IdentityVerdict:
    verdict: str
    pairing: str
    D1: LaurentPoly
    D2: LaurentPoly
    mu: Fraction | None
    exponent: int | None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "pairing": self.pairing,
            "D1": str(self.D1),
            "D2": str(self.D2),
            "mu": None if self.mu is None else str(self.mu),
            "e": self.exponent,
        }


def ramification_identity(
    labels: Mapping, pairing: str = "fiber", mutate: Mapping | None = None
) -> IdentityVerdict:
    """Compare the branch locus of the curve with the degeneration locus of the quadric.

    ``D1`` is the discriminant of the curve section in one chart variable,
    read as a polynomial in the other; ``D2 = -4 det(Gram)`` in base
    coordinate t.  The identity holds when ``D1 = mu * t^e * D2`` after
    identifying the remaining chart variable with t.

    ``pairing`` picks which projections are compared:

    * ``"fiber"``: discriminant in x against the quadric of the s-pair
      ``(1,-1,0), (1,1,0)`` (both fibers run along the first coordinate);
    * ``"other"``: discriminant in y against the s-pair ``(1,0,-1), (1,0,1)``;
    * ``"crossed"``: discriminant in y against the s-pair ``(1,-1,0), (1,1,0)``,
      which is a different double cover and generically fails.

    ``mutate`` overrides some labels in the curve only (negative control).
    """
    curve_labels = dict(labels)
    if mutate:
        curve_labels.update(mutate)
    f = elliptic_section(curve_labels)
    if pairing == "fiber":
        D1, s_pair, other = discriminant_quadratic(f, "x"), S_PAIR, "y"
    elif pairing == "other":
        D1, s_pair, other = discriminant_quadratic(f, "y"), S_PAIR_OTHER, "x"
    elif pairing == "crossed":
        D1, s_pair, other = discriminant_quadratic(f, "y"), S_PAIR, "x"
    else:
        raise ValueError(f"unknown pairing {pairing!r}")
    D1 = rename(D1, {other: "t"})
    QF = quadric_family(labels, s_pair)
    D2 = degeneration_divisor(QF) * -4
    found = monomial_ratio(D1, D2)
    if found is None:
        return IdentityVerdict("FAIL", pairing, D1, D2, None, None)
    mu, exps = found
    if set(exps) - {"t"}:
        return IdentityVerdict("FAIL", pairing, D1, D2, None, None)
    return IdentityVerdict("PASS", pairing, D1, D2, mu, exps.get("t", 0))


def divisor_coranks(labels: Mapping) -> list[tuple[str, int, int]]:
    """Exact coranks of the quadric family at every root of its degeneration divisor."""
    return coranks_on_divisor(quadric_family(labels), "t")


def rational_degenerate_instance(seed: int, t0: Fraction = Fraction(2)) -> tuple[dict, Fraction]:
    """Labels for which ``t0`` is a root of the degeneration divisor.

    ``a_21`` (the t-constant part of the first diagonal entry) is solved for,
    which is possible whenever the second diagonal entry is nonzero at t0.
    """
    labels = seeded_labels(seed)
    QF = quadric_family({**labels, (2, 1): Fraction(0)})
    Q = [[substitute(e, {"t": t0}).constant_value() for e in row] for row in QF.gram]
    if Q[1][1] == 0:
        raise ValueError("second diagonal entry vanishes at t0")
    labels[(2, 1)] = (Q[0][1] ** 2 - Q[0][0] * Q[1][1]) / (Q[1][1] * t0)
    # the t-constant entry appears as a21 * t in the chart, hence the t0 factor
    return labels, t0


def rational_corank(seed: int, t0: Fraction = Fraction(2)) -> int:
    labels, t0 = rational_degenerate_instance(seed, t0)
    return corank_at(quadric_family(labels), {"t": t0})


# -- the direct sum ----------------------------------------------------------


@dataclass(frozen=True)
class ExeReport:
    index: int
    decompositions: tuple[Decomposition, ...]
    reference_found: tuple[bool, ...]
    identity: IdentityVerdict
    identity_other: IdentityVerdict

    @property
    def ok(self) -> bool:
        return (
            self.index == 2
            and all(self.reference_found)
            and self.identity.verdict == "PASS"
            and self.identity_other.verdict == "PASS"
        )

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "decompositions": [d.to_json() for d in self.decompositions],
            "reference_decompositions_found": list(self.reference_found),
            "identity": self.identity.to_json(),
            "identity_other_projection": self.identity_other.to_json(),
            "verdict": "PASS" if self.ok else "FAIL",
        }


def reproduce_exe(seed: int = 0, mutate: Mapping | None = None) -> ExeReport:
    pair = exe_pair()
    found = enumerate_decompositions(pair)
    present = tuple(d in found for d in exe_reference_decompositions())
    labels = seeded_labels(seed)
    return ExeReport(
        pair.index,
        tuple(found),
        present,
        ramification_identity(labels, "fiber", mutate),
        ramification_identity(labels, "other", mutate),
    )
