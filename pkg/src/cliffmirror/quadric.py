"""Quadric fibrations and their even Clifford algebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .fans import Triangulation
from .laurent import LaurentPoly, Scalar, cox_var, det, substitute
from .linalg import rank as rational_rank
from .mirror import Potential


@dataclass(frozen=True)
class QuadricFibration:
    s_vars: tuple[str, ...]
    gram: tuple[tuple[LaurentPoly, ...], ...]
    base_vars: tuple[str, ...]
    chart: tuple[tuple[str, str], ...] = ()

    @property
    def fiber_rank(self) -> int:
        return len(self.s_vars)

    def quadratic_form(self) -> LaurentPoly:
        """``z^T Q z`` in the s-variables over the base ring."""
        z = [LaurentPoly.var(v) for v in self.s_vars]
        out = LaurentPoly.const(0)
        for i, zi in enumerate(z):
            for j, zj in enumerate(z):
                out = out + self.gram[i][j] * zi * zj
        return out

    def to_json(self) -> dict:
        return {
            "s_vars": list(self.s_vars),
            "base_vars": list(self.base_vars),
            "chart": dict(self.chart),
            "gram": [[str(x) for x in row] for row in self.gram],
        }


def gram_from_quadric(C2: LaurentPoly, s_vars: Sequence[str]) -> tuple[tuple[LaurentPoly, ...], ...]:
    """Symmetric Gram matrix of a form that is homogeneous quadratic in ``s_vars``.

    Off-diagonal entries are half the cross coefficients.
    """
    s_vars = tuple(s_vars)
    n = len(s_vars)
    Q = [[LaurentPoly.const(0) for _ in range(n)] for _ in range(n)]
    idx = [C2.variables.index(v) if v in C2.variables else None for v in s_vars]
    rest_vars = tuple(v for v in C2.variables if v not in s_vars)
    rest_idx = [C2.variables.index(v) for v in rest_vars]
    for e, c in C2.terms.items():
        degs = [e[i] if i is not None else 0 for i in idx]
        if sum(degs) != 2 or any(x < 0 for x in degs):
            raise ValueError("form is not quadratic in the fiber variables")
        coeff = LaurentPoly(rest_vars, {tuple(e[i] for i in rest_idx): c})
        hit = [i for i, x in enumerate(degs) for _ in range(x)]
        a, b = hit
        if a == b:
            Q[a][a] = Q[a][a] + coeff
        else:
            half = coeff / 2
            Q[a][b] = Q[a][b] + half
            Q[b][a] = Q[b][a] + half
    return tuple(tuple(row) for row in Q)


def chart_assignment(P: Potential, T: Triangulation, simplex: int) -> dict[str, int]:
    """Affine chart of a maximal cone: Cox coordinates off the simplex are set to 1."""
    inside = set(T.simplex_points(simplex))
    dist = set(P.decomposition.points)
    return {cox_var(n): 1 for n in P.pair.slice_Kdual1 if n not in inside and n not in dist}


def gram_matrix(
    P: Potential,
    chart: int | Mapping[str, Scalar] | None = None,
    triangulation: Triangulation | None = None,
) -> QuadricFibration:
    """Gram matrix of ``C2`` over the base coordinate ring.

    ``chart`` is None (all base Cox variables kept), the index of a maximal
    simplex of ``triangulation`` (its complementary coordinates set to 1),
    or an explicit substitution.
    """
    if P.decomposition.r == 0:
        raise ValueError("no quadric part for r = 0")
    if isinstance(chart, int):
        if triangulation is None:
            raise ValueError("a simplex chart needs the triangulation")
        assignment: Mapping[str, Scalar] = chart_assignment(P, triangulation, chart)
    else:
        assignment = dict(chart or {})
    C2 = substitute(P.C2, assignment) if assignment else P.C2
    Q = gram_from_quadric(C2, P.s_vars)
    base = tuple(
        v for v in P.variables if v not in set(P.s_vars) | set(P.t_vars) and v not in assignment
    )
    chart_items = tuple(sorted((k, str(v)) for k, v in assignment.items()))
    return QuadricFibration(P.s_vars, Q, base, chart_items)


def degeneration_divisor(QF: QuadricFibration) -> LaurentPoly:
    return det(QF.gram)


def specialize_gram(QF: QuadricFibration, point: Mapping[str, Scalar]) -> list[list[Fraction]]:
    out = []
    for row in QF.gram:
        vals = []
        for x in row:
            y = substitute(x, point)
            vals.append(y.constant_value())
        out.append(vals)
    return out


def corank_at(QF: QuadricFibration, point: Mapping[str, Scalar]) -> int:
    """``2r - rank`` of the Gram matrix at a rational base point."""
    used = {v for row in QF.gram for e in row for v in e.used_variables()}
    missing = sorted(used - set(point))
    if missing:
        raise ValueError(f"point does not fix base variables {missing}")
    try:
        M = specialize_gram(QF, point)
    except (ZeroDivisionError, ValueError) as exc:
        raise ValueError(f"invalid specialization: {exc}") from exc
    return QF.fiber_rank - rational_rank(M)


def coranks_on_divisor(QF: QuadricFibration, var: str) -> list[tuple[str, int, int]]:
    """Exact corank at every root of the degeneration divisor in one base variable.

    The divisor (cleared of powers of ``var``) is factored over Q; at the
    roots of an irreducible factor g the Gram matrix is reduced in the field
    ``Q[var]/(g)``.  Returns ``(factor, number of roots, corank)`` per factor.
    Requires every base variable other than ``var`` to be fixed already.
    """
    import sympy

    x = sympy.Symbol(var)

    def coefficient_map(p: LaurentPoly) -> dict[int, Fraction]:
        extra = set(p.used_variables()) - {var}
        if extra:
            raise ValueError(f"base variables {sorted(extra)} are not specialized")
        parts = p.coefficients_in(var)
        return {k: c.constant_value() for k, c in parts.items()}

    n = QF.fiber_rank
    entries = [[coefficient_map(QF.gram[i][j]) for j in range(n)] for i in range(n)]
    shift = -min([k for row in entries for e in row for k in e] + [0])
    polys = [
        [sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x ** (k + shift) for k, c in e.items()) or 0, x, domain="QQ") for e in row]
        for row in entries
    ]
    D = coefficient_map(degeneration_divisor(QF))
    dshift = -min(list(D) + [0])
    Dp = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x ** (k + dshift) for k, c in D.items()) or 0, x, domain="QQ")
    out = []
    _, factors = Dp.factor_list()
    for g, _mult in factors:
        if g.degree() == 1 and g.eval(0) == 0:
            continue  # var = 0 is outside the torus chart
        r = _rank_mod(polys, g)
        out.append((str(g.as_expr()), g.degree(), n - r))
    return out


def _rank_mod(M, g) -> int:
    """Rank of a polynomial matrix over the field ``Q[x]/(g)``, g irreducible."""
    rows = [[e.rem(g) for e in row] for row in M]
    n_rows, n_cols = len(rows), len(rows[0]) if rows else 0
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if not rows[i][c].is_zero), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].invert(g)
        rows[r] = [(e * inv).rem(g) for e in rows[r]]
        for i in range(n_rows):
            if i != r and not rows[i][c].is_zero:
                f = rows[i][c]
                rows[i] = [(a - f * b).rem(g) for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


# -- even Clifford algebra --------------------------------------------------


def reduce_word(word: Sequence[int], Q) -> dict[tuple[int, ...], object]:
    """Normal form of the generator word ``e_w1 e_w2 ...`` in the Clifford algebra.

    Rewrites ``e_i e_i -> Q_ii`` and ``e_i e_j -> 2 Q_ij - e_j e_i`` for
    ``i > j`` until every word is strictly increasing.
    """
    one = Q[0][0] ** 0 if isinstance(Q[0][0], LaurentPoly) else Fraction(1)
    todo = [(tuple(word), one)]
    out: dict[tuple[int, ...], object] = {}
    while todo:
        w, c = todo.pop()
        pos = next((p for p in range(len(w) - 1) if w[p] >= w[p + 1]), None)
        if pos is None:
            out[w] = out[w] + c if w in out else c
            continue
        a, b = w[pos], w[pos + 1]
        if a == b:
            todo.append((w[:pos] + w[pos + 2 :], c * Q[a][a]))
        else:
            todo.append((w[:pos] + w[pos + 2 :], c * 2 * Q[b][a]))
            todo.append((w[:pos] + (b, a) + w[pos + 2 :], -c))
    return {w: c for w, c in out.items() if c != 0}


@dataclass(frozen=True)
class EvenCliffordAlgebra:
    generators: int
    basis: tuple[tuple[int, ...], ...]
    table: dict  # (i, j) -> {k: coeff}, indices into basis

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def multiply(self, x: Mapping[int, object], y: Mapping[int, object]) -> dict[int, object]:
        out: dict[int, object] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.table[(i, j)].items():
                    v = a * b * c
                    out[k] = out[k] + v if k in out else v
        return {k: v for k, v in out.items() if v != 0}

    def to_json(self) -> dict:
        names = ["*".join(f"e{i + 1}" for i in w) or "1" for w in self.basis]
        table = {}
        for (i, j), prod in sorted(self.table.items()):
            table[f"{names[i]}|{names[j]}"] = {names[k]: str(c) for k, c in sorted(prod.items())}
        return {"dim": self.dimension, "basis": names, "table": table}


def even_basis(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(w for size in range(0, n + 1, 2) for w in combinations(range(n), size))


def even_clifford(Q: Sequence[Sequence]) -> EvenCliffordAlgebra:
    """Multiplication table of the even Clifford algebra of the Gram matrix ``Q``.

    Entries may be rationals or Laurent polynomials.  The basis is the
    increasing even words in deglex order, of size ``2^(n-1)``.
    """
    if isinstance(Q, QuadricFibration):
        Q = Q.gram
    n = len(Q)
    basis = even_basis(n)
    pos = {w: i for i, w in enumerate(basis)}
    table = {}
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            prod = reduce_word(u + v, Q)
            table[(i, j)] = {pos[w]: c for w, c in prod.items()}
    return EvenCliffordAlgebra(n, basis, table)
