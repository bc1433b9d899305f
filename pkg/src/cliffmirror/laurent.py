"""Exact multivariate Laurent polynomials over Q.

A :class:`LaurentPoly` carries an ordered tuple of variable names and a
dict from dense exponent tuples to nonzero ``Fraction`` coefficients.
Operands over different variable lists are aligned on the union of their
variables.  Cox coordinates are named ``z[(1,0,-1)]`` after their lattice
point; see :func:`cox_var`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence, Union

Number = Union[int, Fraction]


def cox_var(n: Sequence[int]) -> str:
    return "z[(" + ",".join(str(int(x)) for x in n) + ")]"


def point_of(var: str) -> tuple[int, ...] | None:
    m = re.fullmatch(r"z\[\(([-0-9,]*)\)\]", var)
    if m is None:
        return None
    return tuple(int(x) for x in m.group(1).split(","))


class LaurentPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str] = (), terms: Mapping | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent length does not match variables")
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Number, variables: Sequence[str] = ()) -> "LaurentPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        return cls((name,), {(1,): 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Number = 1) -> "LaurentPoly":
        names = tuple(exps)
        return cls(names, {tuple(exps[v] for v in names): coeff})

    # -- alignment ----------------------------------------------------------

    def with_variables(self, variables: Sequence[str]) -> "LaurentPoly":
        variables = tuple(variables)
        if variables == self.variables:
            return self
        idx = {v: i for i, v in enumerate(variables)}
        for v, col in zip(self.variables, zip(*self.terms) if self.terms else [()] * len(self.variables)):
            if v not in idx and any(col):
                raise ValueError(f"variable {v} is used and cannot be dropped")
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for v, x in zip(self.variables, e):
                if x:
                    new[idx[v]] = x
            out[tuple(new)] = c
        return LaurentPoly(variables, out)

    def _align(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        if self.variables == other.variables:
            return self, other
        seen = set(self.variables)
        union = self.variables + tuple(v for v in other.variables if v not in seen)
        return self.with_variables(union), other.with_variables(union)

    @staticmethod
    def _lift(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        return NotImplemented

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(a.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(a.variables, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.variables, {e: c / other for e, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "LaurentPoly":
        """Inverse of a monomial; other polynomials are not units."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only nonzero monomials are invertible")
        (e, c), = self.terms.items()
        return LaurentPoly(self.variables, {tuple(-x for x in e): 1 / c})

    # -- comparison ---------------------------------------------------------

    def sparse(self) -> dict:
        """Variable-order independent form: {((var, exp), ...): coeff}."""
        out = {}
        for e, c in self.terms.items():
            key = tuple(sorted((v, x) for v, x in zip(self.variables, e) if x))
            out[key] = c
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.sparse() == other.sparse()

    def __hash__(self):
        return hash(frozenset(self.sparse().items()))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def used_variables(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    def degrees(self, var: str) -> set[int]:
        if var not in self.variables:
            return {0} if self.terms else set()
        i = self.variables.index(var)
        return {e[i] for e in self.terms}

    def coefficients_in(self, var: str) -> dict[int, "LaurentPoly"]:
        """Split as ``sum_k coeff_k * var^k``; coefficients are free of ``var``."""
        if var not in self.variables:
            return {0: self} if self.terms else {}
        i = self.variables.index(var)
        rest = self.variables[:i] + self.variables[i + 1 :]
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(e[i], {})[e[:i] + e[i + 1 :]] = c
        return {k: LaurentPoly(rest, t) for k, t in parts.items()}

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if not any(e):
                return c
        raise ValueError("polynomial is not constant")

    def total_degree(self, variables: Sequence[str]) -> set[int]:
        idx = [self.variables.index(v) for v in variables if v in self.variables]
        return {sum(e[i] for i in idx) for e in self.terms}

    def min_exponents(self) -> dict[str, int]:
        return {v: min(e[i] for e in self.terms) for i, v in enumerate(self.variables)} if self.terms else {}

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        """Largest term in the lex order of the sparse form (deterministic)."""
        sp = self.sparse()
        key = max(sp)
        return key, sp[key]

    # -- text format --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            factors = [str(c)]
            for v, x in zip(self.variables, e):
                if x == 1:
                    factors.append(v)
                elif x:
                    factors.append(f"{v}^{x}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


Scalar = Union[Number, LaurentPoly]


def parse(text: str, variables: Sequence[str] | None = None) -> LaurentPoly:
    """Inverse of ``str(poly)``.

    Terms are ``+``-separated, factors ``*``-separated; the first factor of a
    term may be a rational coefficient.  Subtraction is written as adding a
    negative coefficient.
    """
    result = LaurentPoly.const(0, variables or ())
    text = text.strip()
    if text == "0":
        return result
    for term in re.split(r"\s*\+\s*", text):
        mono = LaurentPoly.const(1)
        for factor in re.split(r"\s*\*\s*", term):
            factor = factor.strip()
            try:
                mono = mono * Fraction(factor)
                continue
            except ValueError:
                pass
            if factor.startswith("-"):
                mono, factor = -mono, factor[1:]
            name, exp = factor, 1
            head, sep, tail = factor.rpartition("^")
            if sep and re.fullmatch(r"-?\d+", tail):
                name, exp = head, int(tail)
            if not name:
                raise ValueError(f"cannot parse term {term!r}")
            mono = mono * LaurentPoly.monomial({name: exp})
        result = result + mono
    if variables is not None:
        result = result.with_variables(tuple(variables) + tuple(
            v for v in result.variables if v not in variables))
    return result


def monomial_from_point(slice_dual: Sequence[Sequence[int]], m: Sequence[int], exclude=()) -> LaurentPoly:
    """``prod_n z(n)^<m,n>`` over the level-1 slice of ``K^vee`` minus ``exclude``."""
    from .linalg import pairing

    excl = {tuple(x) for x in exclude}
    names, exps = [], []
    for n in slice_dual:
        if tuple(n) in excl:
            continue
        e = pairing(m, n)
        if e < 0:
            raise ValueError(f"{tuple(m)} pairs negatively with {tuple(n)}: not in K")
        names.append(cox_var(n))
        exps.append(e)
    return LaurentPoly(names, {tuple(exps): 1})


def substitute(p: LaurentPoly, assignment: Mapping[str, Scalar]) -> LaurentPoly:
    """Replace variables by rationals or Laurent polynomials.

    A variable occurring with a negative exponent may only be replaced by a
    nonzero rational or a monomial.
    """
    keep = [v for v in p.variables if v not in assignment]
    keep_idx = [p.variables.index(v) for v in keep]
    subs = [(p.variables.index(v), LaurentPoly._lift(val)) for v, val in assignment.items() if v in p.variables]
    for i, val in subs:
        if any(e[i] < 0 for e in p.terms):
            if val.is_zero():
                raise ZeroDivisionError(f"zero substituted into negative power of {p.variables[i]}")
            if len(val.terms) != 1:
                raise ValueError(f"non-monomial substituted into negative power of {p.variables[i]}")
    cache: dict = {}
    result = LaurentPoly.const(0, keep)
    for e, c in p.terms.items():
        term = LaurentPoly(keep, {tuple(e[i] for i in keep_idx): c})
        for i, val in subs:
            x = e[i]
            if x:
                key = (i, x)
                if key not in cache:
                    cache[key] = val ** x
                term = term * cache[key]
        result = result + term
    return result


def rename(p: LaurentPoly, mapping: Mapping[str, str]) -> LaurentPoly:
    return LaurentPoly(tuple(mapping.get(v, v) for v in p.variables), p.terms)


def det(matrix: Sequence[Sequence[Scalar]]) -> LaurentPoly:
    """Exact determinant by Laplace expansion over column subsets.

    The subset recursion shares minors, so the cost is O(n 2^n) ring
    multiplications.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if n == 0:
        return LaurentPoly.const(1)
    M = [[LaurentPoly._lift(x) for x in row] for row in matrix]
    # minors[cols] = det of rows (n-len(cols)..n-1) x cols
    minors: dict[tuple[int, ...], LaurentPoly] = {(): LaurentPoly.const(1)}
    for size in range(1, n + 1):
        row = n - size
        new = {}
        for cols in combinations(range(n), size):
            acc = LaurentPoly.const(0)
            for pos, c in enumerate(cols):
                entry = M[row][c]
                if entry.is_zero():
                    continue
                rest = cols[:pos] + cols[pos + 1 :]
                term = entry * minors[rest]
                acc = acc - term if pos % 2 else acc + term
            new[cols] = acc
        minors = new
    return minors[tuple(range(n))]


def discriminant_quadratic(p: LaurentPoly, var: str) -> LaurentPoly:
    """``B^2 - 4AC`` for ``p = A var^2 + B var + C``."""
    parts = p.coefficients_in(var)
    if not parts or max(parts) != 2 or min(parts) < 0:
        raise ValueError(f"not a quadratic in {var}: degrees {sorted(parts)}")
    A = parts.get(2, LaurentPoly.const(0))
    B = parts.get(1, LaurentPoly.const(0))
    C = parts.get(0, LaurentPoly.const(0))
    return B * B - 4 * A * C


def clear_denominator(p: LaurentPoly, var: str) -> tuple[LaurentPoly, int]:
    """Multiply by ``var^s`` so the lowest power of ``var`` becomes 0; returns (poly, s)."""
    degs = p.degrees(var)
    if not degs:
        return p, 0
    s = -min(degs)
    return p * LaurentPoly.monomial({var: s}), s


def monomial_ratio(p: LaurentPoly, q: LaurentPoly) -> tuple[Fraction, dict[str, int]] | None:
    """Return ``(mu, exps)`` with ``p = mu * prod v^exps[v] * q``, or None."""
    if p.is_zero() or q.is_zero():
        return None
    names = sorted(set(p.used_variables()) | set(q.used_variables()))
    pa, qa = p.with_variables(names), q.with_variables(names)
    ep = max(pa.terms)
    eq = max(qa.terms)
    exps = {v: a - b for v, a, b in zip(names, ep, eq) if a != b}
    mu = pa.terms[ep] / qa.terms[eq]
    factor = LaurentPoly.monomial(exps, mu) if exps else LaurentPoly.const(mu)
    if factor * q == p:
        return mu, exps
    return None
