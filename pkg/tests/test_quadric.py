import itertools
import random
from fractions import Fraction

import pytest
import sympy

from cliffmirror.cones import check_reflexive_pair, cone_over_polytope
from cliffmirror.decomp import enumerate_decompositions
from cliffmirror.fans import build_central_triangulation
from cliffmirror.laurent import LaurentPoly, det, parse, substitute
from cliffmirror.mirror import build_potential
from cliffmirror.quadric import (
    QuadricFibration,
    corank_at,
    coranks_on_divisor,
    degeneration_divisor,
    even_basis,
    even_clifford,
    gram_from_quadric,
    gram_matrix,
    reduce_word,
)
from cliffmirror.square import exe_pair, quadric_family, rational_degenerate_instance, seeded_labels, symbolic_labels
from oracles import chevalley_generators, to_sympy, word_matrix

SQUARE = [(1, 1), (1, -1), (-1, -1), (-1, 1)]


def fibration(Q, base=()):
    gram = tuple(tuple(LaurentPoly._lift(x) for x in row) for row in Q)
    return QuadricFibration(tuple(f"z{i + 1}" for i in range(len(Q))), gram, tuple(base))


def test_trivial_grams():
    one, zero = LaurentPoly.const(1), LaurentPoly.const(0)
    assert gram_from_quadric(parse("z1^2 + z2^2"), ("z1", "z2")) == ((one, zero), (zero, one))
    assert gram_from_quadric(parse("2 * z1 * z2"), ("z1", "z2")) == ((zero, one), (one, zero))
    with pytest.raises(ValueError):
        gram_from_quadric(parse("z1^2 * z2"), ("z1", "z2"))


def test_square_family_gram():
    a = {k: v for k, v in symbolic_labels().items()}
    QF = quadric_family(a)
    t = LaurentPoly.var("t")
    row = lambda j: a[(1, j)] * t + a[(2, j)] + a[(3, j)] * t**-1  # noqa: E731
    expected = ((row(1) * t, row(2) * t / 2), (row(2) * t / 2, row(3) * t))
    assert QF.gram == expected
    D = degeneration_divisor(QF)
    assert D == (row(1) * row(3) - row(2) * row(2) / 4) * t**2


def test_quadratic_form_reproduces_C2():
    pair = exe_pair()
    for d in enumerate_decompositions(pair, 1):
        P = build_potential(pair, d, seed=3)
        QF = gram_matrix(P)
        assert QF.quadratic_form() == P.C2
        assert all(QF.gram[i][j] == QF.gram[j][i] for i in range(QF.fiber_rank) for j in range(QF.fiber_rank))


def test_simplex_chart():
    pair = check_reflexive_pair(cone_over_polytope(SQUARE))
    d = enumerate_decompositions(pair, 1, 1)[0]
    P = build_potential(pair, d, seed=1)
    T = build_central_triangulation(pair, d)
    QF = gram_matrix(P, chart=0, triangulation=T)
    assert len(QF.base_vars) == 1
    with pytest.raises(ValueError):
        gram_matrix(P, chart=0)
    with pytest.raises(ValueError):
        gram_matrix(build_potential(pair, enumerate_decompositions(pair)[0]))


def test_det_commutes_with_specialization():
    pair = exe_pair()
    rng = random.Random(0)
    for d in enumerate_decompositions(pair, 1):
        QF = gram_matrix(build_potential(pair, d, seed=5))
        point = {v: Fraction(rng.randint(1, 9), rng.randint(1, 9)) for v in QF.base_vars}
        special = [[substitute(e, point) for e in row] for row in QF.gram]
        assert substitute(degeneration_divisor(QF), point) == det(special)


def test_block_diagonal_det():
    A = [[parse("t"), parse("1")], [parse("1"), parse("t^-1 + 2")]]
    B = [[parse("3"), parse("t")], [parse("t"), parse("1/2")]]
    zero = LaurentPoly.const(0)
    M = [A[0] + [zero, zero], A[1] + [zero, zero], [zero, zero] + B[0], [zero, zero] + B[1]]
    assert det(M) == det(A) * det(B)


def test_corank_trivial_cases():
    assert corank_at(fibration([[1, 0], [0, 1]]), {}) == 0
    assert corank_at(fibration([[0, 0], [0, 0]]), {}) == 2
    QF = fibration([[parse("t"), 0], [0, parse("t^-1")]], ("t",))
    assert corank_at(QF, {"t": 3}) == 0
    with pytest.raises(ValueError):
        corank_at(QF, {})
    with pytest.raises(ValueError):
        corank_at(QF, {"t": 0})


@pytest.mark.parametrize("seed", range(5))
def test_corank_one_at_rational_root(seed):
    labels, t0 = rational_degenerate_instance(seed)
    QF = quadric_family(labels)
    assert substitute(degeneration_divisor(QF), {"t": t0}) == LaurentPoly.const(0)
    assert corank_at(QF, {"t": t0}) == 1


def test_coranks_on_divisor():
    for seed in range(5):
        out = coranks_on_divisor(quadric_family(seeded_labels(seed)), "t")
        assert sum(n for _, n, _ in out) == 4
        assert all(c == 1 for _, _, c in out)


def test_coranks_on_divisor_zero_gram():
    zero = parse("0")
    QF = fibration([[parse("t + -2"), zero], [zero, parse("t + -2")]], ("t",))
    assert coranks_on_divisor(QF, "t") == [("t - 2", 1, 2)]


# -- Clifford ------------------------------------------------------------------


def test_rank_two_relation():
    a, b, c = (LaurentPoly.var(v) for v in "abc")
    A = even_clifford([[a, b / 2], [b / 2, c]])
    assert A.dimension == 2 and A.basis == ((), (0, 1))
    u = {1: LaurentPoly.const(1)}
    assert A.multiply(u, u) == {1: b, 0: -(a * c)}


def test_identity_form():
    A = even_clifford([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]])
    assert A.multiply({1: 1}, {1: 1}) == {0: -1}


def test_dimensions():
    for n in range(1, 7):
        assert len(even_basis(n)) == 2 ** (n - 1)
    assert even_clifford([[Fraction(int(i == j)) for j in range(4)] for i in range(4)]).dimension == 8


def test_generator_relations():
    rng = random.Random(1)
    n = 4
    Q = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            Q[i][j] = Q[j][i] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    for i in range(n):
        assert reduce_word((i, i), Q) == ({(): Q[i][i]} if Q[i][i] else {})
        for j in range(n):
            if i == j:
                continue
            total = dict(reduce_word((i, j), Q))
            for w, c in reduce_word((j, i), Q).items():
                total[w] = total.get(w, 0) + c
            assert {w: c for w, c in total.items() if c} == ({(): 2 * Q[i][j]} if Q[i][j] else {})


def check_against_chevalley(Q, Qsym):
    A = even_clifford(Q)
    gens, size = chevalley_generators(Qsym)
    mats = [word_matrix(gens, w, size) for w in A.basis]
    for (i, j), prod in A.table.items():
        lhs = mats[i] * mats[j]
        rhs = sympy.zeros(size, size)
        for k, c in prod.items():
            rhs += to_sympy(c) * mats[k]
        assert (lhs - rhs).expand() == sympy.zeros(size, size)
    return A


def test_chevalley_symbolic_rank_two():
    Q = [[LaurentPoly.var("q11"), LaurentPoly.var("q12")], [LaurentPoly.var("q12"), LaurentPoly.var("q22")]]
    Qs = [[to_sympy(e) for e in row] for row in Q]
    check_against_chevalley(Q, Qs)


@pytest.mark.parametrize("seed", range(3))
def test_chevalley_rational_rank_four(seed):
    rng = random.Random(seed)
    Q = [[None] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(i, 4):
            Q[i][j] = Q[j][i] = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
    Qs = [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in Q]
    A = check_against_chevalley(Q, Qs)
    assert A.dimension == 8


def associative(A):
    one = Fraction(1)
    for i, j, k in itertools.product(range(A.dimension), repeat=3):
        left = A.multiply(A.multiply({i: one}, {j: one}), {k: one})
        right = A.multiply({i: one}, A.multiply({j: one}, {k: one}))
        if left != right:
            return False
    return True


def test_associativity_symbolic():
    a = symbolic_labels()
    QF = quadric_family(a)
    assert associative(even_clifford(QF))
    pair = exe_pair()
    d = enumerate_decompositions(pair, 2, 2)[0]
    A = even_clifford(gram_matrix(build_potential(pair, d, seed=1)))
    assert A.dimension == 8 and associative(A)


def test_table_json():
    A = even_clifford([[Fraction(2), Fraction(1, 2)], [Fraction(1, 2), Fraction(3)]])
    js = A.to_json()
    assert js["dim"] == 2
    assert js["table"]["e1*e2|e1*e2"] == {"1": "-6", "e1*e2": "1"}
