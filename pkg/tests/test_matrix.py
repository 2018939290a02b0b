import itertools
from fractions import Fraction

from bandlab.bands import make_rng, random_rational, random_unimodular
from bandlab.exact import LaurentPoly, sym
from bandlab.matrix import RingMatrix, det_of, principal_minor_sum


def leibniz(M):
    n = len(M)
    tot = 0
    for p in itertools.permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if p[a] > p[b]:
                    sign = -sign
        term = sign
        for a in range(n):
            term = term * M[a][p[a]]
        tot = tot + term
    return tot


def test_det_of_matches_leibniz():
    rng = make_rng(1)
    for n in range(1, 6):
        M = [[random_rational(rng) for _ in range(n)] for _ in range(n)]
        assert det_of(M) == leibniz(M)


def test_symbolic_det():
    v = [[LaurentPoly.var(sym("b", i, j)) for j in range(3)] for i in range(3)]
    assert det_of(v) == leibniz(v)


def test_inverse_and_powers():
    rng = make_rng(2)
    for n in (2, 3, 4):
        g = random_unimodular(n, rng)
        assert g.det() == 1
        assert (g @ g.inverse()).is_identity()
        assert g ** -2 == (g.inverse() @ g.inverse())
        assert g ** 0 == RingMatrix.identity(n)


def test_symbolic_inverse_of_unimodular():
    t = LaurentPoly.var(sym("t", 1))
    g = RingMatrix([[1, t, 0], [0, 1, t], [0, 0, 1]])
    assert (g @ g.inverse()).is_identity()


def test_minors():
    g = RingMatrix([[Fraction(v) for v in r] for r in [[2, 1, 0], [1, 3, 1], [0, 1, 4]]])
    assert g.leading_minor(1) == 2
    assert g.leading_minor(2) == 5
    assert g.trailing_minor(1) == 4
    assert g.trailing_minor(2) == 11
    assert g.minor([0, 2], [1, 2]) == 4
    assert principal_minor_sum(g, 1) == 9
    assert principal_minor_sum(g, 3) == g.det()


def test_principal_minor_sum_identity_is_binomial():
    from math import comb

    for n in range(2, 6):
        e = RingMatrix.identity(n)
        for i in range(1, n + 1):
            assert principal_minor_sum(e, i) == comb(n, i)


def test_eval_matches_numeric():
    t = LaurentPoly.var(sym("t", 1))
    g = RingMatrix([[t, -1], [1, 0]])
    assert g.eval({sym("t", 1): 3}) == RingMatrix([[3, -1], [1, 0]])
