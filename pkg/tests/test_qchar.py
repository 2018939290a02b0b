from fractions import Fraction

import pytest

from bandlab.bands import make_rng, random_band, random_rational
from bandlab.errors import BadParity
from bandlab.exact import LaurentPoly, sym
from bandlab.golden import load_exprs
from bandlab.qchar import (
    baxter_expand,
    check_qchar,
    classical_specialize,
    classical_vs_schur,
    eval_on_band,
    l_window_from_Y,
    qchar_kr,
    ratio_only,
    shift_y,
    standard_coxeter,
    theta_symbolic,
    tsystem_check,
    z_sym,
)
from bandlab.bands import theta_sik


def test_flagship():
    q = qchar_kr(3, 1, 1, 0)
    assert str(q.poly) == "Y[1,1] + Y[1,3]^-1*Y[2,2] + Y[2,4]^-1"
    assert q.poly == load_exprs("qchar_A2_fundamental.txt")["theta_1"]
    assert q.dim() == 3
    assert q.header()["spectral"] == 1


def test_sl2():
    assert str(qchar_kr(2, 1, 1, 0).poly) == "Y[1,1] + Y[1,3]^-1"


def test_l_window():
    l = l_window_from_Y(3, 0, 0)[0]
    assert l.det() == 1
    for j in (1, 2):
        assert l.trailing_minor(j) == LaurentPoly.var(z_sym(j, 0))


def test_sl3_theta_from_l_diagonal():
    for s in (0, 1):
        l = l_window_from_Y(3, s - 2, s)
        assert theta_symbolic(3, 1, 1, s) == l[s][0, 0] + l[s - 1][1, 1] + l[s - 2][2, 2]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_properties(n):
    for i in range(1, n):
        for k in (1, 2, 3):
            for s in (-1, 0, 2):
                assert all(check_qchar(qchar_kr(n, i, k, s)).values())


def test_shift_equivariance():
    for n, i, k in [(3, 1, 2), (4, 2, 1), (4, 3, 2)]:
        assert shift_y(qchar_kr(n, i, k, 0).poly, 2) == qchar_kr(n, i, k, 1).poly


def test_tsystem():
    assert tsystem_check(3, 1, 1, 0)
    assert tsystem_check(3, 2, 2, 1)
    assert tsystem_check(4, 2, 1, 0) and tsystem_check(4, 2, 2, 0)


def test_classical_specialization():
    y = classical_specialize(qchar_kr(3, 1, 1, 0))
    assert y == LaurentPoly.parse("y[1] + y[1]^-1*y[2] + y[2]^-1")
    six = classical_specialize(qchar_kr(4, 2, 1, 0))
    assert six == LaurentPoly.parse(
        "y[2] + y[1]*y[2]^-1*y[3] + y[1]^-1*y[3] + y[1]*y[3]^-1 + y[1]^-1*y[2]*y[3]^-1 + y[2]^-1")
    assert qchar_kr(4, 2, 1, 0).dim() == 6


def test_classical_vs_schur():
    rng = make_rng(21)
    for n, i, k in [(3, 1, 2), (4, 2, 2), (4, 1, 3)]:
        q = qchar_kr(n, i, k, 0)
        for _ in range(5):
            x = [random_rational(rng, nonzero=True) for _ in range(n - 1)]
            p = Fraction(1)
            for v in x:
                p *= v
            x.append(1 / p)
            got, want = classical_vs_schur(q, x)
            assert got == want


def test_q_system_for_classical_characters():
    for n in (3, 4):
        c = standard_coxeter(n)
        for i in range(1, n):
            for k in (1, 2):
                Q = lambda j, kk: classical_specialize(qchar_kr(n, j, kk, 0)) if kk else 1
                prod = LaurentPoly.one()
                for j in c.type.neighbors(i):
                    prod = prod * Q(j, k)
                assert Q(i, k) ** 2 == Q(i, k - 1) * Q(i, k + 1) + prod


def test_baxter_displays():
    q = qchar_kr(3, 1, 1, 0)
    assert baxter_expand(q, "U") == load_exprs("expansion_A2_U.txt")["theta_1"]
    assert baxter_expand(q, "U-") == load_exprs("expansion_A2_Uminus.txt")["theta_1"]


def test_single_monomial_and_parity():
    c = standard_coxeter(3)
    y = LaurentPoly.var(sym("Y", 1, 1))
    out = baxter_expand(y, "U", c)
    assert out.is_monomial() and ratio_only(out)
    with pytest.raises(BadParity):
        baxter_expand(LaurentPoly.var(sym("Y", 1, 2)), "U", c)


def test_expansions_on_bands():
    for n in (3, 4):
        c = standard_coxeter(n)
        for i in range(1, n):
            q = qchar_kr(n, i, 1, 0)
            for seed in range(4):
                b = random_band(n, c, -4, 4, seed, require_generic=True)
                assert eval_on_band(baxter_expand(q, "U"), b) == theta_sik(b, 0, i, 1)
                assert eval_on_band(baxter_expand(q, "U-"), b) == theta_sik(b, 0, i, 1)
