from fractions import Fraction

import pytest

from bandlab.bands import make_rng, random_rational, random_unimodular
from bandlab.errors import NotInCell, TypeNotSupported
from bandlab.exact import LaurentPoly, sym
from bandlab.matrix import RingMatrix
from bandlab.rootdata import CartanType, all_coxeter_words, coxeter
from bandlab.slgroup import (
    chevalley,
    chi,
    companion,
    coxeter_bar,
    gen_minor,
    gen_minor_w,
    hook_content_dim,
    lce_standard,
    psi,
    sbar,
    schur_rect_oracle,
    steinberg_element,
    theta_power,
)


def T(i):
    return LaurentPoly.var(sym("t", i))


def test_chevalley():
    assert chevalley(2, 1, 5) == RingMatrix([[1, 5], [0, 1]])
    assert chevalley(3, 2, 0).is_identity()
    assert chevalley(3, 1, 2) @ chevalley(3, 1, 3) == chevalley(3, 1, 5)


def test_sbar():
    assert sbar(2, 1) == RingMatrix([[0, -1], [1, 0]])
    assert sbar(3, 1) @ sbar(3, 2) == RingMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    for i in (1, 2, 3):
        assert (sbar(4, i) ** 4).is_identity()


def test_steinberg_element_a2():
    c = coxeter("A2", "1,2")
    a = steinberg_element(c, [T(1), T(2)])
    assert a == RingMatrix([[T(1), -T(2), 1], [1, 0, 0], [0, 1, 0]])
    assert steinberg_element(c, [0, 0]) == coxeter_bar(c)
    # shape of the companion form with t_i = (-1)^(i-1) a_i
    assert a == companion([T(1), -T(2)])


def test_steinberg_coordinates_all_words():
    for n in range(2, 6):
        ct = CartanType.parse(f"A{n - 1}")
        t = [T(i) for i in range(1, n)]
        for w in all_coxeter_words(ct):
            a = steinberg_element(coxeter(f"A{n - 1}", list(w)), t)
            for i in range(1, n):
                assert a.leading_minor(i) == t[i - 1]
                assert chi(a, i) == t[i - 1]


def test_companion_characters():
    for n in range(2, 7):
        a = [LaurentPoly.var(sym("a", i)) for i in range(1, n)]
        m = companion(a)
        for i in range(1, n):
            assert chi(m, i) == (-1) ** (i - 1) * a[i - 1]
        assert chi(m, n) == 1


def test_chi_of_identity_and_det():
    assert chi(RingMatrix.identity(4), 2) == 6
    g = random_unimodular(4, make_rng(4))
    assert chi(g, 4) == 1


def test_type_d_has_no_matrix_model():
    with pytest.raises(TypeNotSupported):
        steinberg_element(coxeter("D4"), [0, 0, 0, 0])


def test_generalized_minors():
    assert gen_minor(RingMatrix.identity(3), [], [], 1) == 1
    d = [Fraction(2), Fraction(3), Fraction(1, 6)]
    g = RingMatrix([[d[0], 0, 0], [5, d[1], 0], [7, 11, d[2]]])
    ct = CartanType.parse("A2")
    w0 = [1, 2, 1]
    assert gen_minor(g, w0, w0, 1) == d[2]
    assert gen_minor(g, w0, w0, 2) == d[1] * d[2]
    # only the weights matter
    assert gen_minor_w(g, (-1, 1), (-1, 1), 1) == gen_minor(g, [1], [1], 1)
    assert ct.fundamental(1) == (1, 0)


def test_psi_displays_sl3():
    b = [LaurentPoly.var(sym("beta", j)) for j in (1, 2)]
    a = psi(lce_standard(b), coxeter("A2"))
    assert a.leading_minor(1) == LaurentPoly.parse("beta[1] + beta[1]^-1*beta[2] + beta[2]^-1")


def test_psi_rejects_identity():
    with pytest.raises(NotInCell):
        psi(RingMatrix.identity(3), coxeter("A2"))


def test_theta_power_sl2():
    a1 = LaurentPoly.var(sym("a", 1))
    a = RingMatrix([[a1, -1], [1, 0]])
    assert theta_power(a, 1, 2) == a1 ** 2 - 1
    assert theta_power(a, 1, 1) ** 2 == theta_power(a, 1, 0) * theta_power(a, 1, 2) + 1


def test_q_system_sl3_symbolic():
    c = coxeter("A2")
    a = steinberg_element(c, [T(1), T(2)])
    assert theta_power(a, 1, 1) ** 2 - theta_power(a, 1, 2) == theta_power(a, 2, 1)


def test_schur_oracle():
    rng = make_rng(9)
    x = [random_rational(rng, nonzero=True) for _ in range(3)]
    assert schur_rect_oracle(1, 1, x) == sum(x)
    x.append(1 / (x[0] * x[1] * x[2]))
    assert schur_rect_oracle(4, 2, x) == 1
    for n in (2, 3, 4):
        for i in range(1, n):
            for k in (1, 2, 3):
                assert schur_rect_oracle(i, k, [1] * n) == hook_content_dim(n, i, k)
