import pytest

from bandlab.errors import InvalidWord
from bandlab.rootdata import (
    CartanType,
    all_coxeter_words,
    coxeter,
    simple_reflect,
    weyl_act,
)

A2 = CartanType.parse("A2")


def test_simple_reflections():
    assert simple_reflect(A2, 1, (1, 0)) == (-1, 1)
    assert simple_reflect(A2, 2, (1, 0)) == (1, 0)
    for lam in [(3, -2), (0, 5), (-1, -1)]:
        for i in (1, 2):
            assert simple_reflect(A2, i, simple_reflect(A2, i, lam)) == lam


def test_weyl_act():
    c = coxeter("A2", "1,2")
    assert c.c_act((0, 1)) == (-1, 0)
    assert weyl_act(A2, [], (2, 3)) == (2, 3)
    for T in ["A3", "A4", "D4", "D5", "E6"]:
        ct = CartanType.parse(T)
        _, w0 = ct.make_dominant(tuple([-1] * ct.rank))
        assert len(w0) == len(ct.positive_roots)
        for i in range(1, ct.rank + 1):
            assert weyl_act(ct, w0, ct.fundamental(i)) == tuple(-x for x in ct.fundamental(ct.nu[i - 1]))


def test_a2_data():
    c = coxeter("A2", "1,2")
    assert c.xi == (0, -1)
    assert c.m == (2, 1)
    assert c.a_of(1, 2) == 0
    assert c.h == 3


def test_d5_xi():
    assert coxeter("D5", "2,4,1,3,5").xi == (-1, 0, -1, 0, -2)
    assert CartanType.parse("D5").edges == ((1, 2), (2, 3), (3, 4), (3, 5))


def test_a3_data():
    c = coxeter("A3", "1,3,2")
    assert c.xi == (0, -1, 0)
    assert c.m == (2, 2, 2)
    assert c.dual_word == (2, 1, 3)


def test_xi_is_a_height_function():
    for T in ["A4", "D5", "E6"]:
        ct = CartanType.parse(T)
        for w in all_coxeter_words(ct)[:10]:
            c = coxeter(T, list(w))
            pos = {j: p for p, j in enumerate(w)}
            for i, j in ct.edges:
                first, second = (i, j) if pos[i] < pos[j] else (j, i)
                assert c.xi_of(second) == c.xi_of(first) - 1


@pytest.mark.parametrize("T", ["A1", "A3", "A5", "D4", "D6", "E6", "E7", "E8"])
def test_m_sums_to_number_of_positive_roots(T):
    c = coxeter(T)
    assert sum(c.m) == c.num_positive_roots()
    assert c.h * c.rank == 2 * c.num_positive_roots()


def test_coxeter_element_counts():
    assert len(all_coxeter_words(CartanType.parse("A3"))) == 4
    assert len(all_coxeter_words(CartanType.parse("E7"))) == 64


def test_invalid_words():
    with pytest.raises(InvalidWord):
        coxeter("A3", "1,2")
    with pytest.raises(InvalidWord):
        coxeter("A3", "1,1,2")


def test_nu_type_a():
    assert coxeter("A4").nu == (4, 3, 2, 1)
    assert coxeter("D5").nu == (1, 2, 3, 5, 4)
    assert coxeter("D4").nu == (1, 2, 3, 4)
