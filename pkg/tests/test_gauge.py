from fractions import Fraction

import pytest

from bandlab.bands import make_rng, random_band, random_rational, random_unimodular, random_upper_unitriangular
from bandlab.errors import NotInOmega
from bandlab.exact import LaurentPoly, sym, track_divisions
from bandlab.gauge import (
    Factored,
    factor_ucu,
    factor_ucu_raw,
    gauge_act,
    gauge_fix,
    lce_coords,
    lce_from_coords,
    miura_H,
    p_map,
    roots_u_cinv,
    twisted_birkhoff,
)
from bandlab.matrix import RingMatrix
from bandlab.rootdata import coxeter
from bandlab.slgroup import chevalley, check_lce, coxeter_bar, in_steinberg_section, psi, steinberg_element


def beta(j):
    return LaurentPoly.var(sym("beta", j))


def test_factor_sl3_fixture():
    c = coxeter("A2", "1,2")
    b1, b2 = beta(1), beta(2)
    l = RingMatrix([[b1, 0, 0], [1, b2 / b1, 0], [0, 1, b2 ** -1]])
    b, x = factor_ucu_raw(l, c)
    assert list(b.rows[0]) == [1, b1, -b2]
    assert x[0, 1] == b2 / b1 and x[0, 2] == 0 and x[1, 2] == b2 ** -1
    assert b @ coxeter_bar(c) @ x == l


def test_factor_trivial_cases():
    c = coxeter("A2", "1,2")
    cb = coxeter_bar(c)
    e = RingMatrix.identity(3)
    assert factor_ucu(cb, c) == (e, e)
    assert (0, 1) in roots_u_cinv(c)
    t = Fraction(5, 3)
    assert factor_ucu(chevalley(3, 1, t) @ cb, c) == (chevalley(3, 1, t), e)


def test_factored_and_raw_agree():
    rng = make_rng(2)
    for word in ("1,2,3", "2,1,3", "1,3,2"):
        c = coxeter("A3", word)
        for _ in range(5):
            f = Factored(random_upper_unitriangular(4, rng), random_upper_unitriangular(4, rng))
            b1, x1 = factor_ucu(f, c)
            b2, x2 = factor_ucu_raw(f.matrix(c), c)
            assert (b1, x1) == (b2, x2)


def test_gauge_fix_fixed_point():
    c = coxeter("A2")
    rng = make_rng(4)
    m = {s: steinberg_element(c, [random_rational(rng), random_rational(rng)]) for s in range(5)}
    res = gauge_fix(m, c)
    assert all(u.is_identity() for u in res.u.values())
    assert all(res.a[s] == m[s] for s in m)


def test_gauge_fix_tail_and_membership():
    rng = make_rng(5)
    for word in ("1,2,3", "3,1,2"):
        c = coxeter("A3", word)
        M = c.max_m
        m = {s: Factored(random_upper_unitriangular(4, rng), random_upper_unitriangular(4, rng))
             for s in range(M + 6)}
        r1 = gauge_fix(m, c, random_upper_unitriangular(4, rng))
        r2 = gauge_fix(m, c, random_upper_unitriangular(4, rng))
        raw = {s: f.matrix(c) for s, f in m.items()}
        for s in m:
            assert gauge_act(r1.u, raw, s) == r1.a[s]
            assert in_steinberg_section(r1.a[s], c)
        for s in range(M, M + 6):
            assert r1.a[s] == r2.a[s]
            assert r1.u[s] == r2.u[s]


def test_gauge_fix_periodic_input():
    rng = make_rng(8)
    c = coxeter("A2")
    f = Factored(random_upper_unitriangular(3, rng), random_upper_unitriangular(3, rng))
    res = gauge_fix({s: f for s in range(8)}, c)
    tail = [res.a[s] for s in range(c.max_m, 8)]
    assert all(a == tail[0] for a in tail)


def test_twisted_birkhoff_trivial():
    rng = make_rng(1)
    u = random_upper_unitriangular(3, rng)
    assert twisted_birkhoff(u) == (u, RingMatrix.identity(3))
    d = RingMatrix.diag([Fraction(2), Fraction(3), Fraction(1, 6)])
    assert twisted_birkhoff(d) == (RingMatrix.identity(3), d)


def test_twisted_birkhoff_display():
    rng = make_rng(12)
    done = 0
    while done < 10:
        g = random_unimodular(3, rng)
        (a, b, c), (d, e, f), (h, i, k) = g.rows
        if k == 0 or e * k - f * i == 0:
            with pytest.raises(NotInOmega):
                twisted_birkhoff(g)
            continue
        u, low = twisted_birkhoff(g)
        D = e * k - f * i
        assert u == RingMatrix([[1, (b * k - c * i) / D, c / k], [0, 1, f / k], [0, 0, 1]])
        assert low == RingMatrix([[1 / D, 0, 0], [(d * k - f * h) / k, D / k, 0], [h, i, k]])
        done += 1


def test_p_map_lands_in_lce():
    c = coxeter("A2", "1,2")
    for seed in range(5):
        band = random_band(3, c, 0, 4, seed, require_omega=True)
        l = p_map(band)
        for s, ls in l.items():
            check_lce(ls, c)
            assert ls == lce_from_coords(lce_coords(ls))
            for i in (1, 2):
                ratio = band.at(s).trailing_minor(i) / band.at(s + 1).trailing_minor(i)
                assert ls.trailing_minor(i) == ratio


def test_h_of_p_is_band_a():
    for word in ("1,2", "2,1"):
        c = coxeter("A2", word)
        band = random_band(3, c, 0, 6, 3, require_omega=True)
        h = miura_H(p_map(band), c)
        assert h and all(h[s] == band.a(s) for s in h)


def test_constant_input_gives_psi():
    c = coxeter("A3")
    l0 = lce_from_coords([Fraction(2), Fraction(-1, 3), Fraction(5)])
    h = miura_H({s: l0 for s in range(6)}, c)
    assert all(v == psi(l0, c) for v in h.values())


def test_symbolic_pipeline_is_division_pure():
    from bandlab.qchar import _a_window, theta_symbolic

    _a_window.cache_clear()
    with track_divisions() as st:
        theta_symbolic(3, 1, 1, 0)
    assert st.failed == 0 and st.attempted > 0
