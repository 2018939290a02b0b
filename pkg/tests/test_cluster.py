import pytest

from bandlab.cluster import (
    Quiver,
    Seed,
    build_gamma_quiver,
    build_theta_quiver,
    build_theta_seed,
    build_xi_quiver,
    build_xi_seed,
    exchange_relation,
    mutate,
    oriented_cycles,
    theta_label,
    theta_template_match,
)
from bandlab.errors import FrozenVertex
from bandlab.exact import LaurentPoly
from bandlab.golden import load_quiver
from bandlab.rootdata import coxeter
from bandlab.verify import a2_pentagon, gamma_a3_fixture_check, gamma_red_relations, RunConfig


def test_two_cycles_cancel_and_frozen_pairs_drop():
    q = Quiver.build("abc", [("a", "b"), ("b", "a"), ("a", "c"), ("b", "c"), ("c", "b")])
    assert dict(q.arrows) == {("a", "c"): 1}
    q = Quiver.build("abc", [("a", "b"), ("b", "c")], frozen="ab")
    assert dict(q.arrows) == {("b", "c"): 1}


def test_mutation_rule():
    q = Quiver.build("abc", [("a", "b"), ("b", "c")])
    m = q.mutate("b")
    assert dict(m.arrows) == {("b", "a"): 1, ("c", "b"): 1, ("a", "c"): 1}
    assert m.mutate("b") == q


def test_frozen_vertex():
    s = build_theta_seed(coxeter("A2"), 3)
    with pytest.raises(FrozenVertex):
        mutate(s, "1,3")
    with pytest.raises(ValueError):
        build_theta_seed(coxeter("A2"), 1)


def test_no_incoming_arrows_gives_one():
    s = Seed.initial(Quiver.build("ab", [("a", "b")]))
    rel = exchange_relation(s, "a")
    assert rel.incoming == ()
    new = mutate(s, "a")
    a, b = s.vars["a"], s.vars["b"]
    assert new.vars["a"] * a == b + 1


def test_pentagon():
    assert a2_pentagon()


def test_involution_and_laurent():
    s0 = build_theta_seed(coxeter("A3", "1,3,2"), 4)
    s = s0
    for v in ["1,1", "2,2", "3,1", "2,1", "1,2", "2,3"]:
        s = mutate(s, v)
    for v in s.quiver.vertices:
        if v not in s.quiver.frozen:
            assert mutate(mutate(s, v), v).vars == s.vars
    num, den = s.fraction("2,3")
    assert den.is_monomial()


def test_theta_labels_d5():
    c = coxeter("D5", "2,4,1,3,5")
    assert theta_label(c, 4, 1) == "theta^(1)_4,1"
    assert theta_label(c, 5, 2) == "theta^(-1)_5,2"
    q = build_theta_quiver(c, 3, frozen_boundary=False)
    assert q.to_text() == load_quiver("theta_D5_24135.txt").to_text()


def test_theta_a2_mutation_at_11():
    c = coxeter("A2", "1,2")
    s = build_theta_seed(c, 3)
    rel = exchange_relation(s, "1,1").labelled(s.quiver.labels)
    assert rel == {"vertex": "theta^(1)_1,1", "in": ["theta^(0)_1,2"], "out": ["theta^(0)_2,1"]}
    assert all(theta_template_match(c, s.quiver, v) for v in ["1,1", "1,2", "2,1", "2,2"])


def test_theta_sink_source():
    c = coxeter("A4", "2,1,4,3")
    q = build_theta_quiver(c, 5, frozen_boundary=False)
    for i in range(1, 5):
        for k in range(2, 5):
            v = f"{i},{k}"
            up, down = f"{i},{k - 1}", f"{i},{k + 1}"
            outs = {w for w, _ in q.outgoing(v)}
            ins = {w for w, _ in q.incoming(v)}
            assert {up, down} <= outs or {up, down} <= ins


def test_xi_arrows():
    c = coxeter("A3", "1,3,2")
    q = build_xi_quiver(c, -2, 2, frozen_boundary=False)
    assert ("1,2", "2,1") in q.arrows
    for i, s in [(1, 0), (2, -1), (3, 1)]:
        assert (f"{i},{s}", f"{i},{s + 1}") in q.arrows
    assert not any({u[0], v[0]} == {"1", "3"} for u, v in q.arrows)
    assert q.to_text() == load_quiver("xi_A3_132.txt").to_text()
    seed = build_xi_seed(c, -2, 2)
    assert "1,2" in seed.quiver.frozen and "2,1" in seed.quiver.frozen and "2,0" not in seed.quiver.frozen
    with pytest.raises(ValueError):
        build_xi_seed(c, 2, 2)


def test_gamma():
    ok, count, detail = gamma_a3_fixture_check()
    assert ok, detail
    c = coxeter("A3", "1,3,2")
    g = build_gamma_quiver(c, -3, 1)
    x = build_xi_quiver(c, -3, 1, frozen_boundary=False)
    assert len(g.vertices) - len(x.vertices) == 6
    assert len(oriented_cycles(x, 3)) == 14
    assert (len(oriented_cycles(g, 3)), len(oriented_cycles(g, 4))) == (6, 8)
    with pytest.raises(ValueError):
        build_gamma_quiver(c, -1, 1)


def test_gamma_vertex_surplus_other_types():
    for T, w in [("A2", "1,2"), ("A4", "2,1,3,4"), ("D4", "1,2,3,4")]:
        c = coxeter(T, w)
        lo = -c.max_m - 1
        g = build_gamma_quiver(c, lo, 1)
        x = build_xi_quiver(c, lo, 1)
        assert len(g.vertices) - len(x.vertices) == c.num_positive_roots()


def test_gamma_red_vertices():
    ok, count, detail = gamma_red_relations(RunConfig(trials=5, seed=2))
    assert ok, detail


def test_dot_and_text_round_trip():
    q = build_theta_quiver(coxeter("D4", "2,1,3,4"), 3)
    assert Quiver.from_dot(q.to_dot()) == q
    assert Quiver.from_text(q.to_text()) == q
    assert Quiver.from_dot(q.to_dot()).to_dot() == q.to_dot()


def test_seed_vars_are_atomic():
    s = build_theta_seed(coxeter("A2"), 3)
    assert all(isinstance(v, LaurentPoly) and v.is_monomial() for v in s.vars.values())
    assert len({s.symbol_of(v) for v in s.vars}) == len(s.vars)
