"""Acceptance criteria C1-C10.

Each criterion runs once, times itself and records a one-line verdict that
``conftest.py`` prints in the terminal summary. Also runnable as a script:
``python3 tests/test_acceptance.py``.
"""
import sys
import time

import pytest

from bandlab.exact import LaurentPoly, sym
from bandlab.golden import load_exprs
from bandlab.rootdata import CartanType, all_coxeter_words, coxeter
from bandlab.slgroup import chi, companion, lce_standard, psi, steinberg_element
from bandlab.verify import (
    ADE_UP_TO_5,
    RunConfig,
    a2_pentagon,
    gamma_a3_fixture_check,
    involution_and_laurent,
    run_verify,
    theta_d5_fixture_check,
    theta_template_sweep,
    xi_a3_fixture_check,
)

RESULTS: list[str] = []


def _suites(*names):
    bad = []
    for name in names:
        rep = run_verify(name, RunConfig(trials=20, seed=0))
        bad += [f"{name}: {c['name']} ({c['detail']})" for c in rep.checks if not c["passed"]]
    return not bad, "; ".join(bad)


def c1_steinberg():
    bad = []
    for n in range(2, 7):
        a = [LaurentPoly.var(sym("a", i)) for i in range(1, n)]
        m = companion(a)
        bad += [f"companion n={n} i={i}" for i in range(1, n) if chi(m, i) != (-1) ** (i - 1) * a[i - 1]]
    for n in range(2, 6):
        t = [LaurentPoly.var(sym("t", i)) for i in range(1, n)]
        for w in all_coxeter_words(CartanType.parse(f"A{n - 1}")):
            g = steinberg_element(coxeter(f"A{n - 1}", list(w)), t)
            bad += [f"word={w} i={i}" for i in range(1, n) if g.leading_minor(i) != t[i - 1]]
    return not bad, "; ".join(bad[:5])


def c2_psi_star():
    bad = []
    for n in (3, 4):
        fx = load_exprs(f"psi_star_SL{n}.txt")
        a = psi(lce_standard([LaurentPoly.var(sym("beta", j)) for j in range(1, n)]), coxeter(f"A{n - 1}"))
        bad += [f"SL{n} theta_{i}" for i in range(1, n) if a.leading_minor(i) != fx[f"theta_{i}"]]
    return not bad, "; ".join(bad)


def c9_fixtures():
    bad = [name for name, fn in (("Theta D5", theta_d5_fixture_check), ("Xi A3", xi_a3_fixture_check),
                                 ("Gamma A3", gamma_a3_fixture_check)) if not fn()[0]]
    return not bad, "; ".join(bad)


def c10_mutation():
    sweep = theta_template_sweep(ADE_UP_TO_5)
    inv = involution_and_laurent(RunConfig(trials=20, seed=0))
    pent = a2_pentagon()
    return sweep[0] and inv[0] and pent, f"template: {sweep[2]} involution: {inv[2]} pentagon={pent}"


CRITERIA = [
    ("C1", "Steinberg fixtures", 1, c1_steinberg),
    ("C2", "psi* displays", 5, c2_psi_star),
    ("C3", "Q-system", 30, lambda: _suites("qsystem")),
    ("C4", "gluing and T-system", 60, lambda: _suites("tsystem", "gluing")),
    ("C5", "cross-section", 60, lambda: _suites("cross-section")),
    ("C6", "Miura fixtures", 60, lambda: _suites("miura")),
    ("C7", "q-character flagship and properties", 300, lambda: _suites("qchar")),
    ("C8", "cluster expansions", 30, lambda: _suites("expansions")),
    ("C9", "seed golden fixtures", 1, c9_fixtures),
    ("C10", "mutation identities", 60, c10_mutation),
]


def evaluate(cid, name, limit, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    passed = ok and dt < limit
    line = f"[{'PASS' if passed else 'FAIL'}] {cid} {name} ({dt:.2f} s, limit {limit} s)"
    if not ok:
        line += f": {detail}"
    elif dt >= limit:
        line += ": over time limit"
    RESULTS.append(line)
    print(line)
    return ok, dt


@pytest.mark.parametrize("cid,name,limit,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(cid, name, limit, fn):
    ok, dt = evaluate(cid, name, limit, fn)
    assert ok
    assert dt < limit


if __name__ == "__main__":
    fails = 0
    for crit in CRITERIA:
        ok, dt = evaluate(*crit)
        fails += not (ok and dt < crit[2])
    sys.exit(1 if fails else 0)
