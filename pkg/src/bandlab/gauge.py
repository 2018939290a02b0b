"""Discrete gauge action on M = U cbar U, the cross-section algorithm,
twisted Birkhoff decomposition, the P map and the discrete Miura map H.

Everything here is SL(n) and generic over the coefficient ring; the
factored code paths never divide.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InexactDivision, NotInM, NotInOmega
from .exact import LaurentPoly, divide
from .matrix import RingMatrix
from .rootdata import CoxeterData
from .slgroup import (
    check_lce,
    coxeter_bar,
    signed_permutation,
    steinberg_coords,
)

Root = tuple  # (a, b) with 0 <= a < b < n


# --------------------------------------------------------------------------
# root patterns


def coxeter_permutation(cox: CoxeterData) -> list[int]:
    """pi with cbar e_j = +-e_{pi(j)} (0-based)."""
    n = cox.rank + 1
    return [p for p, _ in signed_permutation(n, tuple(cox.word))]


def roots_u_cinv(cox: CoxeterData) -> frozenset:
    """Positive roots (a, b) of U(c^{-1}) = U cap cbar U^- cbar^{-1}."""
    pi = coxeter_permutation(cox)
    inv = {p: j for j, p in enumerate(pi)}
    n = len(pi)
    return frozenset((a, b) for a in range(n) for b in range(a + 1, n) if inv[a] > inv[b])


def roots_u_cuc(cox: CoxeterData) -> frozenset:
    """Positive roots of U cap cbar U cbar^{-1}."""
    n = cox.rank + 1
    every = {(a, b) for a in range(n) for b in range(a + 1, n)}
    return frozenset(every - roots_u_cinv(cox))


def _zero(ref):
    return LaurentPoly.zero() if isinstance(ref, LaurentPoly) else Fraction(0)


def split_pattern(u: RingMatrix, first: frozenset) -> tuple[RingMatrix, RingMatrix]:
    """Write u = h1 h2 with h1 supported on ``first`` and h2 on the remaining
    positive roots.  Both root sets must be closed; no division is used."""
    n = u.n
    h1 = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    h2 = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for height in range(1, n):
        for a in range(n - height):
            b = a + height
            acc = u[a, b]
            for c in range(a + 1, b):
                if h1[a][c] and h2[c][b]:
                    acc = acc - h1[a][c] * h2[c][b]
            if (a, b) in first:
                h1[a][b] = acc
            else:
                h2[a][b] = acc
    return RingMatrix(h1), RingMatrix(h2)


def unipotent_inverse(u: RingMatrix) -> RingMatrix:
    """Inverse of a unitriangular matrix by the finite Neumann series."""
    n = u.n
    N = u - RingMatrix.identity(n)
    out = RingMatrix.identity(n)
    term = RingMatrix.identity(n)
    for _ in range(1, n):
        term = -(term @ N)
        out = out + term
    return out


def is_unitriangular_upper(m: RingMatrix) -> bool:
    return m.is_upper_unitriangular()


# --------------------------------------------------------------------------
# factorization m = b cbar x


@dataclass(frozen=True)
class Factored:
    """m = u1 cbar u2 with u1, u2 upper unitriangular."""

    u1: RingMatrix
    u2: RingMatrix

    def matrix(self, cox: CoxeterData) -> RingMatrix:
        return self.u1 @ coxeter_bar(cox) @ self.u2


def _is_unit(x) -> bool:
    if isinstance(x, LaurentPoly):
        return x.is_monomial()
    return x != 0


def _solve_linear(rows: list[list], rhs: list, nvars: int):
    """Solve sum_q rows[e][q] t_q = rhs[e] exactly.

    Pivots must be units of the ring; a nonzero non-unit pivot column raises
    InexactDivision, an inconsistent system raises NotInM.
    """
    eqs = [list(r) + [v] for r, v in zip(rows, rhs)]
    assigned: dict[int, object] = {}
    pivots = []
    used = set()
    for q in range(nvars):
        best = None
        for e, row in enumerate(eqs):
            if e in used or not row[q]:
                continue
            if _is_unit(row[q]):
                if best is None or (not isinstance(row[q], LaurentPoly) and row[q] in (1, -1)):
                    best = e
        if best is None:
            if any(eqs[e][q] for e in range(len(eqs)) if e not in used):
                raise InexactDivision("no unit pivot available")
            raise NotInM("underdetermined factorization")
        used.add(best)
        p = eqs[best][q]
        prow = [divide(x, p) if x else x for x in eqs[best]]
        eqs[best] = prow
        for e, row in enumerate(eqs):
            if e != best and row[q]:
                f = row[q]
                eqs[e] = [x - f * y for x, y in zip(row, prow)]
        pivots.append((q, best))
    for e, row in enumerate(eqs):
        if e not in used and row[-1]:
            raise NotInM("inconsistent factorization system")
    for q, e in pivots:
        assigned[q] = eqs[e][-1]
    return [assigned[q] for q in range(nvars)]


def factor_ucu_raw(m: RingMatrix, cox: CoxeterData) -> tuple[RingMatrix, RingMatrix]:
    """Solve m = b cbar x with b in U(c^{-1}) and x in U by elimination."""
    n = m.n
    cb = coxeter_bar(cox)
    pi = coxeter_permutation(cox)
    inv = {p: j for j, p in enumerate(pi)}
    roots = roots_u_cinv(cox)
    bp = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for a in range(n):
        unknowns = sorted(q for q in range(a + 1, n) if (a, q) in roots)
        j = inv[a]
        cols = list(range(j))
        if not unknowns:
            for k in cols:
                if m[a, k]:
                    raise NotInM(f"row {a} cannot be cleared")
            continue
        coef = [[m[q, k] for q in unknowns] for k in cols]
        rhs = [-m[a, k] for k in cols]
        sol = _solve_linear(coef, rhs, len(unknowns))
        for q, val in zip(unknowns, sol):
            bp[a][q] = val
    bprime = RingMatrix(bp)
    x = cb.transpose() @ bprime @ m
    if not x.is_upper_unitriangular():
        raise NotInM("residual is not upper unitriangular")
    b = unipotent_inverse(bprime)
    return b, x


def factor_ucu(m, cox: CoxeterData) -> tuple[RingMatrix, RingMatrix]:
    """(b, x) with m = b cbar x, b in U(c^{-1}), x in U.

    A :class:`Factored` input is handled division-free; a raw matrix is
    solved by elimination.
    """
    if isinstance(m, Factored):
        b, v = split_pattern(m.u1, roots_u_cinv(cox))
        cb = coxeter_bar(cox)
        return b, cb.transpose() @ v @ cb @ m.u2
    return factor_ucu_raw(m, cox)


# --------------------------------------------------------------------------
# gauge fixing


@dataclass
class GaugeResult:
    u: dict      # s -> U-element, s in [lo, hi + 1]
    a: dict      # s -> A-element, s in [lo, hi]
    d: dict      # s -> d(s)
    lo: int
    hi: int


def in_nested_u(d: RingMatrix, cbar: RingMatrix, depth: int) -> bool:
    """cbar^k d cbar^{-k} in U for 0 <= k <= depth."""
    cinv = cbar.transpose()
    cur = d
    for _ in range(depth + 1):
        if not cur.is_upper_unitriangular():
            return False
        cur = cbar @ cur @ cinv
    return True


def gauge_fix(m: dict, cox: CoxeterData, u0: RingMatrix | None = None,
              lo: int | None = None, hi: int | None = None,
              check_d: bool = True) -> GaugeResult:
    """Unique u with u(lo) = u0 and u(s) m(s) u(s+1)^{-1} in A for lo <= s <= hi.

    ``m`` maps s to a raw matrix in M or a :class:`Factored` triple.
    """
    keys = sorted(m)
    lo = keys[0] if lo is None else lo
    hi = keys[-1] if hi is None else hi
    n = cox.rank + 1
    cb = coxeter_bar(cox)
    cinv = cb.transpose()
    first = roots_u_cinv(cox)
    u0 = RingMatrix.identity(n) if u0 is None else u0
    if not u0.is_upper_unitriangular():
        raise NotInM("u0 must be upper unitriangular")

    x_prev = RingMatrix.identity(n)
    d_prev = u0
    us = {lo: u0}
    as_ = {}
    ds = {}
    for s in range(lo, hi + 1):
        ms = m[s]
        if isinstance(ms, Factored):
            b, x = factor_ucu(Factored(x_prev @ ms.u1, ms.u2), cox)
        else:
            b, x = factor_ucu(x_prev @ ms, cox)
        bt, dt = split_pattern(d_prev @ b, first)
        d = cinv @ dt @ cb
        if check_d and not in_nested_u(d, cb, s - lo + 1):
            raise AssertionError(f"d({s}) is outside the nested unipotent group")
        as_[s] = bt @ cb
        ds[s] = d
        us[s + 1] = d @ x
        x_prev, d_prev = x, d
    return GaugeResult(us, as_, ds, lo, hi)


def gauge_act(u: dict, m: dict, s: int) -> RingMatrix:
    """(u . m)(s) = u(s) m(s) u(s+1)^{-1}."""
    return u[s] @ m[s] @ unipotent_inverse(u[s + 1])


# --------------------------------------------------------------------------
# twisted Birkhoff decomposition and the P map


def twisted_birkhoff(g: RingMatrix) -> tuple[RingMatrix, RingMatrix]:
    """g = u b with u upper unitriangular and b lower triangular."""
    n = g.n
    for i in range(1, n + 1):
        if not g.trailing_minor(i):
            raise NotInOmega(i, f"trailing {i}-minor vanishes")
    # row operations from the bottom: u^{-1} g = b
    M = [list(r) for r in g.rows]
    for j in range(n - 1, 0, -1):
        p = M[j][j]
        for r in range(j):
            if M[r][j]:
                f = divide(M[r][j], p)
                M[r] = [x - f * y for x, y in zip(M[r], M[j])]
    b = RingMatrix(M)
    u = g @ b.inverse()
    assert u.is_upper_unitriangular() and b.is_lower_triangular()
    return u, b


def p_map(band) -> dict:
    """l(s) = b(s) b(s+1)^{-1} from the twisted Birkhoff factors of the band."""
    bs = {}
    for s in range(band.s_min, band.s_max + 1):
        _, bs[s] = twisted_birkhoff(band.at(s))
    return {s: bs[s] @ bs[s + 1].inverse() for s in range(band.s_min, band.s_max)}


# --------------------------------------------------------------------------
# L^{c,e} windows and the Miura map


def lce_from_coords(z: Sequence) -> RingMatrix:
    """Lower bidiagonal l with unit subdiagonal and trailing minors z_1..z_r."""
    r = len(z)
    n = r + 1
    zz = [Fraction(1) if not isinstance(z[0], LaurentPoly) else LaurentPoly.one()] + list(z)
    diag = [None] * n
    for j in range(1, n):
        # entry n-j (0-based) is z_j / z_{j-1}
        diag[n - j] = divide(zz[j], zz[j - 1])
    diag[0] = divide(1, zz[r])
    rows = [[0] * n for _ in range(n)]
    for k in range(n):
        rows[k][k] = diag[k]
        if k:
            rows[k][k - 1] = 1
    return RingMatrix(rows)


def lce_coords(l: RingMatrix) -> list:
    return [l.trailing_minor(i) for i in range(1, l.n)]


def miura_H(l: dict, cox: CoxeterData, check: bool = True) -> dict:
    """The A-conjugate of an L^{c,e} window under the discrete gauge action.

    Output a(s) is returned for s >= lo + max m_i, where u no longer
    depends on the choice of u(lo).
    """
    keys = sorted(l)
    lo, hi = keys[0], keys[-1]
    if check:
        for s in keys:
            check_lce(l[s], cox)
    factored = {}
    for s in keys:
        b, x = factor_ucu_raw(l[s], cox)
        factored[s] = Factored(b, x)
    res = gauge_fix(factored, cox, lo=lo, hi=hi)
    start = lo + cox.max_m
    return {s: res.a[s] for s in range(start, hi + 1)}


def a_theta(a: RingMatrix, cox: CoxeterData) -> list:
    return steinberg_coords(a, cox)
