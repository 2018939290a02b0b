"""SL(n) realization: Chevalley generators, generalized minors, the Steinberg
section, fundamental characters, psi and theta_{i,k}.

Nodes are 1..n-1.  ``sbar(i)`` is the identity with the block
``[[0, -1], [1, 0]]`` on rows/columns (i, i+1).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import IndexOutOfRange, NotInCell, TypeNotSupported
from .exact import LaurentPoly
from .matrix import RingMatrix, det_of, principal_minor_sum
from .rootdata import CartanType, CoxeterData, minimal_word, weyl_act


def _check(n: int, i: int) -> None:
    if not (isinstance(i, int) and 1 <= i <= n - 1):
        raise IndexOutOfRange(f"node {i} outside [1, {n - 1}]")


def chevalley(n: int, i: int, t, sign: int = +1) -> RingMatrix:
    _check(n, i)
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    if sign > 0:
        rows[i - 1][i] = t
    else:
        rows[i][i - 1] = t
    return RingMatrix(rows)


def sbar(n: int, i: int) -> RingMatrix:
    _check(n, i)
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    rows[i - 1][i - 1] = rows[i][i] = 0
    rows[i - 1][i] = -1
    rows[i][i - 1] = 1
    return RingMatrix(rows)


def word_matrix(n: int, word: Sequence[int]) -> RingMatrix:
    out = RingMatrix.identity(n)
    for j in word:
        out = out @ sbar(n, j)
    return out


def type_a(n: int) -> CartanType:
    return CartanType("A", n - 1)


@lru_cache(maxsize=None)
def signed_permutation(n: int, word: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """For ``w = sbar(w1)...sbar(wm)`` return pairs (pi(k), sign) with
    ``w e_k = sign * e_{pi(k)}`` (0-based)."""
    out = []
    for k in range(n):
        pos, sign = k, 1
        for j in reversed(word):
            # sbar(j) e_{j-1} = e_j, sbar(j) e_j = -e_{j-1}
            if pos == j - 1:
                pos = j
            elif pos == j:
                pos, sign = j - 1, -sign
        out.append((pos, sign))
    return tuple(out)


def subset_of_weight(gamma: Sequence[int]) -> tuple[int, ...]:
    """0-based row set S with e_S of weight gamma (type A)."""
    n = len(gamma) + 1
    v = [sum(gamma[k:]) for k in range(n - 1)] + [0]
    top = max(v)
    return tuple(k for k in range(n) if v[k] == top)


def weight_of_subset(n: int, S: Sequence[int]) -> tuple[int, ...]:
    s = set(S)
    return tuple(int(j in s) - int(j + 1 in s) for j in range(n - 1))


def gen_minor_w(g: RingMatrix, gamma: Sequence[int], delta: Sequence[int], i: int):
    """Delta_{gamma, delta}(g) for weights gamma, delta in the orbit of varpi_i."""
    n = g.n
    _check(n, i)
    ct = type_a(n)
    u = tuple(minimal_word(ct, gamma, i))
    v = tuple(minimal_word(ct, delta, i))
    pu = signed_permutation(n, u)
    pv = signed_permutation(n, v)
    rows = [pu[a][0] for a in range(i)]
    cols = [pv[b][0] for b in range(i)]
    sign = 1
    for a in range(i):
        sign *= pu[a][1] * pv[a][1]
    val = g.minor(rows, cols)
    return val if sign > 0 else -val


def gen_minor(g: RingMatrix, u: Sequence[int], v: Sequence[int], i: int):
    """Delta_{u(varpi_i), v(varpi_i)}(g), i.e. the leading i-minor of
    ``ubar^{-1} g vbar`` for canonical reduced lifts of u and v.

    The value depends only on the weights u(varpi_i) and v(varpi_i).
    """
    ct = type_a(g.n)
    w = ct.fundamental(i)
    return gen_minor_w(g, weyl_act(ct, u, w), weyl_act(ct, v, w), i)


def steinberg_element(cox: CoxeterData, t: Sequence) -> RingMatrix:
    """``x_{i1}(t_{i1}) sbar_{i1} ... x_{ir}(t_{ir}) sbar_{ir}``; t is indexed by node."""
    if cox.type.series != "A":
        raise TypeNotSupported("matrix realization exists only in type A")
    n = cox.rank + 1
    if len(t) != cox.rank:
        raise IndexOutOfRange("need one coordinate per node")
    out = RingMatrix.identity(n)
    for i in cox.word:
        out = out @ chevalley(n, i, t[i - 1]) @ sbar(n, i)
    return out


def coxeter_bar(cox: CoxeterData) -> RingMatrix:
    return word_matrix(cox.rank + 1, cox.word)


def companion(a: Sequence) -> RingMatrix:
    """The companion-form matrix with first row (a_1, ..., a_r, (-1)^r)."""
    r = len(a)
    n = r + 1
    rows = [[0] * n for _ in range(n)]
    for j in range(r):
        rows[0][j] = a[j]
    rows[0][r] = (-1) ** r
    for k in range(1, n):
        rows[k][k - 1] = 1
    return RingMatrix(rows)


def chi(g: RingMatrix, i: int):
    """Sum of the principal i x i minors."""
    return principal_minor_sum(g, i)


def steinberg_coords(a: RingMatrix, cox: CoxeterData) -> list:
    """Recover t from an element of A (t_i is the leading i-minor)."""
    return [a.leading_minor(i) for i in range(1, cox.rank + 1)]


def in_steinberg_section(a: RingMatrix, cox: CoxeterData) -> bool:
    return steinberg_element(cox, steinberg_coords(a, cox)) == a


def check_lce(f: RingMatrix, cox: CoxeterData) -> None:
    """Raise NotInCell unless f is lower triangular, unimodular and
    Delta_{c varpi_i, varpi_i}(f) = 1 for every i."""
    if not f.is_lower_triangular():
        raise NotInCell("not lower triangular")
    if f.det() != 1:
        raise NotInCell("determinant is not 1")
    ct = cox.type
    for i in range(1, cox.rank + 1):
        w = ct.fundamental(i)
        if gen_minor_w(f, cox.c_act(w), w, i) != 1:
            raise NotInCell(f"Delta_(c varpi_{i}, varpi_{i}) != 1")


def lce_standard(beta: Sequence) -> RingMatrix:
    """Lower bidiagonal element of L^{c,e} for the standard word with
    coordinates Delta_{varpi_j, varpi_j} = beta_j."""
    r = len(beta)
    n = r + 1
    diag = [beta[0]]
    for j in range(1, r):
        diag.append(beta[j] / beta[j - 1])
    diag.append(1 / beta[r - 1] if not isinstance(beta[r - 1], LaurentPoly) else beta[r - 1] ** -1)
    rows = [[0] * n for _ in range(n)]
    for k in range(n):
        rows[k][k] = diag[k]
        if k:
            rows[k][k - 1] = 1
    return RingMatrix(rows)


def psi(f: RingMatrix, cox: CoxeterData) -> RingMatrix:
    """The unique conjugate of f in the Steinberg section.

    On A the coordinate t_i equals chi_i, so the target is read off directly
    from the characters of f and then re-checked.
    """
    check_lce(f, cox)
    t = [chi(f, i) for i in range(1, cox.rank + 1)]
    a = steinberg_element(cox, t)
    for i in range(1, cox.rank + 1):
        assert chi(a, i) == t[i - 1]
    return a


def theta_power(a: RingMatrix, i: int, k: int):
    if k == 0:
        return Fraction(1)
    return (a ** k).leading_minor(i)


def complete_homogeneous(x: Sequence, d: int):
    """h_d(x) by the standard recurrence over variables."""
    if d < 0:
        return Fraction(0)
    h = [Fraction(1)] + [Fraction(0)] * d
    for xj in x:
        for deg in range(1, d + 1):
            h[deg] = h[deg] + xj * h[deg - 1]
    return h[d]


def schur_rect_oracle(i: int, k: int, x: Sequence):
    """Rectangular Schur polynomial s_{(k^i)}(x) by Jacobi-Trudi."""
    M = [[complete_homogeneous(x, k + l - m) for m in range(i)] for l in range(i)]
    return det_of(M)


def hook_content_dim(n: int, i: int, k: int) -> Fraction:
    out = Fraction(1)
    for a in range(1, i + 1):
        for b in range(1, k + 1):
            out *= Fraction(n + b - a, b + i - a)
    return out
