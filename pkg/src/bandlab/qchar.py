"""q-characters of Kirillov-Reshetikhin modules in type A through the
symbolic discrete Miura map, plus the Y <-> minor-ratio dictionaries."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BadParity
from .exact import LaurentPoly, VarSym, sym
from .gauge import Factored, factor_ucu_raw, gauge_fix, lce_from_coords
from .matrix import RingMatrix
from .rootdata import CoxeterData, coxeter
from .slgroup import schur_rect_oracle


def standard_coxeter(n: int) -> CoxeterData:
    return coxeter(f"A{n - 1}")


def z_sym(j: int, s: int) -> VarSym:
    return sym("Z", j, s)


def y_sym(i: int, m: int) -> VarSym:
    return sym("Y", i, m)


def l_window_from_Y(n: int, s_lo: int, s_hi: int) -> dict:
    """Symbolic L^{c,e} window: l(s) has trailing minors Z[j,s]."""
    return {
        s: lce_from_coords([LaurentPoly.var(z_sym(j, s)) for j in range(1, n)])
        for s in range(s_lo, s_hi + 1)
    }


@lru_cache(maxsize=None)
def _a_window(n: int, lo: int, hi: int) -> tuple:
    cox = standard_coxeter(n)
    l = l_window_from_Y(n, lo, hi)
    factored = {}
    for s in l:
        b, x = factor_ucu_raw(l[s], cox)
        factored[s] = Factored(b, x)
    res = gauge_fix(factored, cox, lo=lo, hi=hi)
    return tuple(res.a[s] for s in range(lo, hi + 1))


def miura_a(n: int, s_from: int, s_to: int) -> dict:
    """Symbolic a(s) = H(l)(s) for s_from <= s <= s_to in Z-symbols."""
    M = standard_coxeter(n).max_m
    lo = s_from - M
    win = _a_window(n, lo, s_to)
    return {s: win[s - lo] for s in range(s_from, s_to + 1)}


def z_to_y(p: LaurentPoly, cox: CoxeterData) -> LaurentPoly:
    def ren(v: VarSym) -> VarSym:
        if v.family != "Z":
            return v
        j, s = v.indices
        return y_sym(j, 2 * (s + cox.m_of(j)) + 1 - cox.xi_of(j))

    return p.rename(ren)


@dataclass(frozen=True)
class QCharacter:
    poly: LaurentPoly
    n: int
    i: int
    k: int
    s: int

    @property
    def cox(self) -> CoxeterData:
        return standard_coxeter(self.n)

    def header(self) -> dict:
        c = self.cox
        return {"type": str(c.type), "coxeter": list(c.word), "i": self.i, "k": self.k, "s": self.s,
                "spectral": 2 * self.s + 1 - c.xi_of(self.i)}

    def dim(self) -> Fraction:
        return self.poly.eval({v: 1 for v in self.poly.variables()})


def theta_symbolic(n: int, i: int, k: int, s: int) -> LaurentPoly:
    """theta^{(s)}_{i,k} of the Miura image, in Z-symbols."""
    if k == 0:
        return LaurentPoly.one()
    a = miura_a(n, s, s + k - 1)
    prod = RingMatrix.identity(n)
    for t in range(s, s + k):
        prod = prod @ a[t]
    val = prod.leading_minor(i)
    return val if isinstance(val, LaurentPoly) else LaurentPoly.const(val)


def qchar_kr(n: int, i: int, k: int, s: int) -> QCharacter:
    cox = standard_coxeter(n)
    return QCharacter(z_to_y(theta_symbolic(n, i, k, s), cox), n, i, k, s)


def highest_monomial(cox: CoxeterData, i: int, k: int, s: int) -> LaurentPoly:
    base = 2 * s + 1 - cox.xi_of(i)
    return LaurentPoly.monomial({y_sym(i, base + 2 * t): 1 for t in range(k)})


def dominant_monomials(p: LaurentPoly) -> list[LaurentPoly]:
    return [LaurentPoly({mono: c}) for mono, c in p.items() if all(e > 0 for _, e in mono)]


def check_qchar(q: QCharacter) -> dict:
    """Positivity, dimension and highest-monomial checks."""
    from .slgroup import hook_content_dim

    cox = q.cox
    coeffs = q.poly.coefficients()
    hw = highest_monomial(cox, q.i, q.k, q.s)
    dom = dominant_monomials(q.poly)
    return {
        "positive": all(c > 0 and c.denominator == 1 for c in coeffs),
        "dimension": q.dim() == hook_content_dim(q.n, q.i, q.k),
        "highest": dom == [hw],
    }


def shift_y(p: LaurentPoly, by: int) -> LaurentPoly:
    return p.rename(lambda v: y_sym(v.indices[0], v.indices[1] + by) if v.family == "Y" else v)


def tsystem_check(n: int, i: int, k: int, s: int) -> bool:
    cox = standard_coxeter(n)

    def W(j, kk, ss):
        return qchar_kr(n, j, kk, ss).poly if kk else LaurentPoly.one()

    lhs = W(i, k, s) * W(i, k, s + 1)
    rhs = W(i, k + 1, s) * W(i, k - 1, s + 1)
    prod = LaurentPoly.one()
    for j in cox.type.neighbors(i):
        prod = prod * W(j, k, s + cox.a_of(i, j))
    return lhs == rhs + prod


# --------------------------------------------------------------------------
# Y <-> minor ratios


def d_sym(i: int, s: int) -> VarSym:
    """Delta^{(s)}_{varpi_i, varpi_i}."""
    return sym("D", i, s)


def dm_sym(i: int, s: int) -> VarSym:
    """Delta^{(s)}_{w0 varpi_i, w0 varpi_i}."""
    return sym("Dm", i, s)


def _y_slot(cox: CoxeterData, v: VarSym) -> tuple[int, int]:
    i, p = v.indices
    if (p - 1 + cox.xi_of(i)) % 2:
        raise BadParity(f"{v}: index {p} has the wrong parity for node {i}")
    return i, (p - 1 + cox.xi_of(i)) // 2


def baxter_expand(q: QCharacter | LaurentPoly, side: str = "U", cox: CoxeterData | None = None) -> LaurentPoly:
    """Replace each Y by the matching ratio of consecutive minors.

    side "U":  Y[i, 2s+1-xi_i] -> D[i,s] / D[i,s+1]
    side "U-": Y[i, 2(s+m_i)+1-xi_i] -> Dm[i,s] / Dm[i,s+1]
    """
    if isinstance(q, QCharacter):
        cox, poly = q.cox, q.poly
    else:
        poly = q
    images = {}
    for v in poly.variables():
        if v.family != "Y":
            continue
        i, s = _y_slot(cox, v)
        if side == "U":
            images[v] = LaurentPoly.monomial({d_sym(i, s): 1, d_sym(i, s + 1): -1})
        elif side in ("U-", "u-", "Uminus"):
            t = s - cox.m_of(i)
            images[v] = LaurentPoly.monomial({dm_sym(i, t): 1, dm_sym(i, t + 1): -1})
        else:
            raise ValueError(f"unknown side {side!r}")
    return poly.substitute(images)


def ratio_only(p: LaurentPoly) -> bool:
    """Every monomial has, for each node, total exponent 0 over all minor
    symbols of that node."""
    for mono, _ in p.items():
        tot: dict = {}
        for v, e in mono:
            if v.family in ("D", "Dm"):
                key = (v.family, v.indices[0])
                tot[key] = tot.get(key, 0) + e
        if any(tot.values()):
            return False
    return True


def eval_on_band(expr: LaurentPoly, band) -> Fraction:
    """Evaluate a D/Dm expression with the minors of an actual band."""
    vals = {}
    for v in expr.variables():
        i, s = v.indices
        g = band.at(s)
        if v.family == "D":
            vals[v] = g.leading_minor(i)
        elif v.family == "Dm":
            vals[v] = g.trailing_minor(i)
        else:
            raise ValueError(f"cannot evaluate {v} on a band")
    return expr.eval(vals)


# --------------------------------------------------------------------------
# classical specialization


def classical_specialize(q: QCharacter | LaurentPoly) -> LaurentPoly:
    poly = q.poly if isinstance(q, QCharacter) else q
    return poly.rename(lambda v: sym("y", v.indices[0]) if v.family == "Y" else v)


def y_from_x(x) -> dict:
    """y_j = x_1 ... x_j."""
    out = {}
    acc = Fraction(1)
    for j, xj in enumerate(x[:-1], 1):
        acc *= xj
        out[sym("y", j)] = acc
    return out


def classical_vs_schur(q: QCharacter, x) -> tuple[Fraction, Fraction]:
    spec = classical_specialize(q)
    return spec.eval(y_from_x(x)), schur_rect_oracle(q.i, q.k, x)
