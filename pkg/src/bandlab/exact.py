"""Exact scalars and sparse multivariate Laurent polynomials.

Coefficients are :class:`fractions.Fraction`.  A :class:`LaurentPoly` is an
immutable map from monomials to nonzero coefficients, where a monomial is a
tuple of ``(VarSym, exponent)`` pairs sorted by variable with no zero
exponents.  Two equal polynomials therefore always have identical term maps.
"""
from __future__ import annotations

import contextlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from .errors import InexactDivision, ZeroToNegativePower

Rational = Fraction

__all__ = [
    "Rational",
    "VarSym",
    "sym",
    "LaurentPoly",
    "Monomial",
    "exact_div",
    "divide",
    "is_unit",
    "division_stats",
    "track_divisions",
    "to_ring",
]


class VarSym(NamedTuple):
    """A variable symbol ``family[i,j,...]``.

    Ordering is lexicographic on ``(family, indices)``, which fixes the
    canonical monomial order used for printing and long division.
    """

    family: str
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.family}[{','.join(str(i) for i in self.indices)}]"

    @classmethod
    def parse(cls, text: str) -> "VarSym":
        m = _VARSYM_RE.fullmatch(text.strip())
        if m is None:
            raise ValueError(f"bad variable symbol {text!r}")
        body = m.group(2).strip()
        idx = tuple(int(p) for p in body.split(",")) if body else ()
        return cls(m.group(1), idx)


def sym(family: str, *indices: int) -> VarSym:
    return VarSym(family, tuple(indices))


_VARSYM_RE = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)\[([-0-9, ]*)\]")

Monomial = tuple  # tuple[tuple[VarSym, int], ...]
Scalar = Union[int, Fraction]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    # merge of two sorted sequences
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            e = ea + eb
            if e:
                out.append((va, e))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def _mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ()
    return tuple((v, e * k) for v, e in a)


def _mono_from_dict(exps: Mapping[VarSym, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in exps.items() if e))


class LaurentPoly:
    """Sparse Laurent polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = coeff if type(coeff) is Fraction else Fraction(coeff)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        return cls._raw({(): Fraction(c)} if c else {})

    @classmethod
    def var(cls, v: VarSym, exp: int = 1) -> "LaurentPoly":
        if exp == 0:
            return cls.const(1)
        return cls._raw({((v, exp),): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Mapping[VarSym, int], coeff: Scalar = 1) -> "LaurentPoly":
        return cls._raw({_mono_from_dict(exps): Fraction(coeff)} if coeff else {})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({(): Fraction(1)})

    # inspection ---------------------------------------------------------
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self._terms.get((), Fraction(0))

    def variables(self) -> set[VarSym]:
        return {v for mono in self._terms for v, _ in mono}

    def exponents(self, v: VarSym) -> list[int]:
        return [dict(mono).get(v, 0) for mono in self._terms]

    def coefficients(self) -> list[Fraction]:
        return [c for _, c in self.items()]

    def check_canonical(self) -> None:
        for mono, c in self._terms.items():
            assert c != 0 and type(c) is Fraction
            assert all(e != 0 for _, e in mono)
            assert list(mono) == sorted(mono) and len({v for v, _ in mono}) == len(mono)

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        out = dict(self._terms)
        for mono, c in o._terms.items():
            s = out.get(mono)
            if s is None:
                out[mono] = c
            else:
                s += c
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly.zero()
            f = Fraction(other)
            return LaurentPoly._raw({m: c * f for m, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly.zero()
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                s = get(m)
                out[m] = ca * cb if s is None else s + ca * cb
        return LaurentPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise InexactDivision("only monomials are invertible")
            (mono, c), = self._terms.items()
            return LaurentPoly._raw({_mono_pow(mono, k): c ** k})
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        return divide(self, other)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return divide(o, self)

    # comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return len(self._terms) == 1 and self._terms.get(()) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation and substitution ---------------------------------------
    def eval(self, assignment: Mapping[VarSym, Scalar]) -> Fraction:
        """Exact value of the polynomial at a rational point."""
        total = Fraction(0)
        for mono, c in self._terms.items():
            val = c
            for v, e in mono:
                try:
                    x = assignment[v]
                except KeyError:
                    raise KeyError(f"no value assigned to {v}") from None
                if x == 0:
                    if e < 0:
                        raise ZeroToNegativePower(f"{v} = 0 raised to {e}")
                    val = Fraction(0)
                    break
                val *= Fraction(x) ** e
            total += val
        return total

    def rename(self, f) -> "LaurentPoly":
        """Apply a variable renaming ``f: VarSym -> VarSym`` (must be injective on
        the support, otherwise terms are collected)."""
        out: dict = {}
        for mono, c in self._terms.items():
            acc: dict = {}
            for v, e in mono:
                w = f(v)
                acc[w] = acc.get(w, 0) + e
            m = _mono_from_dict(acc)
            out[m] = out.get(m, 0) + c
        return LaurentPoly(out)

    def substitute(self, images: Mapping[VarSym, "LaurentPoly"]) -> "LaurentPoly":
        """Ring homomorphism sending each listed variable to a Laurent polynomial.

        Variables raised to negative powers must map to monomials.
        """
        cache: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in cache:
                img = images.get(v)
                if img is None:
                    cache[key] = LaurentPoly.var(v, e)
                else:
                    cache[key] = img ** e
            return cache[key]

        total = LaurentPoly.zero()
        for mono, c in self._terms.items():
            term = LaurentPoly.const(c)
            for v, e in mono:
                term = term * power(v, e)
            total = total + term
        return total

    # fraction view --------------------------------------------------------
    def as_fraction(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Return ``(numerator, denominator)`` with a polynomial numerator and a
        monomial denominator, numerator not divisible by any variable."""
        low: dict = {}
        for mono in self._terms:
            for v, e in mono:
                low[v] = min(low.get(v, 0), e)
        for v in self.variables():
            low.setdefault(v, 0)
        for mono in self._terms:
            d = dict(mono)
            for v in low:
                low[v] = min(low[v], d.get(v, 0))
        den = LaurentPoly.monomial({v: -e for v, e in low.items() if e < 0})
        shift = LaurentPoly.monomial({v: -e for v, e in low.items() if e})
        return self * shift, den

    # output ---------------------------------------------------------------
    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.items():
            mono_s = "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in mono)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono_s)
            elif c == -1:
                parts.append("-" + mono_s)
            else:
                parts.append(f"{c}*{mono_s}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json_obj(self) -> list[dict]:
        return [
            {
                "coeff": f"{c.numerator}/{c.denominator}",
                "exps": {str(v): e for v, e in mono},
            }
            for mono, c in self.items()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Iterable[Mapping]) -> "LaurentPoly":
        terms: dict = {}
        for entry in obj:
            coeff = Fraction(entry["coeff"])
            mono = _mono_from_dict({VarSym.parse(k): int(e) for k, e in entry["exps"].items()})
            terms[mono] = terms.get(mono, 0) + coeff
        return cls(terms)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``: terms like ``-3/2*Y[1,3]^-1*Y[2,2]`` joined by + and -."""
        terms, cur, depth, prev = [], "", 0, ""
        for ch in text:
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            if ch in "+-" and depth == 0 and prev not in ("^", "*", ""):
                terms.append(cur)
                cur = ""
            if not ch.isspace():
                cur += ch
                prev = ch
        terms.append(cur)
        out = cls.zero()
        for t in terms:
            if not t or t == "+":
                raise ValueError(f"bad polynomial {text!r}")
            neg = t[0] == "-"
            term = cls.const(-1 if neg else 1)
            for factor in t.lstrip("+-").split("*"):
                if _VARSYM_RE.match(factor):
                    name, _, exp = factor.partition("^")
                    term = term * cls.var(VarSym.parse(name), int(exp) if exp else 1)
                else:
                    term = term * Fraction(factor)
            out = out + term
        return out

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(text))


# ---------------------------------------------------------------------------
# division


@dataclass
class DivisionStats:
    attempted: int = 0
    succeeded: int = 0
    failed: int = 0


_STATS = DivisionStats()


def division_stats() -> DivisionStats:
    """Process-wide counters of :func:`exact_div` calls."""
    return _STATS


@contextlib.contextmanager
def track_divisions() -> Iterator[DivisionStats]:
    """Count exact divisions performed inside the block."""
    global _STATS
    outer = _STATS
    local = DivisionStats()
    _STATS = local
    try:
        yield local
    finally:
        _STATS = outer
        outer.attempted += local.attempted
        outer.succeeded += local.succeeded
        outer.failed += local.failed


def exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * d == p`` or raise :class:`InexactDivision`."""
    p = LaurentPoly._coerce(p)
    d = LaurentPoly._coerce(d)
    if d is None or p is None:
        raise TypeError("exact_div expects Laurent polynomials")
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    _STATS.attempted += 1
    try:
        q = _exact_div(p, d)
    except InexactDivision:
        _STATS.failed += 1
        raise
    _STATS.succeeded += 1
    return q


def _exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    if p.is_zero():
        return p
    if d.is_monomial():
        (mono, c), = d._terms.items()
        inv = _mono_pow(mono, -1)
        return LaurentPoly._raw({_mono_mul(m, inv): a / c for m, a in p._terms.items()})

    variables = sorted(p.variables() | d.variables())
    pos = {v: k for k, v in enumerate(variables)}
    nv = len(variables)

    def dense(poly):
        out = {}
        for mono, c in poly._terms.items():
            vec = [0] * nv
            for v, e in mono:
                vec[pos[v]] = e
            out[tuple(vec)] = c
        return out

    pd, dd = dense(p), dense(d)
    pmin = [min(vec[k] for vec in pd) for k in range(nv)]
    dmin = [min(vec[k] for vec in dd) for k in range(nv)]
    rem = {tuple(e - m for e, m in zip(vec, pmin)): c for vec, c in pd.items()}
    div = {tuple(e - m for e, m in zip(vec, dmin)): c for vec, c in dd.items()}
    # lex order with the first variable most significant
    lead = max(div)
    lead_c = div[lead]
    quot: dict = {}
    while rem:
        lt = max(rem)
        shift = tuple(a - b for a, b in zip(lt, lead))
        if any(s < 0 for s in shift):
            raise InexactDivision("divisor does not divide dividend")
        coef = rem[lt] / lead_c
        quot[shift] = coef
        for vec, c in div.items():
            key = tuple(a + b for a, b in zip(vec, shift))
            val = rem.get(key, 0) - coef * c
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)
    offset = [a - b for a, b in zip(pmin, dmin)]
    out = {}
    for vec, c in quot.items():
        mono = tuple((variables[k], e + o) for k, (e, o) in enumerate(zip(vec, offset)) if e + o)
        out[mono] = c
    return LaurentPoly._raw(out)


def is_unit(x) -> bool:
    """True for nonzero rationals and nonzero Laurent monomials."""
    if isinstance(x, LaurentPoly):
        return x.is_monomial()
    return x != 0


def to_ring(x):
    """Normalize ints to Fractions; leave ring elements untouched."""
    if isinstance(x, int):
        return Fraction(x)
    return x


def divide(a, b):
    """Exact quotient in whichever ring ``a`` and ``b`` live in."""
    if isinstance(a, LaurentPoly) or isinstance(b, LaurentPoly):
        return exact_div(LaurentPoly._coerce(a), LaurentPoly._coerce(b))
    return Fraction(a) / Fraction(b)
