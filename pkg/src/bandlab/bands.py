"""Finite windows of (SL(n), c)-bands and their coordinate functions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, WindowExceeded
from .matrix import RingMatrix
from .rootdata import CoxeterData
from .slgroup import (
    chevalley,
    gen_minor,
    gen_minor_w,
    in_steinberg_section,
    steinberg_coords,
    steinberg_element,
)


@dataclass
class BandWindow:
    """g(s) for s_min <= s <= s_max, with g(s) g(s+1)^{-1} in A."""

    n: int
    cox: CoxeterData
    s_min: int
    s_max: int
    g: dict = field(repr=False)

    def at(self, s: int) -> RingMatrix:
        if not (self.s_min <= s <= self.s_max):
            raise WindowExceeded(f"s={s} outside window [{self.s_min}, {self.s_max}]")
        return self.g[s]

    def a(self, s: int) -> RingMatrix:
        return self.at(s) @ self.at(s + 1).inverse()

    def a_coords(self, s: int) -> list:
        return steinberg_coords(self.a(s), self.cox)

    def validate(self) -> None:
        for s in range(self.s_min, self.s_max + 1):
            assert self.g[s].det() == 1, f"g({s}) is not unimodular"
        for s in range(self.s_min, self.s_max):
            assert in_steinberg_section(self.a(s), self.cox), f"a({s}) not in A"

    def right_translate(self, h: RingMatrix) -> "BandWindow":
        return BandWindow(self.n, self.cox, self.s_min, self.s_max,
                          {s: m @ h for s, m in self.g.items()})

    def rows(self) -> list[list]:
        """Array-model rows: row s is the first row of g(s), extended by the
        last rows of g(s_max)."""
        out = [list(self.g[s].rows[0]) for s in range(self.s_min, self.s_max + 1)]
        out.extend(list(r) for r in self.g[self.s_max].rows[1:])
        return out

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "coxeter": list(self.cox.word),
            "window": [self.s_min, self.s_max],
            "g": {str(s): self.g[s].to_json_obj() for s in sorted(self.g)},
        }


def band_from(g0: RingMatrix, cox: CoxeterData, a: Mapping[int, RingMatrix | Sequence],
              s_min: int, s_max: int) -> BandWindow:
    """The band with g(0) = g0 and g(s) g(s+1)^{-1} = a(s) on the window.

    ``a`` maps s to either an A-matrix or its coordinate vector t.
    """
    n = cox.rank + 1
    if g0.n != n:
        raise DimensionMismatch("g0 has the wrong size")
    if not (s_min <= 0 <= s_max):
        raise WindowExceeded("window must contain 0")

    def mat(s):
        if s not in a:
            raise WindowExceeded(f"a({s}) not supplied")
        v = a[s]
        return v if isinstance(v, RingMatrix) else steinberg_element(cox, v)

    g = {0: g0}
    for s in range(0, s_max):
        g[s + 1] = mat(s).inverse() @ g[s]
    for s in range(0, s_min, -1):
        g[s - 1] = mat(s - 1) @ g[s]
    return BandWindow(n, cox, s_min, s_max, g)


def theta_sik(b: BandWindow, s: int, i: int, k: int):
    """Leading i-minor of g(s) g(s+k)^{-1}."""
    if k == 0:
        b.at(s)
        return Fraction(1)
    return (b.at(s) @ b.at(s + k).inverse()).leading_minor(i)


def delta_s(b: BandWindow, s: int, u: Sequence[int], v: Sequence[int], i: int):
    return gen_minor(b.at(s), u, v, i)


def delta_s_w(b: BandWindow, s: int, gamma, delta, i: int):
    """Same as :func:`delta_s` with the two weights given directly."""
    return gen_minor_w(b.at(s), gamma, delta, i)


# --------------------------------------------------------------------------
# random inputs


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def random_rational(rng: np.random.Generator, height: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        num = int(rng.integers(-height, height + 1))
        den = int(rng.integers(1, height + 1))
        if num or not nonzero:
            return Fraction(num, den)


def random_unimodular(n: int, rng: np.random.Generator, height: int = 5) -> RingMatrix:
    """Product of at most 3n random Chevalley generators."""
    g = RingMatrix.identity(n)
    for _ in range(int(rng.integers(1, 3 * n + 1))):
        i = int(rng.integers(1, n))
        sign = 1 if rng.integers(0, 2) else -1
        g = g @ chevalley(n, i, random_rational(rng, height), sign)
    return g


def random_upper_unitriangular(n: int, rng: np.random.Generator, height: int = 5) -> RingMatrix:
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = random_rational(rng, height)
    return RingMatrix(rows)


def random_band(n: int, cox: CoxeterData, s_min: int, s_max: int, seed: int,
                height: int = 5, require_omega: bool = False, require_generic: bool = False,
                tries: int = 200) -> BandWindow:
    """Seeded random band; with ``require_omega`` every g(s) admits a twisted
    Birkhoff decomposition (all trailing principal minors nonzero), and
    ``require_generic`` also asks for nonzero leading principal minors."""
    rng = make_rng(seed)
    strict = require_omega or require_generic
    for _ in range(tries):
        if strict:
            g0 = random_upper_unitriangular(n, rng, height).transpose() @ random_upper_unitriangular(n, rng, height)
        else:
            g0 = random_unimodular(n, rng, height)
        a = {s: [random_rational(rng, height, nonzero=strict) for _ in range(cox.rank)]
             for s in range(s_min, s_max)}
        band = band_from(g0, cox, a, s_min, s_max)
        window = range(s_min, s_max + 1)
        if strict:
            if any(band.g[s].trailing_minor(i) == 0 for s in window for i in range(1, n)):
                continue
        if require_generic:
            if any(band.g[s].leading_minor(i) == 0 for s in window for i in range(1, n)):
                continue
        return band
    raise RuntimeError(f"no suitable band after {tries} draws")
