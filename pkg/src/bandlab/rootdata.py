"""Simply-laced Cartan data and Coxeter-element invariants.

Weights are integer tuples in the basis of fundamental weights; node indices
are 1-based everywhere in the public API.  Dynkin labels follow Bourbaki.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import IndexOutOfRange, InvalidWord, TypeNotSupported

Weight = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        ok = (
            (self.series == "A" and self.rank >= 1)
            or (self.series == "D" and self.rank >= 4)
            or (self.series == "E" and self.rank in (6, 7, 8))
        )
        if not ok:
            raise TypeNotSupported(f"unsupported Cartan type {self.series}{self.rank}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        m = re.fullmatch(r"\s*([ADEade])\s*(\d+)\s*", text)
        if m is None:
            raise TypeNotSupported(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        r = self.rank
        if self.series == "A":
            es = [(i, i + 1) for i in range(1, r)]
        elif self.series == "D":
            es = [(i, i + 1) for i in range(1, r - 1)] + [(r - 2, r)]
        else:
            es = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
            es = [(a, b) for a, b in es if b <= r]
        return tuple(sorted(es))

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        r = self.rank
        C = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
        for a, b in self.edges:
            C[a - 1][b - 1] = C[b - 1][a - 1] = -1
        return tuple(tuple(row) for row in C)

    def c(self, i: int, j: int) -> int:
        return self.cartan[i - 1][j - 1]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(1, self.rank + 1) if j != i and self.c(i, j) == -1]

    def check_node(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.rank):
            raise IndexOutOfRange(f"node {i} outside [1, {self.rank}]")

    def fundamental(self, i: int) -> Weight:
        self.check_node(i)
        return tuple(1 if j == i else 0 for j in range(1, self.rank + 1))

    def simple_root(self, i: int) -> Weight:
        """alpha_i written in the fundamental-weight basis (row i of C)."""
        self.check_node(i)
        return self.cartan[i - 1]

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots in the simple-root basis."""
        r = self.rank
        C = self.cartan
        simple = [tuple(1 if k == j else 0 for k in range(r)) for j in range(r)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(r):
                    pair = sum(beta[j] * C[j][i] for j in range(r))
                    gamma = tuple(beta[k] - (pair if k == i else 0) for k in range(r))
                    if gamma not in seen:
                        seen.add(gamma)
                        nxt.append(gamma)
            frontier = nxt
        return tuple(sorted(b for b in seen if all(x >= 0 for x in b)))

    @cached_property
    def coxeter_number(self) -> int:
        return 2 * len(self.positive_roots) // self.rank

    @cached_property
    def nu(self) -> tuple[int, ...]:
        """nu[i-1] = j with w0(varpi_i) = -varpi_j."""
        out = []
        for i in range(1, self.rank + 1):
            lam = tuple(-x for x in self.fundamental(i))
            dom, _ = self.make_dominant(lam)
            j = dom.index(1) + 1
            assert dom == self.fundamental(j)
            out.append(j)
        return tuple(out)

    def make_dominant(self, lam: Weight) -> tuple[Weight, list[int]]:
        """Reflect lam into the dominant chamber.

        Returns ``(dominant, word)`` where ``lam = weyl_act(word, dominant)``
        and ``word`` is built greedily from the smallest negative coordinate.
        """
        lam = tuple(lam)
        applied = []
        while True:
            neg = [j for j, x in enumerate(lam, 1) if x < 0]
            if not neg:
                break
            j = neg[0]
            lam = simple_reflect(self, j, lam)
            applied.append(j)
        return lam, applied


def simple_reflect(ct: CartanType, i: int, lam: Sequence[int]) -> Weight:
    ct.check_node(i)
    if len(lam) != ct.rank:
        raise IndexOutOfRange("weight has wrong length")
    k = lam[i - 1]
    if k == 0:
        return tuple(lam)
    row = ct.cartan[i - 1]
    return tuple(x - k * a for x, a in zip(lam, row))


def weyl_act(ct: CartanType, word: Sequence[int], lam: Sequence[int]) -> Weight:
    """Apply ``s_{w1} s_{w2} ... s_{wm}`` to lam (rightmost letter first)."""
    out = tuple(lam)
    for j in reversed(list(word)):
        out = simple_reflect(ct, j, out)
    return out


def minimal_word(ct: CartanType, gamma: Sequence[int], i: int) -> list[int]:
    """Canonical reduced word ``w`` with ``w(varpi_i) = gamma``."""
    dom, applied = ct.make_dominant(gamma)
    if dom != ct.fundamental(i):
        raise InvalidWord(f"{tuple(gamma)} is not in the W-orbit of varpi_{i}")
    # gamma = s_{j_m} ... s_{j_1} applied backwards, i.e. gamma = s_{j1} ... s_{jm} dom
    return applied


@dataclass(frozen=True)
class CoxeterData:
    """A Coxeter element ``c = s_{w1} ... s_{wr}`` and its derived invariants."""

    type: CartanType
    word: tuple[int, ...]
    xi: tuple[int, ...]
    m: tuple[int, ...]
    a: tuple[tuple[int, ...], ...]
    b: tuple[tuple[int, ...], ...]
    nu: tuple[int, ...]
    h: int
    dual_word: tuple[int, ...]
    orbit: tuple[tuple[Weight, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def max_m(self) -> int:
        return max(self.m)

    def xi_of(self, i: int) -> int:
        return self.xi[i - 1]

    def m_of(self, i: int) -> int:
        return self.m[i - 1]

    def a_of(self, i: int, j: int) -> int:
        return self.a[i - 1][j - 1]

    def b_of(self, i: int, j: int) -> int:
        return self.b[i - 1][j - 1]

    def c_act(self, lam: Sequence[int], k: int = 1) -> Weight:
        word = self.word if k >= 0 else tuple(reversed(self.word))
        for _ in range(abs(k)):
            lam = weyl_act(self.type, word, lam)
        return tuple(lam)

    def dual_act(self, lam: Sequence[int], k: int = 1) -> Weight:
        word = self.dual_word if k >= 0 else tuple(reversed(self.dual_word))
        for _ in range(abs(k)):
            lam = weyl_act(self.type, word, lam)
        return tuple(lam)

    def c_power_word(self, k: int) -> list[int]:
        return list(self.word) * k

    def dual_power_word(self, k: int) -> list[int]:
        return list(self.dual_word) * k

    def num_positive_roots(self) -> int:
        return len(self.type.positive_roots)

    def to_json_obj(self) -> dict:
        return {
            "type": str(self.type),
            "word": list(self.word),
            "xi": list(self.xi),
            "m": list(self.m),
            "a": [list(r) for r in self.a],
            "b": [list(r) for r in self.b],
            "nu": list(self.nu),
            "h": self.h,
            "dual_word": list(self.dual_word),
            "orbit": {
                str(i): [list(w) for w in self.orbit[i - 1]] for i in range(1, self.rank + 1)
            },
        }


def _precedes_matrix(ct: CartanType, word: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    pos = {j: p for p, j in enumerate(word)}
    r = ct.rank
    return tuple(
        tuple(1 if ct.c(i, j) == -1 and pos[j] < pos[i] else 0 for j in range(1, r + 1))
        for i in range(1, r + 1)
    )


def _height_function(ct: CartanType, word: Sequence[int]) -> dict[int, int]:
    """xi with xi_i = xi_j - 1 whenever j is adjacent to i and precedes it.

    The Dynkin diagram is a tree so the differences fix xi up to a constant;
    we normalize to max xi = 0, which makes every source of the orientation 0
    whenever that is possible (it agrees with the one-pass rule in that case).
    """
    pos = {j: p for p, j in enumerate(word)}
    xi = {word[0]: 0}
    stack = [word[0]]
    while stack:
        i = stack.pop()
        for j in ct.neighbors(i):
            if j not in xi:
                xi[j] = xi[i] - 1 if pos[i] < pos[j] else xi[i] + 1
                stack.append(j)
    top = max(xi.values())
    return {i: x - top for i, x in xi.items()}


def build_coxeter(ct: CartanType, word: Sequence[int]) -> CoxeterData:
    word = tuple(int(x) for x in word)
    r = ct.rank
    if sorted(word) != list(range(1, r + 1)):
        raise InvalidWord(f"{word} is not a permutation of 1..{r}")

    xi = _height_function(ct, word)

    nu = ct.nu
    dual = tuple(nu[j - 1] for j in reversed(word))
    # sanity: dual word acts as w0 c^{-1} w0
    inv = tuple(reversed(word))
    for i in range(1, r + 1):
        lam = ct.fundamental(i)
        w0lam = tuple(-x for x in ct.fundamental(nu[i - 1]))  # w0 varpi_i
        # w0 c^{-1} w0 (varpi_i): w0 acts as lam -> -nu(lam)
        step = weyl_act(ct, inv, w0lam)
        expect = _w0(ct, step)
        assert weyl_act(ct, dual, lam) == expect

    m = []
    orbit = []
    for i in range(1, r + 1):
        target = tuple(-x for x in ct.fundamental(nu[i - 1]))
        lam = ct.fundamental(i)
        seq = [lam]
        k = 0
        while lam != target:
            lam = weyl_act(ct, word, lam)
            seq.append(lam)
            k += 1
            if k > 2 * ct.coxeter_number:
                raise AssertionError("c-orbit did not reach w0 varpi_i")
        m.append(k)
        orbit.append(tuple(seq))

    return CoxeterData(
        type=ct,
        word=word,
        xi=tuple(xi[i] for i in range(1, r + 1)),
        m=tuple(m),
        a=_precedes_matrix(ct, word),
        b=_precedes_matrix(ct, dual),
        nu=nu,
        h=ct.coxeter_number,
        dual_word=dual,
        orbit=tuple(orbit),
    )


def _w0(ct: CartanType, lam: Sequence[int]) -> Weight:
    # w0 acts on weights by lam -> -nu(lam)
    out = [0] * ct.rank
    for i, x in enumerate(lam, 1):
        out[ct.nu[i - 1] - 1] -= x
    return tuple(out)


def coxeter(type_text: str, word: Sequence[int] | str | None = None) -> CoxeterData:
    """Convenience constructor; default word is ``s_1 s_2 ... s_r``."""
    ct = CartanType.parse(type_text)
    if word is None:
        word = range(1, ct.rank + 1)
    elif isinstance(word, str):
        word = [int(x) for x in word.replace(" ", "").split(",") if x]
    return build_coxeter(ct, word)


def all_coxeter_words(ct: CartanType) -> list[tuple[int, ...]]:
    """One word per Coxeter element (words differing by commutations are merged)."""
    seen = {}
    for perm in itertools.permutations(range(1, ct.rank + 1)):
        key = _precedes_matrix(ct, perm)
        seen.setdefault(key, perm)
    return sorted(seen.values())
