"""Labelled quivers, seeds, mutation, and the Theta / Xi / Gamma builders.

Vertex ids are short strings: ``"i,k"`` for Theta, ``"i,s"`` for Xi and
Gamma, with ``"i,s'"`` (red) and ``"i,s''"`` (green) for the split vertices
of Gamma.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import FrozenVertex
from .exact import LaurentPoly, exact_div, sym
from .rootdata import CoxeterData


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: Mapping[tuple[str, str], int]
    frozen: frozenset = frozenset()
    labels: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def build(cls, vertices: Iterable[str], arrows: Iterable[tuple[str, str]],
              frozen: Iterable[str] = (), labels: Mapping[str, str] | None = None) -> "Quiver":
        verts = tuple(vertices)
        frozen = frozenset(frozen)
        b: dict = {}
        for u, v in arrows:
            b[(u, v)] = b.get((u, v), 0) + 1
        return cls(verts, _canonical(b, frozen), frozen, dict(labels or {}))

    def exchange(self) -> dict:
        """Skew-symmetric exchange matrix as a dict."""
        out = {}
        for (u, v), k in self.arrows.items():
            out[(u, v)] = out.get((u, v), 0) + k
            out[(v, u)] = out.get((v, u), 0) - k
        return out

    def incoming(self, v: str) -> list[tuple[str, int]]:
        return sorted((u, k) for (u, w), k in self.arrows.items() if w == v)

    def outgoing(self, v: str) -> list[tuple[str, int]]:
        return sorted((w, k) for (u, w), k in self.arrows.items() if u == v)

    def mutate(self, k: str) -> "Quiver":
        if k in self.frozen:
            raise FrozenVertex(f"vertex {k} is frozen")
        b = dict(self.arrows)
        ins = self.incoming(k)
        outs = self.outgoing(k)
        new: dict = {}
        for (u, v), m in b.items():
            if u == k:
                new[(v, u)] = new.get((v, u), 0) + m
            elif v == k:
                new[(v, u)] = new.get((v, u), 0) + m
            else:
                new[(u, v)] = new.get((u, v), 0) + m
        for i, a in ins:
            for j, c in outs:
                new[(i, j)] = new.get((i, j), 0) + a * c
        return Quiver(self.vertices, _canonical(new, self.frozen), self.frozen, self.labels)

    def restrict(self, keep: Iterable[str]) -> "Quiver":
        keep = [v for v in self.vertices if v in set(keep)]
        ks = set(keep)
        arrows = {e: m for e, m in self.arrows.items() if e[0] in ks and e[1] in ks}
        return Quiver(tuple(keep), arrows, self.frozen & ks,
                      {v: l for v, l in self.labels.items() if v in ks})

    def relabel(self, labels: Mapping[str, str]) -> "Quiver":
        return Quiver(self.vertices, self.arrows, self.frozen, dict(labels))

    def with_frozen(self, frozen: Iterable[str]) -> "Quiver":
        frozen = frozenset(frozen)
        return Quiver(self.vertices, _canonical(dict(self.arrows), frozen), frozen, self.labels)

    def arrow_count(self) -> int:
        return sum(self.arrows.values())

    # serialization --------------------------------------------------------
    def to_text(self, header: str = "") -> str:
        lines = [f"# {h}" for h in header.splitlines()] if header else []
        for v in sorted(self.vertices, key=vertex_key):
            flag = " frozen" if v in self.frozen else ""
            lines.append(f"vertex {v} {self.labels.get(v, '-')}{flag}")
        for (u, v) in sorted(self.arrows, key=lambda e: (vertex_key(e[0]), vertex_key(e[1]))):
            lines.append(f"arrow {u} {v} {self.arrows[(u, v)]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Quiver":
        verts, labels, frozen, arrows = [], {}, set(), {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "vertex":
                v = parts[1]
                verts.append(v)
                if parts[2] != "-":
                    labels[v] = parts[2]
                if len(parts) > 3 and parts[3] == "frozen":
                    frozen.add(v)
            elif parts[0] == "arrow":
                arrows[(parts[1], parts[2])] = int(parts[3])
            else:
                raise ValueError(f"bad quiver line {raw!r}")
        return cls(tuple(verts), arrows, frozenset(frozen), labels)

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {name} {{"]
        for v in sorted(self.vertices, key=vertex_key):
            attrs = [f'label="{self.labels.get(v, v)}"']
            if v in self.frozen:
                attrs.append("shape=box")
            lines.append(f'  "{v}" [{", ".join(attrs)}];')
        for (u, v) in sorted(self.arrows, key=lambda e: (vertex_key(e[0]), vertex_key(e[1]))):
            for _ in range(self.arrows[(u, v)]):
                lines.append(f'  "{u}" -> "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dot(cls, text: str) -> "Quiver":
        verts, labels, frozen, arrows = [], {}, set(), {}
        node_re = re.compile(r'^\s*"([^"]+)"\s*\[(.*)\];\s*$')
        edge_re = re.compile(r'^\s*"([^"]+)"\s*->\s*"([^"]+)";\s*$')
        for line in text.splitlines():
            m = edge_re.match(line)
            if m:
                e = (m.group(1), m.group(2))
                arrows[e] = arrows.get(e, 0) + 1
                continue
            m = node_re.match(line)
            if m:
                v = m.group(1)
                verts.append(v)
                lab = re.search(r'label="([^"]*)"', m.group(2)).group(1)
                if lab != v:
                    labels[v] = lab
                if "shape=box" in m.group(2):
                    frozen.add(v)
        return cls(tuple(verts), arrows, frozenset(frozen), labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return (set(self.vertices) == set(other.vertices) and dict(self.arrows) == dict(other.arrows)
                and self.frozen == other.frozen and dict(self.labels) == dict(other.labels))


def _canonical(b: dict, frozen: frozenset) -> dict:
    net: dict = {}
    for (u, v), m in b.items():
        if u == v or not m:
            continue
        if u in frozen and v in frozen:
            continue
        key = (u, v) if (u, v) < (v, u) else (v, u)
        sign = 1 if key == (u, v) else -1
        net[key] = net.get(key, 0) + sign * m
    out = {}
    for (u, v), m in net.items():
        if m > 0:
            out[(u, v)] = m
        elif m < 0:
            out[(v, u)] = -m
    return out


def vertex_key(v: str):
    m = re.fullmatch(r"(-?\d+),(-?\d+)('*)", v)
    if m is None:
        return (0, 0, 0, v)
    return (int(m.group(1)), int(m.group(2)), len(m.group(3)), v)


# --------------------------------------------------------------------------
# seeds


@dataclass(frozen=True)
class Seed:
    quiver: Quiver
    vars: Mapping[str, LaurentPoly]

    @classmethod
    def initial(cls, quiver: Quiver) -> "Seed":
        ordered = sorted(quiver.vertices, key=vertex_key)
        return cls(quiver, {v: LaurentPoly.var(sym("x", k)) for k, v in enumerate(ordered)})

    def symbol_of(self, v: str):
        (sym_,) = self.vars[v].variables()
        return sym_

    def fraction(self, v: str) -> tuple[LaurentPoly, LaurentPoly]:
        """(polynomial numerator, monomial denominator) view of a variable."""
        return self.vars[v].as_fraction()


@dataclass(frozen=True)
class ExchangeRelation:
    vertex: str
    incoming: tuple[tuple[str, int], ...]
    outgoing: tuple[tuple[str, int], ...]

    def labelled(self, labels: Mapping[str, str]) -> dict:
        return {
            "vertex": labels.get(self.vertex, self.vertex),
            "in": sorted(labels.get(u, u) for u, k in self.incoming for _ in range(k)),
            "out": sorted(labels.get(u, u) for u, k in self.outgoing for _ in range(k)),
        }


def exchange_relation(q: Quiver | Seed, v: str) -> ExchangeRelation:
    quiver = q.quiver if isinstance(q, Seed) else q
    if v in quiver.frozen:
        raise FrozenVertex(f"vertex {v} is frozen")
    return ExchangeRelation(v, tuple(quiver.incoming(v)), tuple(quiver.outgoing(v)))


def mutate(seed: Seed, v: str) -> Seed:
    rel = exchange_relation(seed, v)
    plus = LaurentPoly.one()
    for u, k in rel.incoming:
        plus = plus * seed.vars[u] ** k
    minus = LaurentPoly.one()
    for u, k in rel.outgoing:
        minus = minus * seed.vars[u] ** k
    new = exact_div(plus + minus, seed.vars[v])
    vars_ = dict(seed.vars)
    vars_[v] = new
    return Seed(seed.quiver.mutate(v), vars_)


# --------------------------------------------------------------------------
# Theta


def theta_label_index(cox: CoxeterData, i: int, k: int) -> int:
    """Superscript n(i,k) of the label attached to vertex (i,k)."""
    return math.ceil((cox.xi_of(i) - k) / 2) + 1


def theta_label(cox: CoxeterData, i: int, k: int) -> str:
    return f"theta^({theta_label_index(cox, i, k)})_{i},{k}"


def build_theta_quiver(cox: CoxeterData, k_max: int, frozen_boundary: bool = True) -> Quiver:
    """Vertices (i,k), 1 <= k <= k_max.  A vertex with k - xi_i even is a
    source of its column and a sink of its row, the others the reverse."""
    ct = cox.type
    r = cox.rank
    verts = [f"{i},{k}" for i in range(1, r + 1) for k in range(1, k_max + 1)]

    def even(i, k):
        return (k - cox.xi_of(i)) % 2 == 0

    arrows = []
    for i in range(1, r + 1):
        for k in range(1, k_max):
            if even(i, k):
                arrows.append((f"{i},{k}", f"{i},{k + 1}"))
            else:
                arrows.append((f"{i},{k + 1}", f"{i},{k}"))
    for i, j in ct.edges:
        for k in range(1, k_max + 1):
            if even(i, k):
                arrows.append((f"{j},{k}", f"{i},{k}"))
            else:
                arrows.append((f"{i},{k}", f"{j},{k}"))
    labels = {f"{i},{k}": theta_label(cox, i, k) for i in range(1, r + 1) for k in range(1, k_max + 1)}
    frozen = [f"{i},{k_max}" for i in range(1, r + 1)] if frozen_boundary else []
    return Quiver.build(verts, arrows, frozen, labels)


def build_theta_seed(cox: CoxeterData, k_max: int, frozen_boundary: bool = True) -> Seed:
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    return Seed.initial(build_theta_quiver(cox, k_max, frozen_boundary))


def theta_template_match(cox: CoxeterData, quiver: Quiver, v: str) -> bool:
    """Does the exchange relation at v instantiate the T-system?

    With x = theta^{(s)}_{i,k} (or theta^{(s+1)}_{i,k}) the two monomials must
    be theta^{(s)}_{i,k+1} theta^{(s+1)}_{i,k-1} and
    prod_j theta^{(s+a_ij)}_{j,k}, where theta_{i,0} = 1.
    """
    i, k = (int(x) for x in v.split(","))
    rel = exchange_relation(quiver, v)

    def parsed(entries):
        out = []
        for u, mult in entries:
            j, kk = (int(x) for x in u.split(","))
            out.extend([(j, kk, theta_label_index(cox, j, kk))] * mult)
        return sorted(out)

    sides = [parsed(rel.incoming), parsed(rel.outgoing)]
    n = theta_label_index(cox, i, k)
    for s in (n, n - 1):
        vertical = [(i, k + 1, s)] + ([(i, k - 1, s + 1)] if k > 1 else [])
        horizontal = [(j, k, s + cox.a_of(i, j)) for j in cox.type.neighbors(i)]
        if sorted(sides) == sorted([sorted(vertical), sorted(horizontal)]):
            return True
    return False


# --------------------------------------------------------------------------
# Xi and Gamma


def _xi_vertices(cox: CoxeterData, s_min: int, s_max: int) -> list[tuple[int, int]]:
    """(i,s) whose height 2s - xi_i lies in [2 s_min, 2 s_max]."""
    out = []
    for i in range(1, cox.rank + 1):
        for s in range(s_min - 1, s_max + 2):
            if 2 * s_min <= 2 * s - cox.xi_of(i) <= 2 * s_max:
                out.append((i, s))
    return out


def _xi_arrows(cox: CoxeterData, verts: list[tuple[int, int]]) -> list[tuple[tuple, tuple]]:
    vs = set(verts)
    out = []
    for (i, s) in verts:
        for j in range(1, cox.rank + 1):
            cij = cox.type.c(i, j)
            if cij == 0:
                continue
            twice_t = 2 * s - cox.xi_of(i) + cij + cox.xi_of(j)
            if twice_t % 2:
                continue
            t = twice_t // 2
            if (j, t) in vs:
                out.append(((i, s), (j, t)))
    return out


def xi_label(i: int, s: int) -> str:
    return f"Delta^({s})_w{i},w{i}"


def build_xi_quiver(cox: CoxeterData, s_min: int, s_max: int, frozen_boundary: bool = True) -> Quiver:
    if s_min >= s_max:
        raise ValueError("need s_min < s_max")
    verts = _xi_vertices(cox, s_min, s_max)
    arrows = [(f"{i},{s}", f"{j},{t}") for (i, s), (j, t) in _xi_arrows(cox, verts)]
    frozen = []
    if frozen_boundary:
        for i in range(1, cox.rank + 1):
            col = [s for (j, s) in verts if j == i]
            frozen += [f"{i},{min(col)}", f"{i},{max(col)}"]
    labels = {f"{i},{s}": xi_label(i, s) for i, s in verts}
    return Quiver.build([f"{i},{s}" for i, s in verts], arrows, frozen, labels)


def build_xi_seed(cox: CoxeterData, s_min: int, s_max: int, frozen_boundary: bool = True) -> Seed:
    return Seed.initial(build_xi_quiver(cox, s_min, s_max, frozen_boundary))


def gamma_region(cox: CoxeterData) -> set[tuple[int, int]]:
    return {(i, s) for i in range(1, cox.rank + 1) for s in range(-cox.m_of(i), 0)}


def build_gamma_quiver(cox: CoxeterData, s_min: int, s_max: int,
                       labels: Mapping[str, str] | None = None) -> Quiver:
    """Split every vertex of S into red v' over green v'' and reroute arrows."""
    S = gamma_region(cox)
    verts = _xi_vertices(cox, s_min, s_max)
    if not S <= set(verts):
        raise ValueError("window does not cover the modified region")

    def name(v, part=0):
        return f"{v[0]},{v[1]}" + "'" * part

    new_verts = []
    arrows = []
    for v in verts:
        if v in S:
            new_verts += [name(v, 1), name(v, 2)]
            arrows.append((name(v, 1), name(v, 2)))
        else:
            new_verts.append(name(v))
    for v, w in _xi_arrows(cox, verts):
        same = v[0] == w[0]
        if v in S and w in S:
            arrows.append((name(v, 1), name(w, 2)) if same else (name(v, 2), name(w, 1)))
        elif w in S:
            arrows.append((name(v), name(w, 2)) if same else (name(v), name(w, 1)))
        elif v in S:
            arrows.append((name(v, 1), name(w)) if same else (name(v, 2), name(w)))
        else:
            arrows.append((name(v), name(w)))
    return Quiver.build(new_verts, arrows, (), labels or {})


def oriented_cycles(q: Quiver, length: int) -> set[tuple[str, ...]]:
    """Oriented simple cycles of the given length, each rotated to start at
    its smallest vertex."""
    succ: dict = {}
    for (u, v) in q.arrows:
        succ.setdefault(u, []).append(v)
    found = set()

    def walk(path):
        if len(path) == length:
            if path[0] in succ.get(path[-1], []):
                k = path.index(min(path))
                found.add(tuple(path[k:] + path[:k]))
            return
        for w in succ.get(path[-1], []):
            if w not in path:
                walk(path + [w])

    for v in q.vertices:
        walk([v])
    return found


# --------------------------------------------------------------------------
# Gamma labels: Delta^{(s)}_{c^k varpi_i, ctilde^l varpi_i}


LABEL_RE = re.compile(r"Delta\^\((-?\d+)\)_c(\d+)w(\d+),d(\d+)w(\d+)")


def gamma_label(s: int, k: int, i: int, l: int) -> str:
    return f"Delta^({s})_c{k}w{i},d{l}w{i}"


def parse_gamma_label(text: str) -> tuple[int, int, int, int]:
    """(s, k, i, l) from a Gamma label."""
    m = LABEL_RE.fullmatch(text)
    if m is None:
        raise ValueError(f"bad Gamma label {text!r}")
    s, k, i, l, i2 = (int(x) for x in m.groups())
    assert i == i2
    return s, k, i, l


def red_relation_template(cox: CoxeterData, i: int, k: int) -> dict:
    """Expected labels in the exchange relation at the red vertex
    Delta^{(0)}_{c^{m-1-k} varpi_i, ctilde^k varpi_i}."""
    m = cox.m_of(i)
    return {
        "vertex": gamma_label(0, m - 1 - k, i, k),
        "mutated": gamma_label(0, m - k, i, k + 1),
        "first": sorted([gamma_label(0, m - k, i, k), gamma_label(0, m - 1 - k, i, k + 1)]),
        "second": sorted(
            gamma_label(0, m - 1 - k + cox.a_of(i, j), j, k + cox.b_of(i, j))
            for j in cox.type.neighbors(i)
        ),
    }


# --------------------------------------------------------------------------
# expansions on bands


def verify_expansion(expr: LaurentPoly, band, i: int = 1, k: int = 1, s: int = 0) -> bool:
    """Evaluate a D/Dm expression on the band and compare with theta^{(s)}_{i,k}."""
    from .bands import theta_sik
    from .qchar import eval_on_band

    return eval_on_band(expr, band) == theta_sik(band, s, i, k)
