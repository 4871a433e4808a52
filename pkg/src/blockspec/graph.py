"""Loop-weighted simple graphs, compositional constructors and text formats.

Vertices are the integers ``0..n-1``. A vertex may carry a rational loop
weight, which lands on the diagonal of the adjacency matrix; vertices with no
entry in ``loops`` have weight exactly zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    ConflictingLoopWeights,
    InvalidSpec,
    LoopsNotRepresentable,
    MalformedGraph6,
    VertexOutOfRange,
)

Edge = tuple[int, int]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as loop weights; use Fraction or 'p/q'")
    return Fraction(x)


def format_fraction(x: Fraction) -> str:
    """Render a rational as ``"p/q"`` (denominator always present)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class LoopWeightedGraph:
    n: int
    edges: frozenset = frozenset()
    loops: tuple = ()

    def __post_init__(self):
        if self.n < 0:
            raise VertexOutOfRange(f"negative vertex count {self.n}")
        edges = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise VertexOutOfRange(f"self-pair {{{u},{v}}} is not an edge; use a loop weight")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexOutOfRange(f"edge {{{u},{v}}} outside 0..{self.n - 1}")
            edges.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(edges))

        items = self.loops.items() if isinstance(self.loops, Mapping) else self.loops
        loops = {}
        for v, w in items:
            v = int(v)
            if not 0 <= v < self.n:
                raise VertexOutOfRange(f"loop at {v} outside 0..{self.n - 1}")
            w = as_fraction(w)
            if w != 0:
                loops[v] = w
        object.__setattr__(self, "loops", tuple(sorted(loops.items())))

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def loop_weights(self) -> dict[int, Fraction]:
        return dict(self.loops)

    def loop(self, v: int) -> Fraction:
        return self.loop_weights.get(v, Fraction(0))

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    @property
    def has_loops(self) -> bool:
        return bool(self.loops)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def check_vertex(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{self.n - 1}")
        return v

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    def relabel(self, perm: Sequence[int]) -> LoopWeightedGraph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise VertexOutOfRange("relabeling is not a permutation of the vertex set")
        return LoopWeightedGraph(
            self.n,
            frozenset((perm[u], perm[v]) for u, v in self.edges),
            tuple((perm[v], w) for v, w in self.loops),
        )

    def without_loops(self) -> LoopWeightedGraph:
        return LoopWeightedGraph(self.n, self.edges)

    def with_loops(self, loops: Mapping[int, Fraction]) -> LoopWeightedGraph:
        merged = dict(self.loops)
        merged.update({int(v): as_fraction(w) for v, w in loops.items()})
        return LoopWeightedGraph(self.n, self.edges, tuple(merged.items()))

    def __repr__(self):
        loops = {v: str(w) for v, w in self.loops}
        return f"LoopWeightedGraph(n={self.n}, edges={self.sorted_edges()}, loops={loops})"


def graph(n: int, edges: Iterable[Edge] = (), loops: Mapping | None = None) -> LoopWeightedGraph:
    return LoopWeightedGraph(n, frozenset(tuple(e) for e in edges), tuple((loops or {}).items()))


def null_graph() -> LoopWeightedGraph:
    return LoopWeightedGraph(0)


def empty_graph(n: int) -> LoopWeightedGraph:
    return LoopWeightedGraph(n)


def complete_graph(n: int, loops: Mapping | None = None) -> LoopWeightedGraph:
    return graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)), loops)


def path_graph(n: int) -> LoopWeightedGraph:
    return graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> LoopWeightedGraph:
    if n < 3:
        raise InvalidSpec("a cycle needs at least 3 vertices")
    return graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> LoopWeightedGraph:
    return graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


# --- compositional constructors -------------------------------------------


def disjoint_union(*parts: LoopWeightedGraph) -> LoopWeightedGraph:
    """Place ``parts`` side by side, numbering each after the previous ones."""
    edges, loops, offset = [], {}, 0
    for p in parts:
        edges.extend((u + offset, v + offset) for u, v in p.edges)
        loops.update({v + offset: w for v, w in p.loops})
        offset += p.n
    return graph(offset, edges, loops)


def coalesce(g1: LoopWeightedGraph, v1: int, g2: LoopWeightedGraph, v2: int) -> LoopWeightedGraph:
    """Identify ``v1`` of ``g1`` with ``v2`` of ``g2``.

    ``g1`` keeps its numbering; the vertices of ``g2`` other than ``v2`` follow
    in their original order. Loop weights at the merged vertex must agree or
    one of them must be zero.
    """
    g1.check_vertex(v1)
    g2.check_vertex(v2)
    a, b = g1.loop(v1), g2.loop(v2)
    if a != 0 and b != 0 and a != b:
        raise ConflictingLoopWeights(f"merged vertex carries loops {a} and {b}")
    new = {}
    nxt = g1.n
    for v in range(g2.n):
        if v == v2:
            new[v] = v1
        else:
            new[v] = nxt
            nxt += 1
    edges = list(g1.edges) + [(new[u], new[v]) for u, v in g2.edges]
    loops = dict(g1.loops)
    loops.update({new[v]: w for v, w in g2.loops})
    return graph(nxt, edges, loops)


def bridge(g1: LoopWeightedGraph, v1: int, g2: LoopWeightedGraph, v2: int) -> LoopWeightedGraph:
    """Disjoint union of ``g1`` and ``g2`` plus the edge ``v1 -- v2``."""
    g1.check_vertex(v1)
    g2.check_vertex(v2)
    u = disjoint_union(g1, g2)
    return graph(u.n, list(u.edges) + [(v1, g1.n + v2)], u.loop_weights)


def attach_pendant_path(base: LoopWeightedGraph, at: int, length: int) -> LoopWeightedGraph:
    """Hang ``length`` new vertices in a chain off ``at``.

    The added path together with ``at`` is a pendant path of order ``length + 1``.
    """
    base.check_vertex(at)
    if length < 0:
        raise InvalidSpec("pendant path length must be nonnegative")
    edges = list(base.edges)
    prev = at
    for i in range(length):
        edges.append((prev, base.n + i))
        prev = base.n + i
    return graph(base.n + length, edges, base.loop_weights)


def induced_delete(g: LoopWeightedGraph, drop: Iterable[int]) -> tuple[LoopWeightedGraph, dict[int, int]]:
    """Delete ``drop`` and relabel the survivors densely, preserving order.

    Returns the new graph and the old-to-new vertex map.
    """
    drop = set(drop)
    for v in drop:
        g.check_vertex(v)
    keep = [v for v in range(g.n) if v not in drop]
    mapping = {v: i for i, v in enumerate(keep)}
    edges = [(mapping[u], mapping[v]) for u, v in g.edges if u in mapping and v in mapping]
    loops = {mapping[v]: w for v, w in g.loops if v in mapping}
    return graph(len(keep), edges, loops), mapping


def delete(g: LoopWeightedGraph, *drop: int) -> LoopWeightedGraph:
    return induced_delete(g, drop)[0]


def vertex_set(vertices: Iterable[int]) -> tuple[int, ...]:
    """Normalize to the sorted, duplicate-free tuple used wherever a vertex set is stored."""
    return tuple(sorted(set(int(v) for v in vertices)))


# --- build specs -----------------------------------------------------------


@dataclass(frozen=True)
class Explicit:
    n: int
    edges: tuple = ()
    loops: Mapping = field(default_factory=dict)


@dataclass(frozen=True)
class Coalescence:
    left: "BuildSource"
    right: "BuildSource"
    v_left: int
    v_right: int


@dataclass(frozen=True)
class DisjointUnion:
    parts: tuple


@dataclass(frozen=True)
class PendantPath:
    base: "BuildSource"
    at: int
    length: int


@dataclass(frozen=True)
class Bridge:
    left: "BuildSource"
    v_left: int
    right: "BuildSource"
    v_right: int


GraphBuildSpec = Union[Explicit, Coalescence, DisjointUnion, PendantPath, Bridge]
BuildSource = Union[GraphBuildSpec, LoopWeightedGraph]


def build(spec: BuildSource) -> LoopWeightedGraph:
    match spec:
        case LoopWeightedGraph():
            return spec
        case Explicit(n, edges, loops):
            return graph(n, edges, loops)
        case Coalescence(left, right, vl, vr):
            return coalesce(build(left), vl, build(right), vr)
        case DisjointUnion(parts):
            return disjoint_union(*(build(p) for p in parts))
        case PendantPath(base, at, length):
            return attach_pendant_path(build(base), at, length)
        case Bridge(left, vl, right, vr):
            return bridge(build(left), vl, build(right), vr)
    # families are accepted wherever a graph is, see families.generate
    from .families import FAMILY_TYPES, generate

    if isinstance(spec, FAMILY_TYPES):
        return generate(spec)
    raise InvalidSpec(f"not a graph build spec: {spec!r}")


# --- graph6 ----------------------------------------------------------------

GRAPH6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(g: LoopWeightedGraph) -> str:
    if g.has_loops:
        raise LoopsNotRepresentable("graph6 cannot store loop weights")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(sum(b << (5 - k) for k, b in enumerate(bits[i:i + 6])) + 63)
        for i in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def parse_graph6(text: str) -> LoopWeightedGraph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise MalformedGraph6("empty graph6 string")
    vals = [ord(c) - 63 for c in s]
    if any(not 0 <= x < 64 for x in vals):
        raise MalformedGraph6(f"byte outside the graph6 range in {text!r}")
    if vals[0] < 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        rest = vals[4:]
    elif len(vals) >= 8 and vals[1] == 63:
        n = 0
        for x in vals[2:8]:
            n = (n << 6) | x
        rest = vals[8:]
    else:
        raise MalformedGraph6(f"truncated size field in {text!r}")
    nbits = n * (n - 1) // 2
    if len(rest) != (nbits + 5) // 6:
        raise MalformedGraph6(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(rest)}")
    bits = [(x >> (5 - k)) & 1 for x in rest for k in range(6)]
    if any(bits[nbits:]):
        raise MalformedGraph6("nonzero padding bits")
    edges, k = [], 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return graph(n, edges)


# --- edge-list JSON ----------------------------------------------------------


def graph_to_dict(g: LoopWeightedGraph) -> dict:
    return {
        "n": g.n,
        "edges": [list(e) for e in g.sorted_edges()],
        "loops": {str(v): format_fraction(w) for v, w in g.loops},
    }


def graph_from_dict(d: Mapping) -> LoopWeightedGraph:
    try:
        n = int(d["n"])
        edges = [tuple(int(x) for x in e) for e in d.get("edges", [])]
        loops = {int(v): Fraction(str(w)) for v, w in d.get("loops", {}).items()}
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidSpec(f"bad edge-list JSON: {exc}") from exc
    if any(len(e) != 2 for e in edges):
        raise InvalidSpec("every edge must have two endpoints")
    return graph(n, edges, loops)


def write_edgelist_json(g: LoopWeightedGraph) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True)


def parse_edgelist_json(text: str) -> LoopWeightedGraph:
    try:
        return graph_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"bad edge-list JSON: {exc}") from exc


# --- DOT -------------------------------------------------------------------


def write_dot(g: LoopWeightedGraph, labels: Mapping[int, str] | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        attrs = []
        if labels and v in labels:
            attrs.append(f'label="{labels[v]}"')
        w = g.loop(v)
        if w != 0:
            attrs.append(f"loop={w}" if w.denominator == 1 else f'loop="{w}"')
        lines.append(f"  {v} [{', '.join(attrs)}];" if attrs else f"  {v};")
    lines.extend(f"  {u} -- {v};" for u, v in g.sorted_edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
