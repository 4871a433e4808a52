"""Determinant and rank engines for block graphs.

Three routes to the same answer:

* dense elimination on the adjacency matrix (``linalg``),
* Bapat's combinatorial formula summed over block allocations
  (``det_block_formula``),
* structural reduction (``reduce``), which peels even pendant paths and
  pendant complete blocks while keeping a certificate of the rank removed.

The small determinant identities for coalescence, bridges, pendant edges and
joining paths live here as well, each evaluated with ``linalg`` on smaller
graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from .blocks import decompose, is_block_graph, is_clique
from .errors import (
    NotBlockGraph,
    NotPendantBlock,
    NotPendantEdge,
    PreconditionViolated,
    SingularBlock,
    WeightEqualsOne,
)
from .graph import (
    Bridge,
    Coalescence,
    LoopWeightedGraph,
    bridge,
    coalesce,
    delete,
    disjoint_union,
    format_fraction,
    graph,
    graph_to_dict,
    induced_delete,
    vertex_set,
)
from .linalg import det_graph, rank_graph

EVEN_PATH = "EvenPath"
PENDANT_BLOCK = "PendantBlock"
PATH_PARITY = "PathParity"


# --- determinant identities --------------------------------------------------


def det_coalescence(g1: LoopWeightedGraph, v1: int, g2: LoopWeightedGraph, v2: int) -> Fraction:
    """det of the coalescence at v1 ~ v2, from determinants of the parts.

    The merged vertex must be loopless on both sides.
    """
    g1.check_vertex(v1)
    g2.check_vertex(v2)
    if g1.loop(v1) or g2.loop(v2):
        raise PreconditionViolated("coalescence identity needs a loopless merged vertex")
    return det_graph(g1) * det_graph(delete(g2, v2)) + det_graph(delete(g1, v1)) * det_graph(g2)


def det_bridge(g1: LoopWeightedGraph, v1: int, g2: LoopWeightedGraph, v2: int) -> Fraction:
    """det of ``g1 + g2`` with the extra edge ``v1 -- v2``; the null graph has det 1."""
    g1.check_vertex(v1)
    g2.check_vertex(v2)
    return det_graph(g1) * det_graph(g2) - det_graph(delete(g1, v1)) * det_graph(delete(g2, v2))


def det_pendant_edge(g: LoopWeightedGraph, e: tuple[int, int]) -> Fraction:
    """-det(g minus both endpoints of the pendant edge ``e``)."""
    u, v = e
    g.check_vertex(u)
    g.check_vertex(v)
    if not g.has_edge(u, v):
        raise NotPendantEdge(f"{e} is not an edge")
    if g.degree(u) != 1:
        u, v = v, u
    if g.degree(u) != 1:
        raise NotPendantEdge(f"neither endpoint of {e} is a leaf")
    if g.loop(u):
        raise NotPendantEdge(f"leaf {u} carries a loop")
    return -det_graph(delete(g, u, v))


def path_join(g1: LoopWeightedGraph, v1: int, g2: LoopWeightedGraph, v2: int, order: int) -> LoopWeightedGraph:
    """Join ``v1`` and ``v2`` by a path on ``order`` vertices, endpoints included.

    ``order == 1`` identifies v1 with v2, ``order == 2`` adds the edge v1 -- v2.
    Internal path vertices are numbered after ``g1`` and ``g2``.
    """
    if order < 1:
        raise PreconditionViolated("path order must be at least 1")
    if order == 1:
        return coalesce(g1, v1, g2, v2)
    if order == 2:
        return bridge(g1, v1, g2, v2)
    g1.check_vertex(v1)
    g2.check_vertex(v2)
    u = disjoint_union(g1, g2)
    internal = list(range(u.n, u.n + order - 2))
    chain = [v1] + internal + [g1.n + v2]
    return graph(u.n + len(internal), list(u.edges) + list(zip(chain, chain[1:])), u.loop_weights)


# --- certificates --------------------------------------------------------------


@dataclass(frozen=True)
class ReductionStep:
    kind: str
    removed: tuple[int, ...]
    rank_offset: int
    at: int | None = None
    gamma: Fraction | None = None
    norm_y_sq: Fraction | None = None
    sign: int | None = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "removed": list(self.removed), "rank_offset": self.rank_offset}
        if self.at is not None:
            d["at"] = self.at
        if self.gamma is not None:
            d["gamma"] = format_fraction(self.gamma)
            d["norm_y_sq"] = format_fraction(self.norm_y_sq)
        if self.sign is not None:
            d["sign"] = self.sign
        return d


@dataclass(frozen=True)
class ReductionCertificate:
    steps: tuple[ReductionStep, ...]
    residual: LoopWeightedGraph
    # original id of each residual vertex
    residual_vertices: tuple[int, ...] = ()

    @property
    def rank_offset(self) -> int:
        return sum(s.rank_offset for s in self.steps)

    def rank(self) -> int:
        return self.rank_offset + rank_graph(self.residual)

    def to_dict(self) -> dict:
        return {
            "steps": [s.to_dict() for s in self.steps],
            "residual": graph_to_dict(self.residual),
            "residual_vertices": list(self.residual_vertices),
            "rank_offset": self.rank_offset,
            "rank": self.rank(),
        }


class _Reducer:
    """Mutable working state: current graph plus the original id of each vertex."""

    def __init__(self, g: LoopWeightedGraph):
        self.g = g
        self.orig = list(range(g.n))
        self.steps: list[ReductionStep] = []

    def drop(self, vertices, kind, offset, **extra):
        removed = vertex_set(self.orig[v] for v in vertices)
        if "at" in extra and extra["at"] is not None:
            extra["at"] = self.orig[extra["at"]]
        self.g, mapping = induced_delete(self.g, vertices)
        keep = sorted(mapping, key=mapping.get)
        self.orig = [self.orig[v] for v in keep]
        self.steps.append(ReductionStep(kind, removed, offset, **extra))
        return mapping

    def certificate(self) -> ReductionCertificate:
        return ReductionCertificate(tuple(self.steps), self.g, tuple(self.orig))

    def strip_one_path(self) -> bool:
        g = self.g
        for leaf in range(g.n):
            if g.degree(leaf) != 1 or g.loop(leaf):
                continue
            chain = [leaf]
            prev, cur = leaf, next(iter(g.adjacency[leaf]))
            while g.degree(cur) == 2:
                chain.append(cur)
                prev, cur = cur, next(w for w in g.adjacency[cur] if w != prev)
            if g.degree(cur) == 1:
                # the component is a path: remove it whole (even) or down to one vertex (odd)
                full = chain + [cur]
                take = full if len(full) % 2 == 0 else full[:-1]
                anchor = None
            elif len(chain) % 2 == 0:
                take, anchor = chain, cur
            else:
                take, anchor = chain + [cur], cur
            # pairs (leaf, neighbour) are eliminated from the outside in; each
            # current leaf must be loopless, its neighbour may carry any weight
            if any(g.loop(take[i]) for i in range(0, len(take), 2)):
                continue
            if not take:
                continue
            self.drop(take, EVEN_PATH, len(take), at=anchor)
            return True
        return False

    def eliminate_one_block(self) -> bool:
        g = self.g
        d = decompose(g)
        for i, b in enumerate(d.blocks):
            cuts = d.cuts_in(i)
            if len(cuts) != 1 or len(b) < 3 or not is_clique(g, b):
                continue
            cut = cuts[0]
            rest = [v for v in b if v != cut]
            weights = [g.loop(v) for v in rest]
            if any(w >= 1 for w in weights) or all(w != 0 for w in weights):
                continue
            self.eliminate_block(b, cut)
            return True
        return False

    def eliminate_block(self, block, cut):
        g = self.g
        rest = [v for v in block if v != cut]
        sg = schur_gamma([g.loop(v) for v in rest])
        alpha = g.loop(cut)
        self.g = g.with_loops({cut: alpha + sg.gamma})
        return self.drop(
            rest, PENDANT_BLOCK, len(rest), at=cut, gamma=sg.gamma, norm_y_sq=sg.norm_y_sq
        )


def reduce_even_pendant_paths(g: LoopWeightedGraph) -> ReductionCertificate:
    """Greedily strip even pendant paths; rank(g) = offsets + rank(residual).

    A chain of ``h`` degree-<=2 vertices hanging off an anchor is removed on
    its own when ``h`` is even, and together with the anchor when ``h`` is odd
    (then it is a pendant path of even order counting the anchor). A
    component that is itself a path loses all of its vertices, or all but one.
    """
    r = _Reducer(g)
    while r.strip_one_path():
        pass
    return r.certificate()


@dataclass(frozen=True)
class BlockElimination:
    step: ReductionStep
    residual: LoopWeightedGraph
    mapping: dict


def reduce_pendant_block(g: LoopWeightedGraph, block: Sequence[int], cut_v: int) -> BlockElimination:
    """Eliminate ``block`` minus its cut-vertex and fold the Schur correction into ``cut_v``.

    Requires a complete pendant block of order >= 3 whose other vertices all
    carry weights < 1, at least one of them zero.
    """
    block = vertex_set(block)
    d = decompose(g)
    if block not in d.blocks:
        raise NotPendantBlock(f"{block} is not a block")
    i = d.blocks.index(block)
    if d.cuts_in(i) != (cut_v,):
        raise NotPendantBlock(f"{block} is not pendant at {cut_v}")
    if not is_clique(g, block):
        raise PreconditionViolated(f"{block} is not complete")
    if len(block) < 3:
        raise PreconditionViolated("pendant block must have order at least 3")
    weights = [g.loop(v) for v in block if v != cut_v]
    if any(w >= 1 for w in weights):
        raise PreconditionViolated("loop weights on eliminated vertices must be < 1")
    if all(w != 0 for w in weights):
        raise PreconditionViolated("need a loopless noncut-vertex in the block")
    r = _Reducer(g)
    mapping = r.eliminate_block(block, cut_v)
    return BlockElimination(r.steps[0], r.g, mapping)


def reduce(g: LoopWeightedGraph) -> ReductionCertificate:
    """Full pipeline: even pendant paths, then one pendant block, repeated to a fixpoint."""
    r = _Reducer(g)
    while True:
        while r.strip_one_path():
            pass
        if not r.eliminate_one_block():
            break
    return r.certificate()


# --- path parity ---------------------------------------------------------------


@dataclass(frozen=True)
class ParityReduction:
    reduced_spec: Coalescence | Bridge
    sign: int
    steps: tuple[ReductionStep, ...] = field(default=())


def path_parity_reduce(g1: LoopWeightedGraph, v1: int, g2: LoopWeightedGraph, v2: int, order: int) -> ParityReduction:
    """det(path_join(..., order)) == sign * det(build(reduced_spec)).

    Each application of det(G(n)) = -det(G(n-2)) drops two internal path
    vertices and flips the sign, so sign = (-1) ** ((order - 1) // 2).
    """
    if order < 1:
        raise PreconditionViolated("path order must be at least 1")
    g1.check_vertex(v1)
    g2.check_vertex(v2)
    if order % 2 and order > 1 and (g1.loop(v1) or g2.loop(v2)):
        raise PreconditionViolated("odd joins reduce to a coalescence, which needs loopless ends")
    spec = Coalescence(g1, g2, v1, v2) if order % 2 else Bridge(g1, v1, g2, v2)
    k = (order - 1) // 2
    # each step removes two vertices net and lowers the rank by exactly two
    steps = tuple(ReductionStep(PATH_PARITY, (), 2, sign=-1) for _ in range(k))
    return ParityReduction(spec, (-1) ** k, steps)


# --- loop-weighted complete graphs ----------------------------------------------


@dataclass(frozen=True)
class SchurGamma:
    gamma: Fraction
    norm_y_sq: Fraction


def _inverse_gaps(weights) -> Fraction:
    ws = [Fraction(w) for w in weights]
    if any(w == 1 for w in ws):
        raise WeightEqualsOne("loop weight 1 makes D singular")
    return sum((1 / (1 - w) for w in ws), Fraction(0))


def weighted_complete_nonsingular(weights: Sequence) -> bool:
    """Is K_n with loop weight ``weights[i]`` at vertex i nonsingular?"""
    return _inverse_gaps(weights) != 1


def schur_gamma(weights: Sequence) -> SchurGamma:
    """Correction added to a vertex joined to every vertex of a weighted clique.

    With M the clique's matrix, gamma = -j^T M^{-1} j = -s / (s - 1) where
    s = sum 1 / (1 - x_i).
    """
    s = _inverse_gaps(weights)
    if s == 1:
        raise SingularBlock("weighted clique is singular")
    gamma = -s / (s - 1)
    ws = [Fraction(w) for w in weights]
    if len(ws) >= 2 and all(w < 1 for w in ws) and any(w == 0 for w in ws):
        assert gamma < -1, (weights, gamma)
    return SchurGamma(gamma, s)


# --- Bapat's formula -------------------------------------------------------------

AlphaTuple = tuple


def _require_plain_block_graph(g: LoopWeightedGraph):
    if g.has_loops:
        raise PreconditionViolated("block formula applies to loopless graphs")
    if not g.is_connected:
        raise PreconditionViolated("block formula needs a connected graph")
    if not is_block_graph(g):
        raise NotBlockGraph("some block is not complete")


def count_alpha_assignments(g: LoopWeightedGraph) -> int:
    d = decompose(g)
    return prod(len(d.blocks_at(c)) for c in d.cut_vertices)


def alpha_assignments(g: LoopWeightedGraph):
    """Yield one allocation tuple per assignment of cut-vertices to incident blocks."""
    d = decompose(g)
    cuts = set(d.cut_vertices)
    base = [sum(1 for v in b if v not in cuts) for b in d.blocks]
    choices = [d.blocks_at(c) for c in d.cut_vertices]
    for pick in itertools.product(*choices):
        alpha = list(base)
        for i in pick:
            alpha[i] += 1
        yield tuple(alpha)


def alpha_tuple_is_feasible(g: LoopWeightedGraph, alpha: Sequence[int]) -> bool:
    """Both conditions of the formula, checked over every nonempty block subset."""
    d = decompose(g)
    k = len(d.blocks)
    if len(alpha) != k or any(a < 0 for a in alpha) or sum(alpha) != g.n:
        return False
    for mask in range(1, 1 << k):
        idx = [i for i in range(k) if mask >> i & 1]
        span = set().union(*(d.blocks[i] for i in idx))
        if sum(alpha[i] for i in idx) > len(span):
            return False
    return True


def enumerate_alpha_tuples(g: LoopWeightedGraph, check: bool | None = None) -> list[AlphaTuple]:
    """Distinct feasible allocation tuples, aligned with ``decompose(g).blocks``.

    ``check`` verifies the subset condition on every tuple; by default only
    when the graph has at most 10 blocks.
    """
    _require_plain_block_graph(g)
    d = decompose(g)
    tuples = sorted(set(alpha_assignments(g)))
    if check is None:
        check = len(d.blocks) <= 10
    for alpha in tuples:
        assert sum(alpha) == g.n
        for i, a in enumerate(alpha):
            ni, mi = len(d.blocks[i]), len(d.cuts_in(i))
            assert ni - mi <= a <= ni, (alpha, i)
        if check:
            assert alpha_tuple_is_feasible(g, alpha), alpha
    return tuples


def det_block_formula(g: LoopWeightedGraph) -> int:
    """(-1)^(n-k) * sum over allocation tuples of prod(alpha_i - 1)."""
    if g.n == 0:
        return 1
    _require_plain_block_graph(g)
    k = len(decompose(g).blocks)
    total = sum(prod(a - 1 for a in alpha) for alpha in set(alpha_assignments(g)))
    return (-1) ** (g.n - k) * total
