"""Biconnected decomposition and structural class recognition.

Loops are ignored here: every flag is a property of the underlying simple graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .graph import LoopWeightedGraph


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]
    cut_vertices: tuple[int, ...]
    # (block index, cut vertex) pairs; the block-cut tree is bipartite
    block_cut_edges: tuple[tuple[int, int], ...]

    def blocks_at(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def cuts_in(self, i: int) -> tuple[int, ...]:
        cuts = set(self.cut_vertices)
        return tuple(v for v in self.blocks[i] if v in cuts)

    def noncuts_in(self, i: int) -> tuple[int, ...]:
        cuts = set(self.cut_vertices)
        return tuple(v for v in self.blocks[i] if v not in cuts)

    def is_pendant(self, i: int) -> bool:
        return len(self.cuts_in(i)) == 1


def _biconnected_edge_sets(g: LoopWeightedGraph) -> list[set[int]]:
    """Hopcroft-Tarjan lowpoint DFS, iterative; returns vertex sets of blocks with edges."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks = []
    t = 0
    adj = [sorted(g.adjacency[v]) for v in range(g.n)]
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        edge_stack = []
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] == -1:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, u, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.update((a, b))
                    if (a, b) == (parent, u):
                        break
                blocks.append(comp)
    return blocks


@lru_cache(maxsize=4096)
def decompose(g: LoopWeightedGraph) -> BlockDecomposition:
    vsets = _biconnected_edge_sets(g)
    covered = set().union(*vsets) if vsets else set()
    vsets.extend({v} for v in range(g.n) if v not in covered)
    blocks = sorted((tuple(sorted(b)) for b in vsets), key=lambda b: (b[0], len(b), b))
    count = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    cuts = tuple(sorted(v for v, c in count.items() if c >= 2))
    cutset = set(cuts)
    bc = tuple((i, v) for i, b in enumerate(blocks) for v in b if v in cutset)
    return BlockDecomposition(tuple(blocks), cuts, bc)


def is_clique(g: LoopWeightedGraph, vertices) -> bool:
    vs = list(vertices)
    return all(g.has_edge(vs[i], vs[j]) for i in range(len(vs)) for j in range(i))


def is_block_graph(g: LoopWeightedGraph) -> bool:
    return all(is_clique(g, b) for b in decompose(g).blocks)


@dataclass(frozen=True)
class BlockInfo:
    vertices: tuple[int, ...]
    order: int
    cut_count: int
    noncut_count: int
    pendant: bool


@dataclass(frozen=True)
class P1Structure:
    """Result of peeling a graph into a core and its pendant paths.

    Each path is ``(anchor, chain)`` where ``chain`` runs from the vertex next
    to ``anchor`` out to the leaf. The path order in the usual sense counts the
    anchor too, so it is ``len(chain) + 1``.
    """

    core: tuple[int, ...]
    paths: tuple[tuple[int, tuple[int, ...]], ...]

    def path_at(self, anchor: int):
        for a, chain in self.paths:
            if a == anchor:
                return chain
        return None

    def even_anchors(self) -> tuple[int, ...]:
        return tuple(a for a, chain in self.paths if (len(chain) + 1) % 2 == 0)


@dataclass(frozen=True)
class ClassFlags:
    is_block_graph: bool
    is_k2_forbidden: bool
    is_b31: bool
    is_p1: bool
    is_tree: bool
    is_connected: bool
    blocks: tuple[BlockInfo, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "is_block_graph": self.is_block_graph,
            "is_k2_forbidden": self.is_k2_forbidden,
            "is_b31": self.is_b31,
            "is_p1": self.is_p1,
            "is_tree": self.is_tree,
            "is_connected": self.is_connected,
            "blocks": [
                {
                    "vertices": list(b.vertices),
                    "order": b.order,
                    "cut_vertices": b.cut_count,
                    "noncut_vertices": b.noncut_count,
                    "pendant": b.pendant,
                }
                for b in self.blocks
            ],
        }


def block_infos(g: LoopWeightedGraph) -> tuple[BlockInfo, ...]:
    d = decompose(g)
    out = []
    for i, b in enumerate(d.blocks):
        c = len(d.cuts_in(i))
        out.append(BlockInfo(b, len(b), c, len(b) - c, c == 1))
    return tuple(out)


def is_b31(g: LoopWeightedGraph) -> bool:
    if not (g.n and g.is_connected and is_block_graph(g)):
        return False
    return all(b.order >= 3 and b.noncut_count >= 1 for b in block_infos(g))


def p1_structure(g: LoopWeightedGraph) -> P1Structure | None:
    """Peel maximal pendant paths and test the residual core.

    A pendant path here is a chain that starts at a leaf, runs through
    degree-2 vertices and stops at the first vertex of degree >= 3 (its
    anchor). The graph qualifies when anchors are pairwise distinct and every
    block of the remaining core has at least two vertices that are not
    cut-vertices of the whole graph. Returns None otherwise.
    """
    if not (g.n and g.is_connected and is_block_graph(g)):
        return None
    if g.n == 2:
        return P1Structure((0, 1), ())
    paths = []
    anchors = set()
    peeled = set()
    for leaf in range(g.n):
        if g.degree(leaf) != 1:
            continue
        chain = [leaf]
        prev, cur = leaf, next(iter(g.adjacency[leaf]))
        while g.degree(cur) == 2:
            chain.append(cur)
            prev, cur = cur, next(w for w in g.adjacency[cur] if w != prev)
        if g.degree(cur) == 1:
            # the whole graph is a path
            return None
        if cur in anchors:
            return None
        anchors.add(cur)
        peeled.update(chain)
        paths.append((cur, tuple(reversed(chain))))
    core = tuple(v for v in range(g.n) if v not in peeled)
    cuts = set(decompose(g).cut_vertices)
    for b in decompose(g).blocks:
        if peeled.intersection(b):
            continue
        if sum(1 for v in b if v not in cuts) < 2:
            return None
    return P1Structure(core, tuple(sorted(paths)))


def classify(g: LoopWeightedGraph) -> ClassFlags:
    connected = g.n > 0 and g.is_connected
    block = is_block_graph(g)
    infos = block_infos(g)
    k2f = block and all(b.order >= 3 for b in infos)
    return ClassFlags(
        is_block_graph=block,
        is_k2_forbidden=k2f,
        is_b31=is_b31(g),
        is_p1=p1_structure(g) is not None,
        is_tree=connected and g.num_edges == g.n - 1,
        is_connected=connected,
        blocks=infos,
    )
