"""Seeded random constructions for property tests and experiment scripts.

Every function takes a ``random.Random`` so results are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .blocks import decompose
from .graph import LoopWeightedGraph, attach_pendant_path, coalesce, complete_graph, graph


def random_block_graph(rng: random.Random, max_n: int, min_n: int = 1, min_order: int = 2,
                       max_order: int = 6, reserve: int = 0) -> LoopWeightedGraph:
    """Grow a connected block graph by attaching complete blocks at random vertices.

    The vertex count is drawn from ``[min_n, max_n]`` and then approached as
    closely as block orders allow. ``reserve`` vertices of every block are kept
    out of later attachments, so each block ends with at least that many
    noncut vertices.
    """
    target = rng.randint(max(min_n, 1), max_n)
    first = min(target, rng.randint(min_order, max_order))
    if first < min_order:
        first = min_order
    g = complete_graph(first)
    free = list(range(reserve, first))
    while True:
        room = target - g.n + 1
        if room < min_order or not free:
            break
        size = rng.randint(min_order, min(max_order, room))
        at = rng.choice(free)
        g = coalesce(g, at, complete_graph(size), 0)
        new = list(range(g.n - size + 1, g.n))
        free.extend(new[reserve:])
    return g


def random_b31(rng: random.Random, max_n: int = 40, min_n: int = 3) -> LoopWeightedGraph:
    """Block graph with every block of order >= 3 and at least one noncut vertex per block."""
    return random_block_graph(rng, max_n, min_n=min_n, min_order=3, max_order=6, reserve=1)


def random_p1(rng: random.Random, max_core: int = 20, max_path_order: int = 6) -> LoopWeightedGraph:
    """A core with >= 2 noncut vertices per block, plus at most one pendant path per core cut vertex.

    Path orders count the anchor, so a path of order ``k`` adds ``k - 1`` vertices.
    """
    core = random_block_graph(rng, max_core, min_n=3, min_order=3, max_order=6, reserve=2)
    g = core
    for c in decompose(core).cut_vertices:
        if rng.random() < 0.6:
            g = attach_pendant_path(g, c, rng.randint(2, max_path_order) - 1)
    return g


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> LoopWeightedGraph:
    """Erdos-Renyi G(n, p); not necessarily connected."""
    return graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@dataclass(frozen=True)
class PendantPathInstance:
    """A block graph with even-order pendant paths at distinct anchors.

    ``paths`` lists ``(anchor, vertices)`` where ``vertices`` includes the
    anchor, so ``len(vertices)`` is the (even) path order.
    """

    graph: LoopWeightedGraph
    paths: tuple[tuple[int, tuple[int, ...]], ...]

    def removed(self) -> set[int]:
        return {v for _, vs in self.paths for v in vs}


def random_even_path_instance(rng: random.Random, max_base: int = 14, max_paths: int = 3,
                              max_order: int = 6) -> PendantPathInstance:
    base = random_block_graph(rng, max_base, min_n=2)
    anchors = rng.sample(range(base.n), rng.randint(1, min(max_paths, base.n)))
    g = base
    paths = []
    for a in anchors:
        order = rng.choice(range(2, max_order + 1, 2))
        start = g.n
        g = attach_pendant_path(g, a, order - 1)
        paths.append((a, (a,) + tuple(range(start, g.n))))
    return PendantPathInstance(g, tuple(paths))
