"""Named block-graph families and their closed-form singularity tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .blocks import classify, decompose, is_block_graph, p1_structure
from .errors import EmptyAttachment, InvalidSpec, NotEvenPathVertex, NotP1Core
from .graph import (
    LoopWeightedGraph,
    as_fraction,
    attach_pendant_path,
    build,
    complete_graph,
    disjoint_union,
    format_fraction,
    graph,
)
from .linalg import det_graph


@dataclass(frozen=True)
class KrN:
    """K_n with loop weights on its first ``r`` vertices."""

    n: int
    r: int
    weights: tuple = ()


@dataclass(frozen=True)
class NMK:
    """K_n with k pendant K_m blocks at every vertex."""

    n: int
    m: int
    k: int


@dataclass(frozen=True)
class GeneralizedStar:
    """K_n with pendant complete blocks of orders ``attachments[i]`` at vertex i."""

    n: int
    attachments: tuple = ()


@dataclass(frozen=True)
class P1:
    """A core graph with pendant paths; ``paths`` holds (vertex, order) with the vertex counted."""

    core: object
    paths: tuple = ()


@dataclass(frozen=True)
class TreeOfBlocks:
    tree_edges: tuple
    parts: tuple
    # junctions[e] = (vertex of parts[i], vertex of parts[j]) for tree_edges[e] = (i, j)
    junctions: tuple


FamilySpec = KrN | NMK | GeneralizedStar | P1 | TreeOfBlocks
FAMILY_TYPES = (KrN, NMK, GeneralizedStar, P1, TreeOfBlocks)


def _validate(spec) -> None:
    match spec:
        case KrN(n, r, weights):
            if n < 2 or not 0 <= r <= n - 1 or len(weights) != r:
                raise InvalidSpec(f"KrN needs n >= 2, 0 <= r <= n-1 and r weights: {spec}")
            if any(as_fraction(w) >= 1 for w in weights):
                raise InvalidSpec("KrN loop weights must be < 1")
        case NMK(n, m, k):
            if n < 2 or m < 3 or k < 1:
                raise InvalidSpec(f"NMK needs n >= 2, m >= 3, k >= 1: {spec}")
        case GeneralizedStar(n, attachments):
            if n < 2 or len(attachments) != n:
                raise InvalidSpec(f"GeneralizedStar needs n >= 2 and one attachment list per vertex: {spec}")
            if any(m < 3 for orders in attachments for m in orders):
                raise InvalidSpec("attached blocks must have order > 2")
        case P1() | TreeOfBlocks():
            pass
        case _:
            raise InvalidSpec(f"unknown family spec {spec!r}")


def generate(spec) -> LoopWeightedGraph:
    """Build the graph of a family spec with deterministic vertex numbering.

    Centre vertices come first, then attached blocks in spec order.
    """
    _validate(spec)
    match spec:
        case KrN(n, r, weights):
            return complete_graph(n, {i: as_fraction(w) for i, w in enumerate(weights)})
        case NMK(n, m, k):
            return generate(GeneralizedStar(n, tuple((m,) * k for _ in range(n))))
        case GeneralizedStar(n, attachments):
            edges = [(u, v) for u in range(n) for v in range(u)]
            nxt = n
            for centre, orders in enumerate(attachments):
                for m in orders:
                    block = [centre] + list(range(nxt, nxt + m - 1))
                    edges.extend((block[a], block[b]) for a in range(m) for b in range(a))
                    nxt += m - 1
            return graph(nxt, edges)
        case P1(core, paths):
            g = build(core)
            for v, order in paths:
                if order < 2:
                    raise InvalidSpec("pendant path order must be >= 2")
                g = attach_pendant_path(g, v, order - 1)
            if p1_structure(g) is None:
                raise InvalidSpec("construction does not yield a p1-block graph")
            return g
        case TreeOfBlocks():
            return build_tree_of_blocks(spec)


def build_tree_of_blocks(spec: TreeOfBlocks) -> LoopWeightedGraph:
    """Disjoint parts plus one bridge edge per tree edge."""
    parts = [build(p) for p in spec.parts]
    k = len(parts)
    edges = [tuple(e) for e in spec.tree_edges]
    if len(edges) != max(k - 1, 0) or len(spec.junctions) != len(edges):
        raise InvalidSpec("a tree on k parts needs k-1 edges and one junction per edge")
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        if not (0 <= i < k and 0 <= j < k) or find(i) == find(j):
            raise InvalidSpec(f"tree edges do not form a tree: {edges}")
        parent[find(i)] = find(j)
    offsets = [0]
    for p in parts:
        offsets.append(offsets[-1] + p.n)
    union = disjoint_union(*parts)
    extra = []
    for (i, j), (u, v) in zip(edges, spec.junctions):
        if not (0 <= u < parts[i].n and 0 <= v < parts[j].n):
            raise InvalidSpec(f"junction ({u}, {v}) outside parts {i}, {j}")
        extra.append((offsets[i] + u, offsets[j] + v))
    return graph(union.n, list(union.edges) + extra, union.loop_weights)


# --- closed-form predicates --------------------------------------------------------


def nmk_is_singular(n: int, m: int, k: int) -> bool:
    _validate(NMK(n, m, k))
    return Fraction(m - 1, m - 2) * k == n - 1


def _star_loads(spec: GeneralizedStar) -> list[Fraction]:
    _validate(spec)
    return [sum((Fraction(m - 1, m - 2) for m in orders), Fraction(0)) for orders in spec.attachments]


def star_is_nonsingular(spec: GeneralizedStar) -> bool:
    """Exact criterion: sum_i 1 / (1 + sum_j (m_ij - 1)/(m_ij - 2)) != 1."""
    if any(len(orders) == 0 for orders in spec.attachments):
        raise EmptyAttachment("every centre vertex needs at least one attached block")
    return sum((1 / (1 + load) for load in _star_loads(spec)), Fraction(0)) != 1


def star_diag_dominant_sufficient(spec: GeneralizedStar) -> bool:
    """k_i (m_i - 1)/(m_i - 2) > n - 1 at every centre vertex (uniform orders per vertex)."""
    _validate(spec)
    for orders in spec.attachments:
        if len(set(orders)) > 1:
            raise InvalidSpec("diagonal dominance test needs one block order per centre vertex")
    return all(load > spec.n - 1 for load in _star_loads(spec))


def recognize_generalized_star(g: LoopWeightedGraph) -> GeneralizedStar | None:
    """Read ``g`` as a centre clique with pendant blocks of order >= 3 at every centre vertex.

    The returned spec is expressed in a canonical numbering (centre first), so
    ``generate`` of it is isomorphic to ``g`` but not necessarily equal.
    """
    if g.has_loops or not g.is_connected or not is_block_graph(g):
        return None
    d = decompose(g)
    inner = [i for i in range(len(d.blocks)) if not d.is_pendant(i)]
    if len(inner) != 1:
        return None
    centre = d.blocks[inner[0]]
    if len(centre) < 2 or len(d.cuts_in(inner[0])) != len(centre):
        return None
    attachments = []
    for v in centre:
        orders = []
        for i in d.blocks_at(v):
            if i == inner[0]:
                continue
            if len(d.blocks[i]) < 3:
                return None
            orders.append(len(d.blocks[i]))
        attachments.append(tuple(sorted(orders)))
    return GeneralizedStar(len(centre), tuple(attachments))


def as_nmk(spec: GeneralizedStar) -> NMK | None:
    """The (n, m, k) parameters when every centre vertex carries the same k blocks of order m."""
    first = spec.attachments[0]
    if not first or len(set(first)) != 1 or any(a != first for a in spec.attachments):
        return None
    return NMK(spec.n, first[0], len(first))


# --- p1 skeletons ------------------------------------------------------------------


@dataclass(frozen=True)
class SkeletonAttachment:
    graph: LoopWeightedGraph
    predicted_nonsingular: bool
    part_determinants: tuple = field(default=())


def p1_skeleton_attach(core_p1: LoopWeightedGraph, attachments: Sequence) -> SkeletonAttachment:
    """Bridge each ``W`` at ``w_vertex`` to ``path_cut_vertex`` of a p1-block graph.

    Every ``path_cut_vertex`` must anchor a pendant path of even order. The
    result is predicted nonsingular exactly when every ``W`` is.
    """
    structure = p1_structure(core_p1)
    if structure is None:
        raise NotP1Core("skeleton is not a p1-block graph")
    even = set(structure.even_anchors())
    g = core_p1
    dets = []
    for w, w_vertex, cut in attachments:
        w = build(w)
        if cut not in even:
            raise NotEvenPathVertex(f"vertex {cut} does not anchor an even pendant path")
        w.check_vertex(w_vertex)
        offset = g.n
        u = disjoint_union(g, w)
        g = graph(u.n, list(u.edges) + [(cut, offset + w_vertex)], u.loop_weights)
        dets.append(det_graph(w))
    return SkeletonAttachment(g, all(x != 0 for x in dets), tuple(dets))


def classify_family_tags(g: LoopWeightedGraph) -> list[str]:
    """Theorem tags whose hypotheses ``g`` verifiably satisfies."""
    tags = []
    if g.has_loops:
        return tags
    flags = classify(g)
    if flags.is_b31:
        tags.append("B31-nonsingular")
    elif flags.is_p1:
        # B31 already implies nonsingularity, so the p1 tag only adds information otherwise
        tags.append("p1-nonsingular")
    star = recognize_generalized_star(g)
    if star is not None:
        ok = star_is_nonsingular(star)
        tags.append("exact-sum-criterion-" + ("nonsingular" if ok else "singular"))
        nmk = as_nmk(star)
        if nmk is not None:
            sing = nmk_is_singular(nmk.n, nmk.m, nmk.k)
            tags.append("NMK-criterion-" + ("singular" if sing else "nonsingular"))
    return tags


# --- JSON --------------------------------------------------------------------------


def spec_to_dict(spec) -> dict:
    """Serialize a family spec or graph build spec."""
    from .graph import Bridge, Coalescence, DisjointUnion, Explicit, PendantPath, graph_to_dict

    match spec:
        case LoopWeightedGraph():
            return {"kind": "explicit", **graph_to_dict(spec)}
        case Explicit(n, edges, loops):
            return {"kind": "explicit", **graph_to_dict(graph(n, edges, loops))}
        case Coalescence(left, right, vl, vr):
            return {"kind": "coalescence", "left": spec_to_dict(left), "right": spec_to_dict(right),
                    "v_left": vl, "v_right": vr}
        case DisjointUnion(parts):
            return {"kind": "disjoint_union", "parts": [spec_to_dict(p) for p in parts]}
        case PendantPath(base, at, length):
            return {"kind": "pendant_path", "base": spec_to_dict(base), "at": at, "length": length}
        case Bridge(left, vl, right, vr):
            return {"kind": "bridge", "left": spec_to_dict(left), "v_left": vl,
                    "right": spec_to_dict(right), "v_right": vr}
        case KrN(n, r, weights):
            return {"family": "KrN", "n": n, "r": r, "weights": [format_fraction(as_fraction(w)) for w in weights]}
        case NMK(n, m, k):
            return {"family": "NMK", "n": n, "m": m, "k": k}
        case GeneralizedStar(n, attachments):
            return {"family": "GeneralizedStar", "n": n, "attachments": [list(a) for a in attachments]}
        case P1(core, paths):
            return {"family": "P1", "core": spec_to_dict(core), "paths": [list(p) for p in paths]}
        case TreeOfBlocks(tree_edges, parts, junctions):
            return {"family": "TreeOfBlocks", "tree_edges": [list(e) for e in tree_edges],
                    "parts": [spec_to_dict(p) for p in parts], "junctions": [list(j) for j in junctions]}
    raise InvalidSpec(f"cannot serialize {spec!r}")


def spec_from_dict(d) -> object:
    """Inverse of ``spec_to_dict``; also accepts ``{"kind": "complete"|"path"|"graph6", ...}``."""
    from .graph import (
        Bridge,
        Coalescence,
        DisjointUnion,
        Explicit,
        PendantPath,
        graph_from_dict,
        parse_graph6,
        path_graph,
    )

    if not isinstance(d, dict):
        raise InvalidSpec(f"spec must be a JSON object, got {type(d).__name__}")
    try:
        if "family" in d:
            fam = d["family"]
            if fam == "KrN":
                return KrN(int(d["n"]), int(d["r"]), tuple(Fraction(str(w)) for w in d.get("weights", [])))
            if fam == "NMK":
                return NMK(int(d["n"]), int(d["m"]), int(d["k"]))
            if fam == "GeneralizedStar":
                return GeneralizedStar(int(d["n"]), tuple(tuple(int(m) for m in a) for a in d["attachments"]))
            if fam == "P1":
                return P1(spec_from_dict(d["core"]), tuple((int(v), int(o)) for v, o in d.get("paths", [])))
            if fam == "TreeOfBlocks":
                return TreeOfBlocks(
                    tuple(tuple(int(x) for x in e) for e in d["tree_edges"]),
                    tuple(spec_from_dict(p) for p in d["parts"]),
                    tuple(tuple(int(x) for x in j) for j in d["junctions"]),
                )
            raise InvalidSpec(f"unknown family {fam!r}")
        kind = d.get("kind")
        if kind == "explicit":
            g = graph_from_dict(d)
            return Explicit(g.n, tuple(g.sorted_edges()), g.loop_weights)
        if kind == "complete":
            g = complete_graph(int(d["n"]))
            return Explicit(g.n, tuple(g.sorted_edges()))
        if kind == "path":
            g = path_graph(int(d["n"]))
            return Explicit(g.n, tuple(g.sorted_edges()))
        if kind == "graph6":
            g = parse_graph6(d["graph6"])
            return Explicit(g.n, tuple(g.sorted_edges()))
        if kind == "coalescence":
            return Coalescence(spec_from_dict(d["left"]), spec_from_dict(d["right"]), int(d["v_left"]), int(d["v_right"]))
        if kind == "disjoint_union":
            return DisjointUnion(tuple(spec_from_dict(p) for p in d["parts"]))
        if kind == "pendant_path":
            return PendantPath(spec_from_dict(d["base"]), int(d["at"]), int(d["length"]))
        if kind == "bridge":
            return Bridge(spec_from_dict(d["left"]), int(d["v_left"]), spec_from_dict(d["right"]), int(d["v_right"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidSpec(f"malformed spec: {exc}") from exc
    raise InvalidSpec(f"spec needs a 'family' or known 'kind' key: {d}")
