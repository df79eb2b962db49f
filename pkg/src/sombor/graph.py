"""Simple undirected graphs and the constructions used to build families and polymers.

Vertices are dense 0-based integers.  Every construction returns a new
:class:`Graph`; inputs are never mutated.  Edges are stored normalised
(``u < v``) and sorted, so two graphs with the same edge set compare equal
and serialise identically.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

Edge = tuple[int, int]
Profile = dict[tuple[int, int], int]


class GraphError(ValueError):
    """Base class for invalid graphs or invalid graph operations."""

    code = "graph"


class VertexRangeError(GraphError):
    code = "vertex-range"


class SelfLoopError(GraphError):
    code = "self-loop"


class DuplicateEdgeError(GraphError):
    code = "duplicate-edge"


class MissingEdgeError(GraphError):
    code = "missing-edge"


class EmptyGraphError(GraphError):
    code = "no-edges"


class IsolatedVertexError(GraphError):
    code = "isolated-vertex"


class ConstructionError(GraphError):
    code = "construction"


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[Edge, ...]
    degrees: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        object.__setattr__(self, "degrees", tuple(deg))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self._edge_set

    @property
    def _edge_set(self) -> frozenset[Edge]:
        cached = self.__dict__.get("_edge_set_cache")
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_edge_set_cache", cached)
        return cached

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


class DegreeExtremes(NamedTuple):
    min_degree: int
    max_degree: int


class LinkSpec(NamedTuple):
    """Ordered monomers with an ``(x_i, y_i)`` anchor pair each.

    The bridge ``y_i -- x_{i+1}`` joins consecutive monomers; ``x_1`` and
    ``y_k`` are carried for symmetry but never bridged.
    """

    monomers: tuple[Graph, ...]
    anchors: tuple[tuple[int, int], ...]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def make_graph(vertex_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edges`` and build a :class:`Graph`.

    Duplicates (in either orientation) are rejected rather than collapsed.
    """
    if vertex_count < 0:
        raise VertexRangeError(f"vertex_count must be nonnegative, got {vertex_count}")
    seen: set[Edge] = set()
    for edge in edges:
        u, v = int(edge[0]), int(edge[1])
        for w in (u, v):
            if not 0 <= w < vertex_count:
                raise VertexRangeError(f"vertex {w} out of range [0, {vertex_count})")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        e = _norm(u, v)
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {e}")
        seen.add(e)
    return Graph(vertex_count, tuple(sorted(seen)))


def empty_graph(n: int) -> Graph:
    return make_graph(n, [])


def complete_graph(n: int) -> Graph:
    return make_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def degree_pair_profile(g: Graph) -> Profile:
    """Count edges by their sorted endpoint-degree pair ``(a, b)``, ``a <= b``."""
    if not g.edges:
        raise EmptyGraphError("graph has no edges")
    d = g.degrees
    counts = Counter(_norm(d[u], d[v]) for u, v in g.edges)
    return dict(sorted(counts.items()))


def degree_extremes(g: Graph) -> DegreeExtremes:
    if g.vertex_count == 0:
        raise EmptyGraphError("graph has no vertices")
    if 0 in g.degrees:
        raise IsolatedVertexError(f"vertex {g.degrees.index(0)} is isolated")
    return DegreeExtremes(min(g.degrees), max(g.degrees))


def is_regular(g: Graph) -> bool:
    return len(set(g.degrees)) <= 1


def is_connected(g: Graph) -> bool:
    if g.vertex_count == 0:
        return True
    adj = g.neighbours()
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.vertex_count


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    e = _norm(u, v)
    if not g.has_edge(*e):
        raise MissingEdgeError(f"{e} is not an edge")
    return Graph(g.vertex_count, tuple(x for x in g.edges if x != e))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    return make_graph(g.vertex_count, g.edges + ((u, v),))


def disjoint_union(*graphs: Graph) -> Graph:
    edges: list[Edge] = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.vertex_count
    return make_graph(offset, edges)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """``g □ h`` with vertex ``(a, x)`` numbered ``a * |V(h)| + x``."""
    if g.vertex_count == 0 or h.vertex_count == 0:
        raise ConstructionError("cartesian product needs nonempty factors")
    nh = h.vertex_count
    edges = [(a * nh + x, a * nh + y) for a in range(g.vertex_count) for x, y in h.edges]
    edges += [(a * nh + x, b * nh + x) for a, b in g.edges for x in range(nh)]
    return make_graph(g.vertex_count * nh, edges)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of ``g`` and ``h`` (``h`` shifted after ``g``) plus every cross edge."""
    if g.vertex_count == 0 or h.vertex_count == 0:
        raise ConstructionError("join needs nonempty graphs")
    ng = g.vertex_count
    union = disjoint_union(g, h)
    cross = [(a, ng + b) for a in range(ng) for b in range(h.vertex_count)]
    return make_graph(union.vertex_count, union.edges + tuple(cross))


def make_link_spec(monomers: Sequence[Graph], anchors: Sequence[Sequence[int]]) -> LinkSpec:
    if len(monomers) < 2:
        raise ConstructionError(f"a link needs at least 2 monomers, got {len(monomers)}")
    if len(anchors) != len(monomers):
        raise ConstructionError("one (x, y) anchor pair per monomer is required")
    pairs = []
    for i, (g, (x, y)) in enumerate(zip(monomers, anchors)):
        if g.vertex_count < 2:
            raise ConstructionError(f"monomer {i} has fewer than 2 vertices")
        for w in (x, y):
            if not 0 <= w < g.vertex_count:
                raise VertexRangeError(f"anchor {w} out of range for monomer {i}")
        if x == y:
            raise ConstructionError(f"monomer {i}: anchors x and y must differ")
        pairs.append((int(x), int(y)))
    return LinkSpec(tuple(monomers), tuple(pairs))


def link(spec: LinkSpec) -> Graph:
    """Disjoint union of the monomers plus bridges ``y_i -- x_{i+1}``."""
    spec = make_link_spec(spec.monomers, spec.anchors)
    offsets = [0]
    for g in spec.monomers:
        offsets.append(offsets[-1] + g.vertex_count)
    union = disjoint_union(*spec.monomers)
    bridges = [
        (offsets[i] + spec.anchors[i][1], offsets[i + 1] + spec.anchors[i + 1][0])
        for i in range(len(spec.monomers) - 1)
    ]
    return make_graph(union.vertex_count, union.edges + tuple(bridges))


def point_attach(
    monomers: Sequence[Graph], identifications: Sequence[tuple[int, int, int, int]]
) -> Graph:
    """Glue monomers by identifying vertex pairs ``(gi, vi) ~ (gj, vj)``.

    The identifications must form a spanning tree over the monomer indices.
    Merged classes are numbered by their smallest original (offset) id, so the
    first monomer keeps its labels.
    """
    k = len(monomers)
    if k == 0:
        raise ConstructionError("no monomers")
    if len(identifications) != k - 1:
        raise ConstructionError(
            f"{k} monomers need exactly {k - 1} identifications, got {len(identifications)}"
        )
    offsets = [0]
    for g in monomers:
        offsets.append(offsets[-1] + g.vertex_count)

    tree = list(range(k))

    def find(p: list[int], a: int) -> int:
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    parent = list(range(offsets[-1]))
    for gi, vi, gj, vj in identifications:
        for gx, vx in ((gi, vi), (gj, vj)):
            if not 0 <= gx < k:
                raise ConstructionError(f"monomer index {gx} out of range")
            if not 0 <= vx < monomers[gx].vertex_count:
                raise VertexRangeError(f"vertex {vx} out of range for monomer {gx}")
        ri, rj = find(tree, gi), find(tree, gj)
        if ri == rj:
            raise ConstructionError("identifications contain a cycle over monomers")
        tree[ri] = rj
        a, b = find(parent, offsets[gi] + vi), find(parent, offsets[gj] + vj)
        lo, hi = min(a, b), max(a, b)
        parent[hi] = lo

    roots = sorted({find(parent, x) for x in range(offsets[-1])})
    new_id = {r: i for i, r in enumerate(roots)}
    edges = [
        (new_id[find(parent, offsets[i] + u)], new_id[find(parent, offsets[i] + v)])
        for i, g in enumerate(monomers)
        for u, v in g.edges
    ]
    return make_graph(len(roots), edges)


def relabel(g: Graph, permutation: Sequence[int]) -> Graph:
    """Rename vertex ``v`` to ``permutation[v]``."""
    perm = [int(p) for p in permutation]
    if sorted(perm) != list(range(g.vertex_count)):
        raise ConstructionError("permutation is not a bijection on the vertex set")
    return make_graph(g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges])
