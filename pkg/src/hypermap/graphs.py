"""Multigraphs with loops and parallel edges: family enumeration up to
isomorphism, automorphism counts, edge-class partitions, and spanning-tree
representatives.

Graphs are stored as a vertex count plus a tuple of unordered edges (u, v)
with u <= v; a loop has u == v.  The reference orientation of a non-loop
edge always runs from the smaller to the larger endpoint, so all edges of a
parallel class share one orientation.

Isomorphism rejection uses the minimal relabeled edge tuple over all
degree-preserving vertex permutations; exact and fast at desk scale
(<= 8 vertices).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .errors import GuardError, InconsistencyError


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple  # tuple of (u, v) with u <= v

    @staticmethod
    def make(vertex_count: int, edges: Sequence) -> "Multigraph":
        norm = tuple(tuple(sorted(e)) for e in edges)
        for u, v in norm:
            if not (0 <= u <= v < vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
        return Multigraph(vertex_count, norm)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> tuple:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1  # a loop contributes 2 at its vertex
        return tuple(deg)

    def betti(self) -> int:
        return self.edge_count - self.vertex_count + 1

    def is_connected(self) -> bool:
        n = self.vertex_count
        if n <= 1:
            return True
        adj = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == n

    def to_json_obj(self, aut: int | None = None, aut_v: int | None = None) -> dict:
        obj = {"v": self.vertex_count, "edges": [list(e) for e in self.edges]}
        if aut is not None:
            obj["aut"] = str(aut)
        if aut_v is not None:
            obj["aut_v"] = str(aut_v)
        return obj

    @staticmethod
    def from_json_obj(obj: dict) -> "Multigraph":
        return Multigraph.make(obj["v"], [tuple(e) for e in obj["edges"]])


@dataclass(frozen=True)
class EdgeClass:
    """One block of the edge partition: 'single' (a lone non-loop edge),
    'parallel' (>= 2 edges between the same two vertices), or 'loop' (all
    loops at one vertex)."""

    kind: str
    edges: tuple  # indices into Multigraph.edges
    vertices: tuple  # (u, v) with u < v for non-loops, (v,) for loops

    @property
    def size(self) -> int:
        return len(self.edges)


def edge_classes(g: Multigraph) -> tuple:
    """The single/parallel/loop partition of the edge set, ordered by
    incident vertices (deterministic)."""
    groups: dict = {}
    for idx, (u, v) in enumerate(g.edges):
        groups.setdefault((u, v), []).append(idx)
    classes = []
    for (u, v), idxs in sorted(groups.items()):
        if u == v:
            classes.append(EdgeClass("loop", tuple(idxs), (u,)))
        elif len(idxs) == 1:
            classes.append(EdgeClass("single", tuple(idxs), (u, v)))
        else:
            classes.append(EdgeClass("parallel", tuple(idxs), (u, v)))
    return tuple(classes)


# -- isomorphism and automorphisms ------------------------------------------


def _degree_class_perms(degrees: tuple) -> Iterator[tuple]:
    """All vertex permutations mapping each vertex to one of equal degree.
    Isomorphisms and automorphisms preserve degrees, so this set suffices."""
    n = len(degrees)
    cells: dict = {}
    for v, d in enumerate(degrees):
        cells.setdefault(d, []).append(v)
    cell_lists = list(cells.values())
    for images in itertools.product(*(itertools.permutations(c) for c in cell_lists)):
        perm = [0] * n
        for cell, image in zip(cell_lists, images):
            for src, dst in zip(cell, image):
                perm[src] = dst
        yield tuple(perm)


def _relabel(edges: tuple, perm: tuple) -> tuple:
    return tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))


@lru_cache(maxsize=None)
def canonical_form(g: Multigraph) -> tuple:
    """Minimal relabeled edge tuple; equal iff two graphs (with equal vertex
    counts) are isomorphic."""
    degrees = g.degrees()
    best = None
    for perm in _degree_class_perms(degrees):
        cand = _relabel(g.edges, perm)
        if best is None or cand < best:
            best = cand
    return (g.vertex_count, best)


def aut_v_subgroup_order(g: Multigraph) -> int:
    """Order of the subgroup of automorphisms acting trivially on vertices:
    permutations of parallel edges, and permutations and flips of loops."""
    order = 1
    for cls in edge_classes(g):
        if cls.kind == "loop":
            order *= 2 ** cls.size * factorial(cls.size)
        else:
            order *= factorial(cls.size)
    return order


@lru_cache(maxsize=None)
def aut_orders(g: Multigraph) -> tuple:
    """(|Aut G|, |Aut_v G|) where Aut_v is the quotient acting on vertices.

    |Aut_v| equals the number of vertex permutations preserving all edge
    multiplicities (loops included); |Aut| is that times the order of the
    vertex-fixing subgroup.  The divisibility is exact by construction.
    """
    degrees = g.degrees()
    mult: dict = {}
    for e in g.edges:
        mult[e] = mult.get(e, 0) + 1
    count = 0
    for perm in _degree_class_perms(degrees):
        ok = True
        for (u, v), m in mult.items():
            if mult.get(tuple(sorted((perm[u], perm[v]))), 0) != m:
                ok = False
                break
        if ok:
            count += 1
    aut_v = count
    if aut_v < 1:
        raise InconsistencyError("identity permutation not counted")
    return aut_v * aut_v_subgroup_order(g), aut_v


# -- enumeration --------------------------------------------------------


def _partitions_fixed_length(total: int, parts: int, max_part: int) -> Iterator[tuple]:
    """Non-increasing sequences of `parts` integers >= 1 summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = -(-total // parts)  # ceil: head must be >= average to stay sorted
    for head in range(min(total - parts + 1, max_part), lo - 1, -1):
        for rest in _partitions_fixed_length(total - head, parts - 1, head):
            yield (head,) + rest


def _realizations(degrees: tuple) -> Iterator[tuple]:
    """All labeled edge multisets realizing the given degree sequence.
    Vertices are processed in order; loops are placed before edges to
    higher-indexed vertices."""
    n = len(degrees)
    residual = list(degrees)
    edges: list = []

    def place_vertex(i: int):
        if i == n:
            yield tuple(edges)
            return
        r = residual[i]
        for loops in range(r // 2 + 1):
            edges.extend([(i, i)] * loops)
            yield from distribute(i, i + 1, r - 2 * loops)
            del edges[len(edges) - loops :]

    def distribute(i: int, j: int, t: int):
        if t == 0:
            yield from place_vertex(i + 1)
            return
        if j >= n:
            return
        cap = min(t, residual[j])
        for m in range(cap + 1):
            residual[j] -= m
            edges.extend([(i, j)] * m)
            yield from distribute(i, j + 1, t - m)
            del edges[len(edges) - m :]
            residual[j] += m

    yield from place_vertex(0)


@lru_cache(maxsize=None)
def connected_multigraphs(v: int, e: int) -> tuple:
    """All isomorphism classes of connected multigraphs with v vertices and
    e edges (loops and parallel edges allowed)."""
    if v < 1 or e < 0:
        raise ValueError("need v >= 1 and e >= 0")
    if e < v - 1:
        return ()
    if v == 1:
        deg_seqs: list = [(2 * e,)] if e else [(0,)]
    else:
        deg_seqs = list(_partitions_fixed_length(2 * e, v, 2 * e))
    seen = {}
    for degrees in deg_seqs:
        for edges in _realizations(degrees):
            g = Multigraph(v, tuple(sorted(edges)))
            if not g.is_connected():
                continue
            key = canonical_form(g)
            if key not in seen:
                seen[key] = g
    return tuple(seen[k] for k in sorted(seen))


def enumerate_gamma_r(r: int) -> tuple:
    """Connected multigraphs with exactly r edges and any number of vertices,
    one per isomorphism class, with (graph, |Aut|, |Aut_v|)."""
    if not 1 <= r <= 5:
        raise GuardError("edge-count family guarded to 1 <= r <= 5", r=r)
    out = []
    for v in range(1, r + 2):
        for g in connected_multigraphs(v, r):
            aut, aut_v = aut_orders(g)
            out.append((g, aut, aut_v))
    return tuple(out)


def enumerate_min_degree3(g: int, allow_large: bool = False) -> tuple:
    """Connected multigraphs with first Betti number g and every vertex of
    degree >= 3, with (graph, |Aut|).  Finite: at most 2g-2 vertices."""
    if g < 2:
        raise GuardError("minimum-degree-3 family requires g >= 2", g=g)
    if g > (5 if allow_large else 4):
        raise GuardError(
            "minimum-degree-3 family guarded to g <= 4 (g = 5 with allow_large)", g=g
        )
    out = []
    for v in range(1, 2 * g - 1):
        for graph in connected_multigraphs(v, v + g - 1):
            if min(graph.degrees()) >= 3:
                out.append((graph, aut_orders(graph)[0]))
    return tuple(out)


def enumerate_gamma_g_bounded(g: int, vmax: int, allow_large: bool = False) -> tuple:
    """Connected multigraphs with first Betti number g and at most vmax
    vertices, with (graph, |Aut_v|).  For g = 0 the single-vertex empty
    graph is omitted (it has no edges to walk)."""
    if g < 0:
        raise ValueError("g must be >= 0")
    if vmax > 8 and not allow_large:
        raise GuardError("bounded Betti family guarded to vmax <= 8", vmax=vmax)
    vmin = 2 if g == 0 else 1
    out = []
    for v in range(vmin, vmax + 1):
        for graph in connected_multigraphs(v, v + g - 1):
            out.append((graph, aut_orders(graph)[1]))
    return tuple(out)


# -- spanning trees -----------------------------------------------------


@dataclass(frozen=True)
class SpanningTreeRep:
    """A spanning tree representative (one tree per orbit under permuting
    edges within parallel classes), oriented toward the root.

    ``oriented``: tuple of (edge_index, matches_reference) sorted by edge
    index, where matches_reference is True when the rootward direction of the
    edge agrees with the reference orientation (small -> large endpoint).
    """

    edge_indices: tuple
    root: int
    oriented: tuple

    def matches_reference(self, edge_index: int) -> bool:
        for idx, flag in self.oriented:
            if idx == edge_index:
                return flag
        raise KeyError(f"edge {edge_index} not in this spanning tree")


def spanning_tree_reps(g: Multigraph, root: int = 0) -> tuple:
    """Spanning trees modulo parallel-edge permutation, each using the
    least-index edge of its class and oriented toward the root."""
    if not g.is_connected():
        raise ValueError("spanning trees require a connected graph")
    n = g.vertex_count
    nonloop = [c for c in edge_classes(g) if c.kind != "loop"]
    reps = []
    for subset in itertools.combinations(range(len(nonloop)), n - 1):
        # union-find acyclicity check
        uf = list(range(n))

        def find(x):
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        ok = True
        for ci in subset:
            u, v = nonloop[ci].vertices
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            uf[ru] = rv
        if not ok:
            continue
        chosen = [nonloop[ci] for ci in subset]
        edge_idxs = tuple(min(c.edges) for c in chosen)
        # orient toward root via BFS on the tree
        adj: dict = {v: [] for v in range(n)}
        for c, ei in zip(chosen, edge_idxs):
            u, v = c.vertices
            adj[u].append((v, ei))
            adj[v].append((u, ei))
        seen = {root}
        queue = [root]
        oriented = {}
        while queue:
            x = queue.pop()
            for y, ei in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    # edge points from child y toward parent x
                    u, v = g.edges[ei]
                    oriented[ei] = y == u
        reps.append(
            SpanningTreeRep(edge_idxs, root, tuple(sorted(oriented.items())))
        )
    return tuple(reps)
