"""Slow, independent reference implementations used to cross-check the package."""

from __future__ import annotations

import itertools

from stranded.graph import Port, StrandedGraph, corner_color


def _edge_partner(slot: int, D: int) -> int:
    return D + 1 - slot


def _vertex_pairs(D: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    n = D + 1
    pairs = []
    for c in range(n):
        pairs.append(((c, D), ((c + 1) % n, 1)))
        if D == 3:
            if c < 2:
                pairs.append(((c, 2), (c + 2, 2)))
        else:
            pairs.append(((c, D - 1), ((c + 2) % n, 2)))
    return pairs


def union_find_faces(graph: StrandedGraph) -> list[set]:
    """Faces as sets of (port, slot) addresses, via union-find over all joins."""
    D = graph.dimension
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for v, _ in graph.vertices:
        for (c1, s1), (c2, s2) in _vertex_pairs(D):
            union((Port(v, c1), s1), (Port(v, c2), s2))
    for e in graph.edges:
        for s in range(1, D + 1):
            union((e.source, s), (e.target, _edge_partner(s, D)))
    groups: dict = {}
    for x in list(parent):
        groups.setdefault(find(x), set()).add(x)
    return list(groups.values())


def brute_multi_orientable(graph: StrandedGraph) -> bool:
    """Try every vertex phase; corner c is '+' iff c + phase is even."""
    verts = [v for v, _ in graph.vertices]
    for phases in itertools.product((0, 1), repeat=len(verts)):
        ph = dict(zip(verts, phases))

        def sign(p: Port) -> int:
            return (p.corner + ph[p.vertex]) % 2

        if all(sign(e.source) != sign(e.target) for e in graph.edges):
            return True
    return False


def brute_colorable(graph: StrandedGraph) -> bool:
    """Try every kind and color offset per vertex."""
    verts = [v for v, _ in graph.vertices]
    for kinds in itertools.product("AB", repeat=len(verts)):
        kd = dict(zip(verts, kinds))
        if any(kd[e.source.vertex] == kd[e.target.vertex] for e in graph.edges):
            continue
        for offsets in itertools.product(range(4), repeat=len(verts)):
            off = dict(zip(verts, offsets))

            def col(p: Port) -> int:
                return corner_color(kd[p.vertex], p.corner, off[p.vertex])

            if all(col(e.source) == col(e.target) for e in graph.edges):
                return True
    return False


def brute_iso_key(graph: StrandedGraph) -> tuple:
    """Least relabeled description over all vertex orders and allowed rotations."""
    model = graph.model
    n = model.corners_per_vertex
    verts = [v for v, _ in graph.vertices]
    kinds = graph.kinds
    best = None
    for perm in itertools.permutations(range(len(verts))):
        idx = dict(zip(verts, perm))
        for rots in itertools.product(*(model.rotations(kinds[v]) for v in verts)):
            rot = dict(zip(verts, rots))

            def mv(p: Port) -> tuple[int, int]:
                return (idx[p.vertex], (p.corner - rot[p.vertex]) % n)

            edges = tuple(sorted((tuple(sorted((mv(e.source), mv(e.target)))), e.color or -1) for e in graph.edges))
            legs = tuple(sorted(mv(leg.port) for leg in graph.externals))
            kk = tuple(sorted((idx[v], kinds[v]) for v in verts))
            key = (kk, edges, legs)
            if best is None or key < best:
                best = key
    return best
