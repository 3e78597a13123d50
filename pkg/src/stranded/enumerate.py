"""Wick-contraction enumeration of stranded graphs and canonical forms.

Enumeration is labeled first: vertices are ``0..n-1``, every vertex-kind
assignment is tried, external legs are chosen as a set of ports and the
remaining corners are perfectly matched into edges. Deduplication is an
optional view on top, keyed by :func:`canonical_form`.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass, field

from .errors import BudgetExceededError, UnpairableError
from .graph import Edge, Port, StrandedGraph, build_graph, connectivity_report, corner_color
from .models import ModelSpec, budget_factor, get_model

__all__ = [
    "EnumerationRequest",
    "CanonicalForm",
    "CensusRow",
    "enumerate_graphs",
    "canonical_form",
    "census",
    "estimate_candidates",
    "ENUMERATION_BUDGET",
]

# labeled candidates (kind assignments x leg choices x matchings) per request
ENUMERATION_BUDGET = 10**6

FILTERS = ("connected", "one_pi", "dedupe")


@dataclass(frozen=True)
class EnumerationRequest:
    model: ModelSpec
    n_vertices: int
    n_external: int
    filters: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "model", get_model(self.model))
        object.__setattr__(self, "filters", frozenset(self.filters))
        bad = self.filters - set(FILTERS)
        if bad:
            raise ValueError(f"unknown filters {sorted(bad)}")
        if self.n_vertices < 0 or self.n_external < 0:
            raise UnpairableError("vertex and leg counts must be non-negative")
        free = self.model.corners_per_vertex * self.n_vertices - self.n_external
        if free < 0 or free % 2:
            raise UnpairableError(
                f"{self.n_vertices} vertices of valence {self.model.corners_per_vertex} "
                f"cannot leave {self.n_external} legs with the rest paired"
            )


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def estimate_candidates(req: EnumerationRequest) -> int:
    """Upper bound on labeled candidates visited by :func:`enumerate_graphs`."""
    ports = req.model.corners_per_vertex * req.n_vertices
    kinds = len(req.model.kind_names) ** req.n_vertices
    return kinds * math.comb(ports, req.n_external) * _double_factorial(ports - req.n_external - 1)


def _compatible(model: ModelSpec, kinds: dict, a: Port, b: Port) -> tuple[Port, Port, int | None] | None:
    """Oriented (source, target, color) for an admissible edge, else ``None``."""
    ka, kb = kinds[a.vertex], kinds[b.vertex]
    if model.signed:
        sa, sb = model.corner_sign(ka, a.corner), model.corner_sign(kb, b.corner)
        if sa == sb:
            return None
        return (a, b, None) if sa == "+" else (b, a, None)
    if model.colored:
        if ka == kb:
            return None
        ca, cb = corner_color(ka, a.corner, 0), corner_color(kb, b.corner, 0)
        if ca != cb:
            return None
        return (a, b, ca) if ka == "A" else (b, a, ca)
    return (a, b, None)


def _matchings(ports: list[Port], ok) -> Iterator[list[tuple[Port, Port, int | None]]]:
    if not ports:
        yield []
        return
    first, rest = ports[0], ports[1:]
    for i, other in enumerate(rest):
        edge = ok(first, other)
        if edge is None:
            continue
        for tail in _matchings(rest[:i] + rest[i + 1 :], ok):
            yield [edge] + tail


def _kind_assignments(model: ModelSpec, n: int) -> Iterator[tuple[str, ...]]:
    if model.default_kind is not None:
        yield (model.default_kind,) * n
    else:
        yield from itertools.product(model.kind_names, repeat=n)


def enumerate_graphs(req: EnumerationRequest) -> Iterator[StrandedGraph]:
    """Yield every admissible labeled graph, optionally filtered.

    Emission order is deterministic: kind assignments in product order, leg
    sets in combination order, matchings pairing the lowest free port first.
    With ``dedupe`` the first representative of each class is kept.
    """
    budget = ENUMERATION_BUDGET * budget_factor()
    est = estimate_candidates(req)
    if est > budget:
        raise BudgetExceededError(f"about {est} labeled candidates exceed the enumeration budget {budget}")
    model = req.model
    n = model.corners_per_vertex
    ports = [Port(v, c) for v in range(req.n_vertices) for c in range(n)]
    seen: set[CanonicalForm] = set()
    for kinds_t in _kind_assignments(model, req.n_vertices):
        kinds = dict(enumerate(kinds_t))
        verts = list(enumerate(kinds_t))

        def ok(a: Port, b: Port, kinds=kinds):
            return _compatible(model, kinds, a, b)

        for legs in itertools.combinations(ports, req.n_external):
            leg_set = set(legs)
            free = [p for p in ports if p not in leg_set]
            for match in _matchings(free, ok):
                edges = [Edge(i + 1, s, t, col) for i, (s, t, col) in enumerate(match)]
                g = build_graph(model, verts, edges, [(p, f"e{j + 1}") for j, p in enumerate(legs)])
                if "connected" in req.filters or "one_pi" in req.filters:
                    conn, one_pi = connectivity_report(g)
                    if not conn or ("one_pi" in req.filters and not one_pi):
                        continue
                if "dedupe" in req.filters:
                    key = canonical_form(g)
                    if key in seen:
                        continue
                    seen.add(key)
                yield g


# ---------------------------------------------------------------------------
# canonical forms


@dataclass(frozen=True, order=True)
class CanonicalForm:
    encoding: bytes

    def hex(self) -> str:
        return self.encoding.hex()


def _component_code(graph: StrandedGraph, root, rot0: int) -> tuple:
    model = graph.model
    n = model.corners_per_vertex
    kinds = graph.kinds
    use = graph.port_use
    order = {root: 0}
    rot = {root: rot0}
    queue = [root]
    code = []
    i = 0
    while i < len(queue):
        v = queue[i]
        i += 1
        row = [kinds[v]]
        for c in range(n):
            actual = Port(v, (c + rot[v]) % n)
            what, idx = use[actual]
            if what == "ext":
                row.append(("x",))
                continue
            e = graph.edges[idx]
            far = graph.other_end(e, actual)
            w = far.vertex
            if w not in order:
                # the allowed rotation putting the entry corner lowest
                choices = model.rotations(kinds[w])
                rot[w] = min(choices, key=lambda r: (far.corner - r) % n)
                order[w] = len(queue)
                queue.append(w)
            color = -1 if e.color is None else e.color
            row.append(("e", order[w], (far.corner - rot[w]) % n, color))
        code.append(tuple(row))
    return tuple(code), frozenset(order)


def canonical_form(graph: StrandedGraph) -> CanonicalForm:
    """Encoding invariant under vertex relabeling and allowed corner rotations.

    Each connected component is encoded by a breadth-first walk from every
    (vertex, allowed rotation) root and the least code is kept; component
    codes are sorted. Edge direction and external labels are not encoded
    (direction is implied by the signs in signed models).
    """
    remaining = [v for v, _ in graph.vertices]
    comps = []
    while remaining:
        start = remaining[0]
        _, members = _component_code(graph, start, 0)
        best = None
        for v in remaining:
            if v not in members:
                continue
            for r in graph.model.rotations(graph.kinds[v]):
                code, _ = _component_code(graph, v, r)
                if best is None or code < best:
                    best = code
        comps.append(best)
        remaining = [v for v in remaining if v not in members]
    comps.sort()
    return CanonicalForm(repr(tuple(comps)).encode())


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class CensusRow:
    order: int
    total: int
    colorable: int
    mo_only: int
    neither: int


def census(model: ModelSpec | str, max_vertices: int, legs: int, connected: bool = True) -> list[CensusRow]:
    """Deduplicated counts per order, split by colorability and multi-orientability.

    Orders that cannot be paired with ``legs`` legs are skipped. Order 0 is
    never listed.
    """
    from .structure import check_colorable, check_multi_orientable, forget

    model = get_model(model)
    rows = []
    for n in range(1, max_vertices + 1):
        try:
            req = EnumerationRequest(model, n, legs, frozenset({"dedupe", "connected"} if connected else {"dedupe"}))
        except UnpairableError:
            continue
        tally = {"colorable": 0, "mo_only": 0, "neither": 0}
        total = 0
        for g in enumerate_graphs(req):
            base = g if model.name == "boulatov3d" else forget(g)
            total += 1
            if check_colorable(base) is not None:
                if check_multi_orientable(base) is None:
                    raise AssertionError("colorable graph that is not multi-orientable")
                tally["colorable"] += 1
            elif check_multi_orientable(base) is not None:
                tally["mo_only"] += 1
            else:
                tally["neither"] += 1
        rows.append(CensusRow(n, total, **tally))
    return rows
