"""Stranded Feynman graphs: construction, face tracing, jackets, broken faces.

A vertex has ``D + 1`` cyclically ordered corners; every corner is a field
with ``D`` slots (arguments). Strand segments join slots pairwise: inside a
vertex according to the interaction kernel, along an edge with the mirror
convention ``slot i <-> slot D + 1 - i``. Faces are the connected strand
paths.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, NamedTuple

from .errors import (
    BadCornerIndexError,
    ColorViolationError,
    DanglingCornerError,
    GraphError,
    NoExternalLegsError,
    PortReusedError,
    SignMismatchError,
    UnsupportedDimensionError,
)
from .models import ModelSpec, get_model

__all__ = [
    "Port",
    "Edge",
    "ExternalLeg",
    "StrandedGraph",
    "StrandSegment",
    "Face",
    "FaceSet",
    "Jacket",
    "BrokenFaces",
    "build_graph",
    "vertex_strand_pairs",
    "edge_slot_partner",
    "vertex_segment_labels",
    "slot_class",
    "trace_faces",
    "jacket",
    "broken_face_count",
    "connectivity_report",
    "corner_color",
    "strand_labels_for",
]


class Port(NamedTuple):
    vertex: Hashable
    corner: int

    def __str__(self) -> str:
        return f"{self.vertex}.{self.corner}"


@dataclass(frozen=True)
class Edge:
    id: Hashable
    source: Port
    target: Port
    color: int | None = None
    holonomy: str | None = None

    @property
    def symbol(self) -> str:
        return self.holonomy if self.holonomy is not None else f"h{self.id}"


@dataclass(frozen=True)
class ExternalLeg:
    port: Port
    strand_labels: tuple[str, ...]


def strand_labels_for(label: str, dimension: int) -> tuple[str, ...]:
    """Per-slot external symbols derived from a single leg label."""
    return tuple(f"{label}_{s}" for s in range(1, dimension + 1))


@dataclass(frozen=True)
class StrandedGraph:
    model: ModelSpec
    vertices: tuple[tuple[Hashable, str], ...]
    edges: tuple[Edge, ...]
    externals: tuple[ExternalLeg, ...]

    @property
    def dimension(self) -> int:
        return self.model.dimension

    @property
    def is_vacuum(self) -> bool:
        return not self.externals

    @cached_property
    def vertex_index(self) -> dict[Hashable, int]:
        return {v: i for i, (v, _) in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict[Hashable, int]:
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def kinds(self) -> dict[Hashable, str]:
        return dict(self.vertices)

    @cached_property
    def port_use(self) -> dict[Port, tuple[str, int]]:
        """Port -> ("edge", edge index) or ("ext", leg index)."""
        use: dict[Port, tuple[str, int]] = {}
        for i, e in enumerate(self.edges):
            use[e.source] = ("edge", i)
            use[e.target] = ("edge", i)
        for j, leg in enumerate(self.externals):
            use[leg.port] = ("ext", j)
        return use

    def port_key(self, port: Port) -> tuple[int, int]:
        return (self.vertex_index[port.vertex], port.corner)

    def sign(self, port: Port) -> str | None:
        return self.model.corner_sign(self.kinds[port.vertex], port.corner)

    def other_end(self, edge: Edge, port: Port) -> Port:
        return edge.target if port == edge.source else edge.source

    def external_symbols(self) -> list[str]:
        return [s for leg in self.externals for s in leg.strand_labels]

    def holonomy_symbols(self) -> list[str]:
        return [e.symbol for e in self.edges]


# ---------------------------------------------------------------------------
# strand kernels


@lru_cache(maxsize=None)
def vertex_strand_pairs(kind: str | None, dimension: int) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    """Return the vertex strand pairs ``((corner, slot), (corner, slot))``.

    The pairing is the same for every vertex kind: the last slot of corner
    ``i`` meets the first slot of corner ``i + 1``; for ``D = 3`` the middle
    slots of opposite corners meet, for ``D = 4`` slot 3 of corner ``i``
    meets slot 2 of corner ``i + 2``.
    """
    del kind
    if dimension not in (3, 4):
        raise UnsupportedDimensionError(f"dimension must be 3 or 4, got {dimension}")
    n = dimension + 1
    pairs = set()
    for i in range(n):
        pairs.add(tuple(sorted([(i, dimension), ((i + 1) % n, 1)])))
        pairs.add(tuple(sorted([(i, dimension - 1), ((i + 2) % n, 2)])))
    return tuple(sorted(pairs))


@lru_cache(maxsize=None)
def _vertex_partner(dimension: int) -> dict[tuple[int, int], tuple[int, int]]:
    partner = {}
    for a, b in vertex_strand_pairs(None, dimension):
        partner[a] = b
        partner[b] = a
    return partner


def edge_slot_partner(slot: int, dimension: int) -> int:
    return dimension + 1 - slot


@lru_cache(maxsize=None)
def vertex_segment_labels(dimension: int) -> dict[tuple[int, int], str]:
    """Name each vertex strand ``g1, g2, ...`` by first appearance.

    Corners are read in order with their slots as arguments, so for ``D = 3``
    this reproduces ``phi(g1,g2,g3) phi(g3,g4,g5) phi(g5,g2,g6) phi(g6,g4,g1)``.
    The returned mapping is keyed by both addresses of every pair.
    """
    partner = _vertex_partner(dimension)
    names: dict[tuple[int, int], str] = {}
    for c in range(dimension + 1):
        for s in range(1, dimension + 1):
            if (c, s) not in names:
                name = f"g{len(names) // 2 + 1}"
                names[(c, s)] = name
                names[partner[(c, s)]] = name
    return names


def slot_class(slot: int, dimension: int) -> str:
    return "outer" if slot in (1, dimension) else "middle"


def corner_color(kind: str, corner: int, offset: int) -> int:
    """Color carried by ``corner`` of a colored vertex with rotation ``offset``."""
    if kind == "A":
        return (corner + offset) % 4
    return (offset - corner) % 4


# ---------------------------------------------------------------------------
# construction


def _as_port(p: Any) -> Port:
    if isinstance(p, Port):
        return p
    if isinstance(p, str) and "." in p:
        v, c = p.rsplit(".", 1)
        return Port(v, int(c))
    v, c = p
    return Port(v, int(c))


def _as_edge(raw: Any, index: int) -> Edge:
    if isinstance(raw, Edge):
        return raw
    if isinstance(raw, dict):
        return Edge(
            raw.get("id", index),
            _as_port(raw["source"]),
            _as_port(raw["target"]),
            raw.get("color"),
            raw.get("holonomy"),
        )
    raw = tuple(raw)
    color = raw[2] if len(raw) > 2 else None
    return Edge(index, _as_port(raw[0]), _as_port(raw[1]), color)


def _as_leg(raw: Any, index: int, dimension: int) -> ExternalLeg:
    if isinstance(raw, ExternalLeg):
        return raw
    if isinstance(raw, dict):
        port, labels = raw["port"], raw.get("strand_labels", raw.get("label"))
    elif isinstance(raw, Port) or (isinstance(raw, tuple) and len(raw) == 2 and isinstance(raw[1], int)):
        port, labels = raw, None
    else:
        port, labels = raw
    if labels is None:
        labels = f"e{index}"
    if isinstance(labels, str):
        labels = strand_labels_for(labels, dimension)
    return ExternalLeg(_as_port(port), tuple(labels))


def build_graph(
    model: ModelSpec | str,
    vertices: Iterable[Any],
    edges: Iterable[Any] = (),
    externals: Iterable[Any] = (),
) -> StrandedGraph:
    """Validate and assemble a :class:`StrandedGraph`.

    ``vertices`` holds ids or ``(id, kind)`` pairs. ``edges`` holds
    :class:`Edge` objects or ``(source, target[, color])`` tuples with ports
    given as ``(vertex, corner)`` or ``"v.c"``. ``externals`` holds
    :class:`ExternalLeg` objects, bare ports, or ``(port, label)`` pairs; a
    single label expands to one symbol per slot.
    """
    model = get_model(model)
    D = model.dimension
    n = model.corners_per_vertex

    verts: list[tuple[Hashable, str]] = []
    seen_v: set[Hashable] = set()
    for raw in vertices:
        if isinstance(raw, tuple) and len(raw) == 2:
            vid, kind = raw
        else:
            vid, kind = raw, None
        if kind is None:
            kind = model.default_kind
            if kind is None:
                raise GraphError(f"vertex {vid}: model {model.name} requires a kind {model.kind_names}")
        if kind not in model.kind_names:
            raise GraphError(f"vertex {vid}: unknown kind {kind!r} for model {model.name}")
        if vid in seen_v:
            raise GraphError(f"duplicate vertex id {vid!r}")
        seen_v.add(vid)
        verts.append((vid, kind))
    kinds = dict(verts)

    def check_port(p: Port, what: str) -> None:
        if p.vertex not in kinds:
            raise GraphError(f"{what}: unknown vertex {p.vertex!r}")
        if not 0 <= p.corner < n:
            raise BadCornerIndexError(f"{what}: corner {p.corner} out of range 0..{n - 1}")

    used: dict[Port, str] = {}

    def claim(p: Port, what: str) -> None:
        if p in used:
            raise PortReusedError(f"{what}: port {p} already used by {used[p]}")
        used[p] = what

    edge_list = [_as_edge(raw, i) for i, raw in enumerate(edges)]
    ext_list = [_as_leg(raw, j, D) for j, raw in enumerate(externals)]

    ids = [e.id for e in edge_list]
    if len(set(ids)) != len(ids):
        raise GraphError("duplicate edge id")

    for e in edge_list:
        what = f"edge {e.id}"
        check_port(e.source, what)
        check_port(e.target, what)
        if e.source == e.target:
            raise GraphError(f"{what}: joins port {e.source} to itself")
        claim(e.source, what)
        claim(e.target, what)
        if model.signed:
            s1 = model.corner_sign(kinds[e.source.vertex], e.source.corner)
            s2 = model.corner_sign(kinds[e.target.vertex], e.target.corner)
            if s1 == s2:
                raise SignMismatchError(f"{what}: joins two {s1!r} corners")
            if s1 != "+":
                raise SignMismatchError(f"{what}: must run from a '+' corner to a '-' corner")
        if model.colored:
            if kinds[e.source.vertex] == kinds[e.target.vertex]:
                raise ColorViolationError(f"{what}: joins two vertices of the same kind (graph must be bipartite)")
            if e.color is None or e.color not in range(4):
                raise ColorViolationError(f"{what}: needs a color in 0..3")
        elif e.color is not None:
            raise ColorViolationError(f"{what}: colors are only allowed in colored3d")

    if model.colored:
        offsets: dict[Hashable, int] = {}
        for e in edge_list:
            for p in (e.source, e.target):
                kind = kinds[p.vertex]
                r = (e.color - p.corner) % 4 if kind == "A" else (e.color + p.corner) % 4
                if offsets.setdefault(p.vertex, r) != r:
                    raise ColorViolationError(f"vertex {p.vertex}: edge colors break the cyclic color order")

    labels: set[str] = set()
    for j, leg in enumerate(ext_list):
        what = f"external leg {j}"
        check_port(leg.port, what)
        claim(leg.port, what)
        if len(leg.strand_labels) != D:
            raise GraphError(f"{what}: needs {D} strand labels, got {len(leg.strand_labels)}")
        for s in leg.strand_labels:
            if s in labels:
                raise GraphError(f"{what}: strand label {s!r} reused")
            labels.add(s)

    for e in edge_list:
        if e.symbol in labels:
            raise GraphError(f"edge {e.id}: holonomy symbol {e.symbol!r} collides with an external label")
        labels.add(e.symbol)
    if len({e.symbol for e in edge_list}) != len(edge_list):
        raise GraphError("duplicate holonomy symbol")

    for vid, _ in verts:
        for c in range(n):
            if Port(vid, c) not in used:
                raise DanglingCornerError(f"corner {vid}.{c} is neither an edge end nor an external leg")

    return StrandedGraph(model, tuple(verts), tuple(edge_list), tuple(ext_list))


# ---------------------------------------------------------------------------
# faces

Address = tuple[Port, int]


@dataclass(frozen=True)
class StrandSegment:
    kind: str  # "vertex" or "edge"
    owner: Hashable
    ends: tuple[Address, Address]

    @property
    def key(self) -> tuple[str, Hashable, frozenset]:
        return (self.kind, self.owner, frozenset(self.ends))


@dataclass(frozen=True)
class Face:
    closed: bool
    segments: tuple[StrandSegment, ...]
    edge_passes: tuple[tuple[Hashable, int], ...]
    slot_class: str
    boundary_symbols: tuple[str, str] | None = None
    boundary_legs: tuple[int, int] | None = None
    vertex_labels: tuple[str, ...] = field(default=())

    def passes(self, edge_id: Hashable) -> int:
        return sum(1 for e, _ in self.edge_passes if e == edge_id)


@dataclass(frozen=True)
class FaceSet:
    faces: tuple[Face, ...]

    @property
    def internal_count(self) -> int:
        return sum(f.closed for f in self.faces)

    @property
    def open_count(self) -> int:
        return sum(not f.closed for f in self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def canonical(self) -> frozenset:
        """Faces as sets of segment keys, independent of traversal choices."""
        return frozenset(frozenset(s.key for s in f.segments) for f in self.faces)


def _walk(graph: StrandedGraph, start: Address, partner, labels) -> tuple[list, list, list, Address | None]:
    """Follow a strand from ``start`` through a vertex segment first.

    Returns (segments, edge passes, vertex labels, terminal external address);
    the terminal is ``None`` for a closed face.
    """
    D = graph.dimension
    segments: list[StrandSegment] = []
    passes: list[tuple[Hashable, int]] = []
    vlabels: list[str] = []
    a = start
    while True:
        port, slot = a
        c2, s2 = partner[(port.corner, slot)]
        b = (Port(port.vertex, c2), s2)
        segments.append(StrandSegment("vertex", port.vertex, (a, b)))
        vlabels.append(labels[(port.corner, slot)])
        use = graph.port_use[b[0]]
        if use[0] == "ext":
            return segments, passes, vlabels, b
        edge = graph.edges[use[1]]
        far = graph.other_end(edge, b[0])
        c = (far, edge_slot_partner(b[1], D))
        segments.append(StrandSegment("edge", edge.id, (b, c)))
        passes.append((edge.id, 1 if b[0] == edge.source else -1))
        if c == start:
            return segments, passes, vlabels, None
        a = c


def trace_faces(graph: StrandedGraph, *, reverse: bool = False) -> FaceSet:
    """Partition all strand segments of ``graph`` into faces.

    Open faces are traced from their lowest external endpoint (leg order,
    then slot); closed faces from their lowest address, leaving through its
    vertex segment. ``reverse`` flips the visitation order and exists to
    check that the partition does not depend on it.
    """
    D = graph.dimension
    partner = _vertex_partner(D)
    labels = vertex_segment_labels(D)
    visited: set[tuple] = set()
    faces: list[Face] = []

    ext_starts = [(j, s) for j in range(len(graph.externals)) for s in range(1, D + 1)]
    if reverse:
        ext_starts.reverse()
    ext_of = {leg.port: j for j, leg in enumerate(graph.externals)}
    for j, s in ext_starts:
        leg = graph.externals[j]
        start = (leg.port, s)
        if ("vertex", start) in visited:
            continue
        segs, passes, vl, end = _walk(graph, start, partner, labels)
        for seg in segs:
            if seg.kind == "vertex":
                visited.add(("vertex", seg.ends[0]))
                visited.add(("vertex", seg.ends[1]))
        j_out = ext_of[end[0]]
        faces.append(
            Face(
                closed=False,
                segments=tuple(segs),
                edge_passes=tuple(passes),
                slot_class=slot_class(s, D),
                boundary_symbols=(leg.strand_labels[s - 1], graph.externals[j_out].strand_labels[end[1] - 1]),
                boundary_legs=(j, j_out),
                vertex_labels=tuple(vl),
            )
        )

    addresses = [
        (Port(v, c), s)
        for v, _ in graph.vertices
        for c in range(D + 1)
        for s in range(1, D + 1)
    ]
    if reverse:
        addresses.reverse()
    for a in addresses:
        if ("vertex", a) in visited:
            continue
        segs, passes, vl, end = _walk(graph, a, partner, labels)
        assert end is None
        for seg in segs:
            if seg.kind == "vertex":
                visited.add(("vertex", seg.ends[0]))
                visited.add(("vertex", seg.ends[1]))
        faces.append(
            Face(
                closed=True,
                segments=tuple(segs),
                edge_passes=tuple(passes),
                slot_class=slot_class(a[1], D),
                vertex_labels=tuple(vl),
            )
        )
    if reverse:
        faces.reverse()
    return FaceSet(tuple(faces))


# ---------------------------------------------------------------------------
# jackets and broken faces


@dataclass(frozen=True)
class Jacket:
    """Ribbon graph left after deleting every middle strand."""

    vertices: tuple[Hashable, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    components: int
    euler: int | None
    genus: int | None

    @property
    def closed_faces(self) -> int:
        return sum(f.closed for f in self.faces)


def _components(graph: StrandedGraph, skip_edge: int | None = None) -> int:
    parent = list(range(len(graph.vertices)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, e in enumerate(graph.edges):
        if i == skip_edge:
            continue
        a = find(graph.vertex_index[e.source.vertex])
        b = find(graph.vertex_index[e.target.vertex])
        parent[a] = b
    return len({find(i) for i in range(len(parent))})


def jacket(graph: StrandedGraph, faces: FaceSet | None = None) -> Jacket:
    """Jacket ribbon graph of a 3D graph, with genus for vacuum graphs.

    Genus is summed over connected components, ``2c - 2g = V - E + F``; it is
    ``None`` for graphs with external legs.
    """
    if graph.dimension != 3:
        raise UnsupportedDimensionError("jackets are only defined here for 3D graphs")
    faces = faces or trace_faces(graph)
    outer = tuple(f for f in faces if f.slot_class == "outer")
    c = _components(graph)
    if graph.is_vacuum:
        euler = len(graph.vertices) - len(graph.edges) + sum(f.closed for f in outer)
        genus = (2 * c - euler) // 2
    else:
        euler = genus = None
    return Jacket(tuple(v for v, _ in graph.vertices), graph.edges, outer, c, euler, genus)


@dataclass(frozen=True)
class BrokenFaces:
    """Outer boundary cycles obtained by capping every external leg.

    Each entry of ``faces`` lists the legs met along one broken face, in
    traversal order.
    """

    faces: tuple[tuple[int, ...], ...]

    @property
    def B(self) -> int:
        return len(self.faces)

    @property
    def irregular(self) -> bool:
        return self.B > 1

    def breaking_counts(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.faces)


def broken_face_count(graph: StrandedGraph, faces: FaceSet | None = None) -> BrokenFaces:
    """Count the faces broken by external legs.

    Open outer strands end on slot 1 or slot D of a leg. Capping a leg joins
    those two ends, so the outer open strands close up into cycles; each
    cycle is one broken face.
    """
    if not graph.externals:
        raise NoExternalLegsError("broken faces need at least one external leg")
    D = graph.dimension
    faces = faces or trace_faces(graph)
    across: dict[tuple[int, int], tuple[int, int]] = {}
    for f in faces:
        if f.closed or f.slot_class != "outer":
            continue
        (j_in, j_out) = f.boundary_legs
        s_in = f.segments[0].ends[0][1]
        s_out = f.segments[-1].ends[1][1]
        across[(j_in, s_in)] = (j_out, s_out)
        across[(j_out, s_out)] = (j_in, s_in)

    seen: set[tuple[int, int]] = set()
    cycles = []
    for j in range(len(graph.externals)):
        if (j, 1) in seen:
            continue
        legs = []
        end = (j, 1)
        while end not in seen:
            seen.add(end)
            legs.append(end[0])
            cap = (end[0], edge_slot_partner(end[1], D))
            seen.add(cap)
            end = across[cap]
        cycles.append(tuple(legs))
    return BrokenFaces(tuple(cycles))


def connectivity_report(graph: StrandedGraph) -> tuple[bool, bool]:
    """Return ``(connected, one_particle_irreducible)``."""
    connected = _components(graph) <= 1
    if not connected:
        return False, False
    for i, e in enumerate(graph.edges):
        if e.source.vertex != e.target.vertex and _components(graph, skip_edge=i) > 1:
            return True, False
    return True, True
