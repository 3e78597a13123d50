"""Multi-orientability and colorability checkers, tadpole and tadface detectors."""

from __future__ import annotations

from collections import deque
from collections.abc import Hashable
from dataclasses import dataclass

from .errors import NoExternalLegsError, UnsupportedDimensionError
from .graph import (
    BrokenFaces,
    Edge,
    ExternalLeg,
    FaceSet,
    Port,
    StrandedGraph,
    broken_face_count,
    build_graph,
    corner_color,
    trace_faces,
)
from .models import BOULATOV3D, COLORED3D, MO3D

__all__ = [
    "OrientationAssignment",
    "ColoringAssignment",
    "TadpoleWitness",
    "GeneralizedTadpole",
    "IrregularityReport",
    "StructureReport",
    "check_multi_orientable",
    "check_colorable",
    "orient",
    "colorize",
    "forget",
    "external_signs",
    "detect_tadpoles",
    "detect_tadfaces",
    "detect_generalized_tadpoles",
    "irregularity_report",
    "structure_report",
]


def _require_3d(graph: StrandedGraph) -> None:
    if graph.dimension != 3:
        raise UnsupportedDimensionError("structure checks are defined for 3D graphs")


@dataclass(frozen=True)
class OrientationAssignment:
    """Phase 0 puts ``+`` on even corners, phase 1 on odd corners."""

    vertex_phase: dict[Hashable, int]
    edge_direction: dict[Hashable, str]

    def sign(self, port: Port) -> str:
        return "+" if (port.corner + self.vertex_phase[port.vertex]) % 2 == 0 else "-"

    def validate(self, graph: StrandedGraph) -> bool:
        for e in graph.edges:
            s, t = self.sign(e.source), self.sign(e.target)
            if s == t:
                return False
            if self.edge_direction[e.id] != ("forward" if s == "+" else "reverse"):
                return False
        return True


def check_multi_orientable(graph: StrandedGraph) -> OrientationAssignment | None:
    """Find alternating corner signs with every edge joining ``+`` to ``-``.

    Each edge between corners ``c`` and ``d`` forces
    ``phase(v) + phase(w) + c + d`` to be odd; phases are propagated along
    edges from the lowest unassigned vertex, which gets phase 0.
    """
    _require_3d(graph)
    adj: dict[Hashable, list[tuple[Hashable, int]]] = {v: [] for v, _ in graph.vertices}
    for e in graph.edges:
        parity = (1 + e.source.corner + e.target.corner) % 2
        adj[e.source.vertex].append((e.target.vertex, parity))
        if e.source.vertex != e.target.vertex:
            adj[e.target.vertex].append((e.source.vertex, parity))
    phase: dict[Hashable, int] = {}
    for root, _ in graph.vertices:
        if root in phase:
            continue
        phase[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, parity in adj[v]:
                want = (phase[v] + parity) % 2
                if w not in phase:
                    phase[w] = want
                    queue.append(w)
                elif phase[w] != want:
                    return None
    directions = {}
    for e in graph.edges:
        plus = (e.source.corner + phase[e.source.vertex]) % 2 == 0
        directions[e.id] = "forward" if plus else "reverse"
    return OrientationAssignment(phase, directions)


@dataclass(frozen=True)
class ColoringAssignment:
    """Vertex kinds (``A`` = field, ``B`` = conjugate), rotation offsets, edge colors."""

    vertex_kind: dict[Hashable, str]
    vertex_offset: dict[Hashable, int]
    edge_color: dict[Hashable, int]

    def color(self, port: Port) -> int:
        return corner_color(self.vertex_kind[port.vertex], port.corner, self.vertex_offset[port.vertex])

    def validate(self, graph: StrandedGraph) -> bool:
        for e in graph.edges:
            if self.vertex_kind[e.source.vertex] == self.vertex_kind[e.target.vertex]:
                return False
            if not self.color(e.source) == self.color(e.target) == self.edge_color[e.id]:
                return False
        return True


def check_colorable(graph: StrandedGraph) -> ColoringAssignment | None:
    """Backtracking search for a bipartition and a cyclic 4-edge-coloring.

    Vertices are assigned in order; each takes a kind and a rotation offset,
    which fixes the colors of its corners.
    """
    _require_3d(graph)
    order = [v for v, _ in graph.vertices]
    if any(e.source.vertex == e.target.vertex for e in graph.edges):
        return None
    nbrs: dict[Hashable, list[tuple[int, Hashable, int]]] = {v: [] for v in order}
    for e in graph.edges:
        nbrs[e.source.vertex].append((e.source.corner, e.target.vertex, e.target.corner))
        nbrs[e.target.vertex].append((e.target.corner, e.source.vertex, e.source.corner))
    kind: dict[Hashable, str] = {}
    offset: dict[Hashable, int] = {}
    options = [(k, r) for k in ("A", "B") for r in range(4)]

    def fits(v: Hashable, k: str, r: int) -> bool:
        for c, w, d in nbrs[v]:
            if w in kind:
                if kind[w] == k or corner_color(k, c, r) != corner_color(kind[w], d, offset[w]):
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for k, r in options:
            if fits(v, k, r):
                kind[v], offset[v] = k, r
                if search(i + 1):
                    return True
                del kind[v], offset[v]
        return False

    if not search(0):
        return None
    colors = {e.id: corner_color(kind[e.source.vertex], e.source.corner, offset[e.source.vertex]) for e in graph.edges}
    return ColoringAssignment(dict(kind), dict(offset), colors)


def orient(graph: StrandedGraph, assignment: OrientationAssignment) -> StrandedGraph:
    """Rewrite a Boulatov graph as an ``mo3d`` graph.

    Phase-1 vertices are rotated by one corner so that ``+`` sits on even
    corners; edges are reversed where needed.
    """

    def move(p: Port) -> Port:
        return Port(p.vertex, (p.corner - assignment.vertex_phase[p.vertex]) % 4)

    edges = []
    for e in graph.edges:
        s, t = move(e.source), move(e.target)
        if assignment.edge_direction[e.id] == "reverse":
            s, t = t, s
        edges.append(Edge(e.id, s, t, None, e.holonomy))
    legs = [ExternalLeg(move(leg.port), leg.strand_labels) for leg in graph.externals]
    return build_graph(MO3D, [v for v, _ in graph.vertices], edges, legs)


def colorize(graph: StrandedGraph, assignment: ColoringAssignment) -> StrandedGraph:
    edges = [Edge(e.id, e.source, e.target, assignment.edge_color[e.id], e.holonomy) for e in graph.edges]
    verts = [(v, assignment.vertex_kind[v]) for v, _ in graph.vertices]
    return build_graph(COLORED3D, verts, edges, graph.externals)


def forget(graph: StrandedGraph) -> StrandedGraph:
    """Drop signs, kinds and colors, keeping the stranded structure (3D only)."""
    _require_3d(graph)
    edges = [Edge(e.id, e.source, e.target, None, e.holonomy) for e in graph.edges]
    return build_graph(BOULATOV3D, [v for v, _ in graph.vertices], edges, graph.externals)


def external_signs(graph: StrandedGraph, assignment: OrientationAssignment) -> tuple[str, ...]:
    return tuple(assignment.sign(leg.port) for leg in graph.externals)


# ---------------------------------------------------------------------------
# detectors


@dataclass(frozen=True)
class TadpoleWitness:
    edge: Hashable
    planarity: str


def detect_tadpoles(graph: StrandedGraph) -> list[TadpoleWitness]:
    """Self-loops; adjacent corners give a planar tadpole, opposite ones a "non-planar" one."""
    n = graph.model.corners_per_vertex
    out = []
    for e in graph.edges:
        if e.source.vertex == e.target.vertex:
            gap = (e.source.corner - e.target.corner) % n
            out.append(TadpoleWitness(e.id, "planar" if gap in (1, n - 1) else "non-planar"))
    return out


def detect_tadfaces(graph: StrandedGraph, faces: FaceSet | None = None) -> list[tuple[int, Hashable]]:
    """``(face index, edge id)`` for every face passing some edge at least twice."""
    faces = faces or trace_faces(graph)
    out = []
    for i, f in enumerate(faces):
        for eid in dict.fromkeys(e for e, _ in f.edge_passes):
            if f.passes(eid) >= 2:
                out.append((i, eid))
    return out


@dataclass(frozen=True)
class GeneralizedTadpole:
    vertices: tuple[Hashable, ...]
    external_vertex: Hashable
    n_external: int
    B: int
    planarity: str


def _subgraph_with_cuts(graph: StrandedGraph, keep: set[Hashable]) -> StrandedGraph:
    """Induced subgraph on ``keep``; edges leaving it become external legs."""
    edges, legs = [], []
    for e in graph.edges:
        a, b = e.source.vertex in keep, e.target.vertex in keep
        if a and b:
            edges.append(Edge(e.id, e.source, e.target, None, e.holonomy))
        elif a:
            legs.append(ExternalLeg(e.source, tuple(f"cut{e.id}_s{s}" for s in range(1, graph.dimension + 1))))
        elif b:
            legs.append(ExternalLeg(e.target, tuple(f"cut{e.id}_t{s}" for s in range(1, graph.dimension + 1))))
    legs.extend(leg for leg in graph.externals if leg.port.vertex in keep)
    model = BOULATOV3D if graph.dimension == 3 else graph.model
    verts = [v for v, _ in graph.vertices if v in keep] if model is BOULATOV3D else [
        (v, k) for v, k in graph.vertices if v in keep
    ]
    return build_graph(model, verts, edges, legs)


def _classify(n_external: int, B: int) -> str:
    if B == 1:
        return "planar"
    if n_external == 2 and B == 2:
        return "non-planar"
    return "irregular"


def detect_generalized_tadpoles(graph: StrandedGraph) -> list[GeneralizedTadpole]:
    """Connected vertex subsets with at least one internal edge whose external
    connections (legs and cut edges) all sit on one vertex.

    Each subset is classified by the broken faces of the cut-open subgraph.
    """
    _require_3d(graph)
    verts = [v for v, _ in graph.vertices]
    out = []
    for mask in range(1, 1 << len(verts)):
        keep = {v for i, v in enumerate(verts) if mask >> i & 1}
        internal = [e for e in graph.edges if e.source.vertex in keep and e.target.vertex in keep]
        if not internal:
            continue
        attach = [leg.port.vertex for leg in graph.externals if leg.port.vertex in keep]
        for e in graph.edges:
            a, b = e.source.vertex in keep, e.target.vertex in keep
            if a != b:
                attach.append(e.source.vertex if a else e.target.vertex)
        if not attach or len(set(attach)) != 1:
            continue
        sub = _subgraph_with_cuts(graph, keep)
        if _connected(sub):
            bf = broken_face_count(sub)
            ordered = tuple(v for v in verts if v in keep)
            out.append(GeneralizedTadpole(ordered, attach[0], len(attach), bf.B, _classify(len(attach), bf.B)))
    return out


def _connected(graph: StrandedGraph) -> bool:
    from .graph import connectivity_report

    return connectivity_report(graph)[0]


@dataclass(frozen=True)
class IrregularityReport:
    B: int
    breaking_counts: tuple[int, ...]
    single_leg_faces: tuple[tuple[int, ...], ...]
    broken: BrokenFaces

    @property
    def irregular(self) -> bool:
        return self.B > 1


def irregularity_report(graph: StrandedGraph, faces: FaceSet | None = None) -> IrregularityReport:
    if not graph.externals:
        raise NoExternalLegsError("irregularity needs external legs")
    bf = broken_face_count(graph, faces)
    single = tuple(f for f in bf.faces if len(f) == 1)
    return IrregularityReport(bf.B, bf.breaking_counts(), single, bf)


@dataclass(frozen=True)
class StructureReport:
    multi_orientable: OrientationAssignment | None
    colorable: ColoringAssignment | None
    tadpoles: tuple[TadpoleWitness, ...]
    generalized_tadpoles: tuple[GeneralizedTadpole, ...]
    tadfaces: tuple[tuple[int, Hashable], ...]
    B: int | None
    irregular: bool


def structure_report(graph: StrandedGraph, faces: FaceSet | None = None) -> StructureReport:
    faces = faces or trace_faces(graph)
    base = graph if graph.model is BOULATOV3D else forget(graph)
    bf = broken_face_count(graph, faces) if graph.externals else None
    return StructureReport(
        multi_orientable=check_multi_orientable(base),
        colorable=check_colorable(base),
        tadpoles=tuple(detect_tadpoles(graph)),
        generalized_tadpoles=tuple(detect_generalized_tadpoles(base)) if graph.externals else (),
        tadfaces=tuple(detect_tadfaces(graph, faces)),
        B=bf.B if bf else None,
        irregular=bf.irregular if bf else False,
    )
