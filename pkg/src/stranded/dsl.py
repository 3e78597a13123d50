"""Line-oriented text format for stranded graphs.

::

    # planar tadpole
    model mo3d
    vertex 0
    edge 0.0 0.1
    ext 0.2 a
    ext 0.3 b

``vertex <id> [kind <K>]``, ``edge <v>.<c> <w>.<d> [color <k>]`` and
``ext <v>.<c> <label>`` (or one label per slot). Edges are numbered from 1
in order of appearance, so their holonomies are ``h1, h2, ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import DslSemanticError, DslSyntaxError, GraphError
from .graph import Edge, ExternalLeg, Port, StrandedGraph, build_graph, strand_labels_for
from .models import MODELS, get_model

__all__ = [
    "VertexDecl",
    "EdgeDecl",
    "ExtDecl",
    "GraphDocument",
    "parse_graph_dsl",
    "load_graph",
    "graph_to_dsl",
    "document_from_graph",
]

_ID = re.compile(r"[A-Za-z0-9_]+")
_PORT = re.compile(r"([A-Za-z0-9_]+)\.(\d+)")
_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


@dataclass(frozen=True)
class VertexDecl:
    id: object
    kind: str | None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class EdgeDecl:
    source: Port
    target: Port
    color: int | None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ExtDecl:
    port: Port
    labels: tuple[str, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class GraphDocument:
    model: str
    vertices: tuple[VertexDecl, ...]
    edges: tuple[EdgeDecl, ...]
    externals: tuple[ExtDecl, ...]
    model_line: int = field(default=0, compare=False)

    def to_graph(self) -> StrandedGraph:
        """Validate through :func:`build_graph`; failures carry a best-guess line."""
        model = get_model(self.model)
        verts = [(v.id, v.kind) for v in self.vertices]
        edges = [Edge(i + 1, e.source, e.target, e.color) for i, e in enumerate(self.edges)]
        legs = [
            ExternalLeg(x.port, x.labels if len(x.labels) > 1 else strand_labels_for(x.labels[0], model.dimension))
            for x in self.externals
        ]
        try:
            return build_graph(model, verts, edges, legs)
        except GraphError as exc:
            raise DslSemanticError(str(exc), self._blame(str(exc))) from exc

    def _blame(self, message: str) -> int | None:
        m = re.match(r"edge (\d+):", message)
        if m and 1 <= int(m.group(1)) <= len(self.edges):
            return self.edges[int(m.group(1)) - 1].line
        m = re.match(r"external leg (\d+):", message)
        if m and int(m.group(1)) < len(self.externals):
            return self.externals[int(m.group(1))].line
        m = re.match(r"vertex (\S+):", message)
        if m:
            for v in self.vertices:
                if str(v.id) == m.group(1):
                    return v.line
        return None

    def serialize(self) -> str:
        lines = [f"model {self.model}"]
        for v in self.vertices:
            lines.append(f"vertex {v.id}" + (f" kind {v.kind}" if v.kind else ""))
        for e in self.edges:
            lines.append(f"edge {e.source} {e.target}" + (f" color {e.color}" if e.color is not None else ""))
        for x in self.externals:
            lines.append(f"ext {x.port} " + " ".join(x.labels))
        return "\n".join(lines) + "\n"


def _vertex_id(text: str):
    return int(text) if text.isdigit() else text


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_graph_dsl(text: str) -> GraphDocument:
    """Parse a graph document. Positions in errors are 1-based."""
    model = None
    model_line = 0
    vertices: list[VertexDecl] = []
    edges: list[EdgeDecl] = []
    externals: list[ExtDecl] = []
    seen: set = set()
    n_corners = None

    def port(tok: str, col: int, lineno: int) -> Port:
        m = _PORT.fullmatch(tok)
        if not m:
            raise DslSyntaxError(lineno, col, f"expected <vertex>.<corner>, got {tok!r}")
        vid, corner = _vertex_id(m.group(1)), int(m.group(2))
        if vid not in seen:
            raise DslSyntaxError(lineno, col, f"undeclared vertex {m.group(1)!r}")
        if corner >= n_corners:
            raise DslSyntaxError(lineno, col + len(m.group(1)) + 1, f"corner {corner} out of range 0..{n_corners - 1}")
        return Port(vid, corner)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        head, hcol = toks[0]
        args = toks[1:]
        if model is None and head != "model":
            raise DslSyntaxError(lineno, hcol, "document must start with a 'model' line")
        if head == "model":
            if model is not None:
                raise DslSyntaxError(lineno, hcol, "model declared twice")
            if len(args) != 1:
                raise DslSyntaxError(lineno, hcol, "usage: model <name>")
            name, col = args[0]
            if name not in MODELS:
                raise DslSyntaxError(lineno, col, f"unknown model {name!r}; expected one of {sorted(MODELS)}")
            model, model_line = MODELS[name], lineno
            n_corners = model.corners_per_vertex
        elif head == "vertex":
            if len(args) not in (1, 3):
                raise DslSyntaxError(lineno, hcol, "usage: vertex <id> [kind <K>]")
            tok, col = args[0]
            if not _ID.fullmatch(tok):
                raise DslSyntaxError(lineno, col, f"bad vertex id {tok!r}")
            vid = _vertex_id(tok)
            if vid in seen:
                raise DslSyntaxError(lineno, col, f"duplicate vertex id {tok!r}")
            kind = None
            if len(args) == 3:
                kw, kcol = args[1]
                if kw != "kind":
                    raise DslSyntaxError(lineno, kcol, f"expected 'kind', got {kw!r}")
                kind, kcol = args[2]
                if kind not in model.kind_names:
                    raise DslSyntaxError(lineno, kcol, f"model {model.name} has no vertex kind {kind!r}")
                if model.default_kind is not None:
                    raise DslSyntaxError(lineno, args[1][1], f"model {model.name} takes no vertex kinds")
            elif model.default_kind is None:
                raise DslSyntaxError(lineno, hcol, f"model {model.name} requires 'kind <{'|'.join(model.kind_names)}>'")
            seen.add(vid)
            vertices.append(VertexDecl(vid, kind, lineno))
        elif head == "edge":
            if len(args) not in (2, 4):
                raise DslSyntaxError(lineno, hcol, "usage: edge <v>.<c> <w>.<d> [color <k>]")
            a = port(*args[0], lineno)
            b = port(*args[1], lineno)
            color = None
            if len(args) == 4:
                kw, kcol = args[2]
                if kw != "color":
                    raise DslSyntaxError(lineno, kcol, f"expected 'color', got {kw!r}")
                tok, ccol = args[3]
                if not tok.isdigit() or int(tok) > 3:
                    raise DslSyntaxError(lineno, ccol, f"color must be 0..3, got {tok!r}")
                if not model.colored:
                    raise DslSyntaxError(lineno, kcol, f"model {model.name} takes no edge colors")
                color = int(tok)
            edges.append(EdgeDecl(a, b, color, lineno))
        elif head == "ext":
            if len(args) not in (2, 1 + model.dimension):
                raise DslSyntaxError(lineno, hcol, f"usage: ext <v>.<c> <label> (or {model.dimension} labels)")
            p = port(*args[0], lineno)
            labels = []
            for tok, col in args[1:]:
                if not _LABEL.fullmatch(tok):
                    raise DslSyntaxError(lineno, col, f"bad label {tok!r}")
                labels.append(tok)
            externals.append(ExtDecl(p, tuple(labels), lineno))
        else:
            raise DslSyntaxError(lineno, hcol, f"unknown keyword {head!r}")
    if model is None:
        raise DslSyntaxError(1, 1, "empty document: missing 'model' line")
    return GraphDocument(model.name, tuple(vertices), tuple(edges), tuple(externals), model_line)


def load_graph(text: str) -> StrandedGraph:
    return parse_graph_dsl(text).to_graph()


def document_from_graph(graph: StrandedGraph) -> GraphDocument:
    """Document describing ``graph``; single labels are used where they suffice."""
    D = graph.dimension
    multi = graph.model.default_kind is None
    verts = tuple(VertexDecl(v, k if multi else None) for v, k in graph.vertices)
    edges = tuple(EdgeDecl(e.source, e.target, e.color) for e in graph.edges)
    exts = []
    for leg in graph.externals:
        labels = leg.strand_labels
        base = labels[0].rsplit("_", 1)[0] if "_" in labels[0] else None
        if base and strand_labels_for(base, D) == labels:
            labels = (base,)
        exts.append(ExtDecl(leg.port, tuple(labels)))
    return GraphDocument(graph.model.name, verts, edges, tuple(exts))


def graph_to_dsl(graph: StrandedGraph) -> str:
    return document_from_graph(graph).serialize()
