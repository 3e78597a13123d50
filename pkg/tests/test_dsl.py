from __future__ import annotations

import pytest

from stranded.catalog import CATALOG, catalog_graph, catalog_text
from stranded.dsl import document_from_graph, graph_to_dsl, load_graph, parse_graph_dsl
from stranded.enumerate import EnumerationRequest, canonical_form, enumerate_graphs
from stranded.errors import DslSemanticError, DslSyntaxError
from stranded.graph import trace_faces
from stranded.structure import check_colorable, check_multi_orientable


def _doc(*lines):
    return "\n".join(lines) + "\n"


def test_tadpole_documents():
    g = load_graph(_doc("model mo3d", "vertex 0", "edge 0.0 0.1", "ext 0.2 a", "ext 0.3 b"))
    assert check_multi_orientable(g) is not None and check_colorable(g) is None
    assert g.externals[0].strand_labels == ("a_1", "a_2", "a_3")
    g = load_graph(_doc("model boulatov3d", "vertex 0", "edge 0.0 0.2", "ext 0.1 a", "ext 0.3 b"))
    assert check_multi_orientable(g) is None


def test_colored_self_edge_is_semantic_error():
    with pytest.raises(DslSemanticError) as exc:
        load_graph(_doc("model colored3d", "vertex 0 kind A", "edge 0.0 0.1"))
    assert "bipartite" in str(exc.value)


def test_comments_and_string_ids():
    g = load_graph(_doc("# two vertices", "model boulatov3d", "vertex A  # first", "vertex B", "edge A.0 B.0", "ext A.1 x y z", *[f"ext {v}.{c} l{v}{c}" for v in "AB" for c in (2, 3) if (v, c) != ("A", 1)], "ext B.1 q"))
    assert [v for v, _ in g.vertices] == ["A", "B"]
    assert g.externals[0].strand_labels == ("x", "y", "z")


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("vertex 0\n", 1, 1),
        ("model nope\n", 1, 7),
        ("model boulatov3d\nvertex 0\nvertex 0\n", 3, 8),
        ("model boulatov3d\nvertex 0\nedge 0.0 1.0\n", 3, 10),
        ("model boulatov3d\nvertex 0\nedge 0.0 0.7\n", 3, 12),
        ("model colored3d\nvertex 0\n", 2, 1),
        ("model boulatov3d\nvertex 0 kind A\n", 2, 10),
        ("model mo3d\nvertex 0\nedge 0.0 0.1 color 1\n", 3, 14),
        ("model boulatov3d\nvertex 0\nwire 0.0 0.1\n", 3, 1),
        ("model boulatov3d\nvertex 0\next 0.1 1abc\n", 3, 9),
        ("", 1, 1),
    ],
)
def test_syntax_errors_carry_positions(text, line, col):
    with pytest.raises(DslSyntaxError) as exc:
        parse_graph_dsl(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_semantic_error_blames_a_line():
    with pytest.raises(DslSemanticError) as exc:
        load_graph(_doc("model boulatov3d", "vertex 0", "edge 0.0 0.1", "edge 0.1 0.2", "ext 0.3 a"))
    assert exc.value.line == 4


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_round_trip(name):
    doc = parse_graph_dsl(catalog_text(name))
    assert parse_graph_dsl(doc.serialize()) == doc
    g = doc.to_graph()
    again = load_graph(graph_to_dsl(g))
    assert trace_faces(again).canonical() == trace_faces(g).canonical()


def test_enumerated_graphs_round_trip():
    for model in ("boulatov3d", "mo3d", "colored3d"):
        for g in enumerate_graphs(EnumerationRequest(model, 2, 2, frozenset({"dedupe"}))):
            doc = document_from_graph(g)
            assert parse_graph_dsl(doc.serialize()) == doc
            assert canonical_form(load_graph(doc.serialize())) == canonical_form(g)


def test_four_dimensional_document():
    text = _doc("model mo4d", "vertex 0 kind A", "vertex 1 kind B", "edge 1.0 0.0", *[f"ext {v}.{c} e{v}{c}" for v in (0, 1) for c in range(1, 5)])
    g = load_graph(text)
    assert g.dimension == 4 and g.externals[0].strand_labels == tuple(f"e01_{i}" for i in range(1, 5))


def test_catalog_unknown():
    with pytest.raises(KeyError):
        catalog_graph("nope")
