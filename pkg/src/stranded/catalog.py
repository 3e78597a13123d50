"""Small named graphs used in examples, tests and the CLI help."""

from __future__ import annotations

from .dsl import load_graph
from .graph import StrandedGraph

__all__ = ["CATALOG", "catalog_graph", "catalog_text"]

CATALOG: dict[str, str] = {
    # one vertex, loop on adjacent corners
    "planar_tadpole": """\
model mo3d
vertex 0
edge 0.0 0.1
ext 0.2 a
ext 0.3 b
""",
    # loop on opposite corners; not signable, so stated without signs
    "nonplanar_tadpole": """\
model boulatov3d
vertex 0
edge 0.0 0.2
ext 0.1 a
ext 0.3 b
""",
    # three parallel edges, no self-loop: signable but not colorable
    "mo_two_point": """\
model boulatov3d
vertex A
vertex B
edge A.1 B.1
edge A.2 B.2
edge A.3 B.3
ext A.0 a
ext B.0 b
""",
    # two opposite-corner tadpoles joined by one edge
    "tadpole_chain": """\
model boulatov3d
vertex A
vertex B
edge A.0 A.2
edge A.1 B.1
edge B.0 B.2
ext A.3 a
ext B.3 b
""",
    # two parallel edges on the same corner pair at both vertices
    "mo_four_point": """\
model boulatov3d
vertex A
vertex B
edge A.3 B.3
edge A.2 B.2
ext A.0 a
ext A.1 b
ext B.0 c
ext B.1 d
""",
    "colored_four_point": """\
model colored3d
vertex A kind A
vertex B kind B
edge A.3 B.1 color 3
edge A.2 B.2 color 2
ext A.0 a
ext A.1 b
ext B.3 c
ext B.0 d
""",
    "non_mo_four_point": """\
model boulatov3d
vertex A
vertex B
edge A.0 B.0
edge A.1 B.2
ext A.2 a
ext A.3 b
ext B.1 c
ext B.3 d
""",
    # planar two-vertex vacuum graph
    "vacuum_pair": """\
model mo3d
vertex 0
vertex 1
edge 0.0 1.3
edge 1.2 0.1
edge 0.2 1.1
edge 1.0 0.3
""",
    # eight vertices, fourteen edges, four legs, nine closed faces
    "divergent_four_point": """\
model boulatov3d
vertex P
vertex Q
vertex R
vertex S
vertex T
vertex U
vertex W
vertex X
edge P.0 R.0
edge P.1 Q.0
edge P.3 Q.2
edge R.1 S.0
edge R.3 S.2
edge T.0 U.0
edge T.2 U.2
edge W.0 X.0
edge W.2 X.2
edge U.1 X.1
edge Q.3 T.1
edge T.3 W.3
edge S.3 W.1
edge Q.1 S.1
ext P.2 a1
ext R.2 a2
ext U.3 a3
ext X.3 a4
""",
}


def catalog_text(name: str) -> str:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog graph {name!r}; known: {sorted(CATALOG)}") from None


def catalog_graph(name: str) -> StrandedGraph:
    return load_graph(catalog_text(name))
