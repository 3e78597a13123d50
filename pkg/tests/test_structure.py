from __future__ import annotations

import pytest

from oracles import brute_colorable, brute_multi_orientable
from stranded.catalog import catalog_graph
from stranded.enumerate import EnumerationRequest, enumerate_graphs
from stranded.errors import NoExternalLegsError, UnsupportedDimensionError
from stranded.graph import build_graph, trace_faces
from stranded.structure import (
    check_colorable,
    check_multi_orientable,
    colorize,
    detect_generalized_tadpoles,
    detect_tadfaces,
    detect_tadpoles,
    external_signs,
    forget,
    irregularity_report,
    orient,
    structure_report,
)


def test_tadpole_classes(planar_tadpole, nonplanar_tadpole):
    assert check_multi_orientable(forget(planar_tadpole)) is not None
    assert check_colorable(forget(planar_tadpole)) is None
    assert check_multi_orientable(nonplanar_tadpole) is None
    assert [t.planarity for t in detect_tadpoles(planar_tadpole)] == ["planar"]
    assert [t.planarity for t in detect_tadpoles(nonplanar_tadpole)] == ["non-planar"]


def test_two_point_signable_not_colorable():
    g = catalog_graph("mo_two_point")
    assert check_multi_orientable(g) is not None
    assert check_colorable(g) is None


def test_four_point_graphs():
    assert check_colorable(forget(catalog_graph("colored_four_point"))) is not None
    mo = catalog_graph("mo_four_point")
    assert check_multi_orientable(mo) is not None and check_colorable(mo) is None
    non = catalog_graph("non_mo_four_point")
    assert check_multi_orientable(non) is None and check_colorable(non) is None


def test_witnesses_validate():
    for name in ("mo_two_point", "mo_four_point", "vacuum_pair", "divergent_four_point"):
        g = forget(catalog_graph(name))
        a = check_multi_orientable(g)
        assert a is not None and a.validate(g)
    g = catalog_graph("divergent_four_point")
    c = check_colorable(g)
    assert c is not None and c.validate(g)


def test_orient_and_colorize_round_trip():
    g = catalog_graph("mo_four_point")
    mo = orient(g, check_multi_orientable(g))
    assert mo.model.name == "mo3d"
    assert trace_faces(forget(mo)).canonical() == trace_faces(forget(mo)).canonical()
    assert check_multi_orientable(forget(mo)) is not None
    d = catalog_graph("divergent_four_point")
    col = colorize(d, check_colorable(d))
    assert col.model.name == "colored3d"
    assert trace_faces(col).internal_count == 9


@pytest.mark.parametrize("n,legs", [(1, 2), (1, 4), (2, 0), (2, 2), (2, 4)])
def test_checkers_match_brute_force(n, legs):
    for g in enumerate_graphs(EnumerationRequest("boulatov3d", n, legs)):
        assert (check_multi_orientable(g) is not None) == brute_multi_orientable(g)
        assert (check_colorable(g) is not None) == brute_colorable(g)


def test_tadfaces():
    chain = catalog_graph("tadpole_chain")
    wit = detect_tadfaces(chain)
    assert wit and all(e == 2 for _, e in wit)
    assert detect_tadfaces(catalog_graph("planar_tadpole")) == []
    iso = build_graph("boulatov3d", [0], [], [(0, c) for c in range(4)])
    assert detect_tadfaces(iso) == []


def test_generalized_tadpoles(planar_tadpole, nonplanar_tadpole):
    (w,) = detect_generalized_tadpoles(forget(planar_tadpole))
    assert w.planarity == "planar"
    (w,) = detect_generalized_tadpoles(nonplanar_tadpole)
    assert w.planarity == "non-planar"
    assert detect_generalized_tadpoles(catalog_graph("mo_four_point")) == []


def test_irregularity(planar_tadpole, nonplanar_tadpole):
    rep = irregularity_report(nonplanar_tadpole)
    assert rep.B == 2 and rep.single_leg_faces
    rep = irregularity_report(planar_tadpole)
    assert all(c % 2 == 0 for c in rep.breaking_counts)
    iso = build_graph("boulatov3d", [0], [], [(0, c) for c in range(4)])
    assert all(c % 2 == 0 for c in irregularity_report(iso).breaking_counts)
    with pytest.raises(NoExternalLegsError):
        irregularity_report(catalog_graph("vacuum_pair"))


def test_external_signs_two_point():
    g = catalog_graph("mo_two_point")
    assert sorted(external_signs(g, check_multi_orientable(g))) == ["+", "-"]


def test_structure_report(planar_tadpole):
    rep = structure_report(planar_tadpole)
    assert rep.multi_orientable is not None and rep.colorable is None
    assert rep.B == 1 and not rep.irregular


def test_structure_needs_3d():
    g = build_graph("mo4d", [(0, "A")], [], [(0, c) for c in range(5)])
    with pytest.raises(UnsupportedDimensionError):
        check_multi_orientable(g)
