from __future__ import annotations

import numpy as np
import pytest

from stranded.amplitude import Delta, DeltaKernel, eliminate, holonomy, kernel_from_graph, parse_word
from stranded.catalog import catalog_graph
from stranded.errors import BudgetExceededError, OrderTooLargeError
from stranded.groups import (
    FiniteGroup,
    brute_force_count,
    fit_divergence_exponent,
    identity_externals,
    make_group,
    normalization_identity,
    predicted_count,
    random_externals,
)


def test_small_groups():
    c2 = make_group("cyclic:2")
    assert c2.order == 2 and all(c2.inv(x) == x for x in range(2))
    s3 = make_group("symmetric:3")
    assert s3.order == 6 and not s3.is_abelian()
    q8 = make_group("quaternion8")
    assert q8.order == 8
    assert sum(1 for x in range(8) if q8.element_order(x) == 2) == 1
    assert make_group("dihedral:4").order == 8
    assert make_group(("cyclic", 5)).order == 5


def test_group_limits():
    with pytest.raises(OrderTooLargeError):
        make_group("symmetric:5")
    with pytest.raises(ValueError):
        make_group("bogus:3")
    with pytest.raises(ValueError):
        FiniteGroup("bad", np.array([[0, 1], [0, 1]]), ("a", "b"))


def test_budget_env(monkeypatch):
    monkeypatch.setenv("STRANDED_BUDGET", "10")
    assert make_group("symmetric:5").order == 120


def test_tadpole_counts(planar_tadpole):
    k = kernel_from_graph(planar_tadpole)
    for spec in ("cyclic:2", "cyclic:3"):
        G = make_group(spec)
        assert brute_force_count(k, G, identity_externals(k, G)) == 1


def test_four_point_counts():
    k = kernel_from_graph(catalog_graph("mo_four_point"))
    G = make_group("cyclic:2")
    assert brute_force_count(k, G, identity_externals(k, G)) == 1
    k = kernel_from_graph(catalog_graph("colored_four_point"))
    G = make_group("cyclic:3")
    assert brute_force_count(k, G, identity_externals(k, G)) == 1


def test_oracle_matches_elimination_nonabelian():
    g = catalog_graph("mo_four_point")
    k = kernel_from_graph(g)
    r = eliminate(k)
    G = make_group("symmetric:3")
    for seed in range(30):
        ext = random_externals(k, G, seed)
        N = brute_force_count(k, G, ext)
        assert N == predicted_count(r, G, ext)
        assert normalization_identity(k, r, G, ext, N)


def test_random_externals_deterministic():
    k = kernel_from_graph(catalog_graph("mo_four_point"))
    G = make_group("cyclic:5")
    assert random_externals(k, G, 3) == random_externals(k, G, 3)


def test_budget_exceeded():
    hs = [holonomy(f"h{i}") for i in range(1, 26)]
    k = DeltaKernel(tuple(Delta(parse_word(h.name, [h.name])) for h in hs), tuple(hs))
    with pytest.raises(BudgetExceededError):
        brute_force_count(k, make_group("cyclic:2"), {})


def test_fit_tadpole_and_duplicate(planar_tadpole):
    groups = [make_group(f"cyclic:{p}") for p in (2, 3, 5)]
    assert fit_divergence_exponent(kernel_from_graph(planar_tadpole), groups).kappa == 0
    h1 = holonomy("h1")
    w = parse_word("h1 a", ["h1"])
    dup = DeltaKernel((Delta(w), Delta(w)), (h1,))
    fit = fit_divergence_exponent(dup, groups)
    assert fit.kappa == 0 and all(N == 1 for _, _, N in fit.table)
    assert eliminate(dup).degree == 1


def test_fit_refuses_non_prime():
    k = kernel_from_graph(catalog_graph("planar_tadpole"))
    fit = fit_divergence_exponent(k, [make_group("cyclic:4"), make_group("cyclic:6")])
    assert fit.kappa is None and len(fit.table) == 2


def test_vacuum_count_is_free_volume():
    # the count is |G|**f with f the holonomies that drop out unsolved
    g = catalog_graph("vacuum_pair")
    k = kernel_from_graph(g)
    r = eliminate(k)
    for spec in ("cyclic:2", "cyclic:3", "symmetric:3"):
        G = make_group(spec)
        assert brute_force_count(k, G, identity_externals(k, G)) == G.order ** len(r.free)
