"""Mod-2 obstruction machinery on the deleted product of the domain."""

from __future__ import annotations

import random

import pytest

from conftest import random_lane_orders

from embapprox.catalog import (
    ex33_pair,
    path_domain,
    small_targets,
    theta_target,
    winding_map,
    x_cross_path,
)
from embapprox.core import PlaneGraph, SimplicialMap
from embapprox.errors import PreconditionError
from embapprox.vankampen import (
    build_deleted_product,
    intersection_cochain,
    obstruction_report,
    obstruction_vanishes,
    pair_obstruction,
    pair_report,
    path_cut_components,
)


def test_deleted_product_of_a_short_path():
    phi = SimplicialMap(path_domain(5), small_targets()["C6"], (0, 1, 2, 3, 4))
    dp = build_deleted_product(phi)
    assert dp.cells2 == ((0, 2), (0, 3), (1, 3))
    # an embedding keeps all disjoint pairs image-disjoint: everything is red
    assert all(dp.red2)
    assert all(dp.red1)
    # 0-cells pair up all distinct vertices
    assert len(dp.cells0) == 10


def test_red_flags_track_image_intersections():
    phi = winding_map(2)  # six vertices onto three: nothing stays disjoint
    dp = build_deleted_product(phi)
    assert not any(dp.red2)
    assert len(dp.cells2) == 9  # 6-cycle: non-adjacent edge pairs


def test_complex_needs_nondegeneracy_but_reports_normalize():
    g = small_targets()["C4"]
    phi = SimplicialMap(path_domain(3), g, (0, 0, 1))
    with pytest.raises(PreconditionError):
        build_deleted_product(phi)
    # the report entry point contracts degenerate edges on its own
    from embapprox.core import normalize_nondegenerate

    assert (
        obstruction_report(phi).vanishes
        == obstruction_report(normalize_nondegenerate(phi)).vanishes
    )


def test_cochain_is_binary_and_zero_on_red_cells():
    for phi in (winding_map(2), winding_map(3), x_cross_path()):
        dp, values = intersection_cochain(phi)
        assert len(values) == len(dp.cells2)
        for red, v in zip(dp.red2, values):
            assert v in (0, 1)
            if red:
                assert v == 0  # disjoint neighborhoods cannot cross


def test_double_winding_has_odd_total_parity():
    _, values = intersection_cochain(winding_map(2))
    assert sum(values) % 2 == 1  # no coboundary can cancel an odd total


def test_obstruction_report_solving_and_certificate_sides():
    ok = obstruction_report(winding_map(3))
    assert ok.vanishes is True
    assert ok.solving_cells is not None and ok.certificate_cells is None

    ko = obstruction_report(winding_map(2))
    assert ko.vanishes is False
    assert ko.solving_cells is None and ko.certificate_cells is not None


def test_certificate_is_a_valid_inconsistency_proof():
    report = obstruction_report(winding_map(2))
    dp = report.complex
    cert = set(report.certificate_cells)
    # summed equations have odd right-hand side ...
    total = sum(v for cell, v in zip(dp.cells2, report.values) if cell in cert)
    assert total % 2 == 1
    # ... while every unknown (a non-red 1-cell) cancels out
    dom = winding_map(2).domain
    for (x, r), red in zip(dp.cells1, dp.red1):
        if red:
            continue
        count = sum(
            1
            for s, t in cert
            if (r == t and x in dom.edges[s]) or (r == s and x in dom.edges[t])
        )
        assert count % 2 == 0, (x, r)


def test_obstruction_verdicts_do_not_depend_on_lane_order():
    rng = random.Random(3)
    for phi in (winding_map(2), winding_map(3), x_cross_path()):
        base, _ = obstruction_vanishes(phi)
        for _ in range(5):
            got, _ = obstruction_vanishes(phi, random_lane_orders(phi, rng))
            assert got == base


def test_path_cut_components_zero_iff_vanishing():
    from conftest import random_walk_map
    from embapprox.core import normalize_nondegenerate

    # hand-picked nonzero witnesses plus a seeded sample around them
    fiveod = small_targets()["fiveod"]
    pool = [
        x_cross_path(),
        SimplicialMap(path_domain(7), fiveod, (1, 0, 3, 0, 2, 0, 4)),
    ]
    rng = random.Random(5)
    for _ in range(150):
        pool.append(random_walk_map(rng, fiveod, 7, closed=False))
        pool.append(random_walk_map(rng, theta_target(), 8, closed=False))
    seen_nonzero = 0
    for phi in pool:
        base = normalize_nondegenerate(phi)
        if base.domain.shape != "path":
            continue
        cuts = path_cut_components(base)
        vanishes, _ = obstruction_vanishes(base)
        assert vanishes == all(c % 2 == 0 for c in cuts), phi.vertex_image
        seen_nonzero += any(c % 2 for c in cuts)
    assert seen_nonzero >= 2


def test_path_cut_components_requires_a_path():
    with pytest.raises(PreconditionError):
        path_cut_components(winding_map(2))


def test_crossing_path_has_an_odd_cut_component():
    cuts = path_cut_components(x_cross_path())
    assert any(c % 2 == 1 for c in cuts)
    vanishes, _ = obstruction_vanishes(x_cross_path())
    assert vanishes is False


def _plus_target() -> PlaneGraph:
    """Four legs of length two around a center, legs in rotation order."""
    edges = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6), (3, 7), (4, 8))
    rotation = ((0, 1, 2, 3), (0, 4), (1, 5), (2, 6), (3, 7), (4,), (5,), (6,), (7,))
    return PlaneGraph(9, edges, rotation)


def test_pair_obstruction_detects_forced_linking():
    g = _plus_target()
    a = SimplicialMap(path_domain(5), g, (5, 1, 0, 3, 7))
    b = SimplicialMap(path_domain(5), g, (6, 2, 0, 4, 8))
    report = pair_report(a, b)
    assert report.vanishes is False
    assert pair_obstruction(a, b) is False
    assert sum(report.values) % 2 == 1


def test_pair_obstruction_clears_nested_arcs():
    g = _plus_target()
    a = SimplicialMap(path_domain(5), g, (5, 1, 0, 2, 6))
    b = SimplicialMap(path_domain(5), g, (7, 3, 0, 4, 8))
    report = pair_report(a, b)
    assert report.vanishes is True
    assert all(v == 0 for v in report.values)
    assert pair_obstruction(a, b) is True


def test_pair_requires_a_common_target():
    a = winding_map(1)
    b = SimplicialMap(path_domain(3), theta_target(), (0, 1, 2))
    with pytest.raises(PreconditionError):
        pair_report(a, b)


def test_pair_values_are_binary_and_zero_on_red_cells():
    phi, psi = ex33_pair()
    report = pair_report(phi, psi)
    assert len(report.values) == len(report.cells2)
    assert any(report.red2) and not all(report.red2)
    for red, v in zip(report.red2, report.values):
        assert v in (0, 1)
        if red:
            assert v == 0
