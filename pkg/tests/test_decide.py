"""Deciders: derivative iteration for paths/cycles, obstruction for trees."""

from __future__ import annotations

import random

import pytest

from conftest import random_walk_map

from embapprox.catalog import (
    cycle_domain,
    euler_path_map,
    ex33_pair,
    path_domain,
    small_targets,
    terminal_flower,
    whole_fold,
    winding_map,
    x_cross_path,
)
from embapprox.core import DomainGraph, SimplicialMap
from embapprox.corpus import random_deg3_map
from embapprox.decide import (
    Event,
    decide_cycle,
    decide_deg3_to_circle,
    decide_path,
    decide_path_via_vk,
)
from embapprox.errors import PreconditionError
from embapprox.oracle import is_approximable_oracle


def test_event_kinds_are_validated():
    Event("clean-pass")
    with pytest.raises(PreconditionError):
        Event("made-up-kind")


def test_event_rendering_hides_bulky_details():
    assert str(Event("clean-pass")) == "clean-pass"
    assert str(Event("forbidden-winding", 2)) == "forbidden-winding(2)"
    assert str(Event("obstruction-nonzero", ((0, 2),))) == "obstruction-nonzero(..)"


def test_winding_cycle_verdicts_and_decisive_events():
    for d in (-3, -2, 2, 3):
        v = decide_cycle(winding_map(d))
        assert v.approximable is False
        step, event = v.decisive()
        assert event.kind == "forbidden-winding"
        assert abs(event.detail) == abs(d)
    for d in (-1, 0, 1):
        v = decide_cycle(winding_map(d))
        assert v.approximable is True
        assert v.decisive() is None
        assert v.criterion == "cycle-derivatives"


def test_path_verdicts_on_catalog():
    assert decide_path(euler_path_map()).approximable is True
    bad = decide_path(x_cross_path())
    assert bad.approximable is False
    step, event = bad.decisive()
    assert event.kind == "transversal-self-intersection"
    assert step == 0


def test_shape_preconditions():
    with pytest.raises(PreconditionError):
        decide_path(winding_map(1))
    with pytest.raises(PreconditionError):
        decide_cycle(euler_path_map())
    with pytest.raises(PreconditionError):
        decide_path_via_vk(winding_map(1))


def test_constant_map_empties_out():
    g = small_targets()["C3"]
    phi = SimplicialMap(path_domain(4), g, (2, 2, 2, 2))
    v = decide_path(phi)
    assert v.approximable is True
    assert any(e.kind == "empty-domain" for _, e in v.trace)


def test_terminal_configuration_is_recognized():
    v = decide_cycle(terminal_flower())
    assert v.approximable is True
    assert any(e.kind == "terminal-approximable" for _, e in v.trace)


def test_fold_iterates_to_empty():
    v = decide_cycle(whole_fold())
    assert v.approximable is True
    kinds = [e.kind for _, e in v.trace]
    assert kinds.count("clean-pass") >= 2
    assert kinds[-1] == "empty-domain"


def test_stabilization_is_a_pure_optimization():
    rng = random.Random(21)
    targets = small_targets()
    pool = [winding_map(d) for d in (-2, -1, 0, 1, 2)]
    for _ in range(120):
        name = rng.choice(sorted(targets))
        closed = rng.random() < 0.5
        k = rng.randrange(3, 8)
        pool.append(random_walk_map(rng, targets[name], k, closed=closed))
    for phi in pool:
        judge = decide_cycle if phi.domain.shape == "cycle" else decide_path
        lazy = judge(phi, stabilize=True)
        eager = judge(phi, stabilize=False)
        assert lazy.approximable == eager.approximable, phi.vertex_image
        assert len(lazy.trace) <= len(eager.trace)


def test_independent_path_routes_agree():
    rng = random.Random(22)
    targets = small_targets()
    pool = [x_cross_path()]
    for _ in range(120):
        name = rng.choice(sorted(targets))
        pool.append(random_walk_map(rng, targets[name], rng.randrange(2, 8), closed=False))
    for phi in pool:
        a = decide_path(phi)
        b = decide_path_via_vk(phi)
        assert a.approximable == b.approximable, phi.vertex_image
        assert b.criterion == "path-van-kampen"


def test_escalated_instances_are_flagged_but_correct():
    _, psi = ex33_pair()
    v = decide_path(psi)
    assert v.approximable is False
    assert v.flagged_for_review is True
    oracle_verdict, _ = is_approximable_oracle(psi)
    assert oracle_verdict is False
    # the independent route agrees without needing a flag
    w = decide_path_via_vk(psi)
    assert w.approximable is False and w.flagged_for_review is False


def test_degree_three_decider_scope():
    g = small_targets()["C4"]
    y4 = SimplicialMap(
        DomainGraph(5, ((0, 1), (0, 2), (0, 3), (0, 4)), "general"),
        g,
        (0, 1, 1, 3, 3),
    )
    with pytest.raises(PreconditionError, match="degree 4"):
        decide_deg3_to_circle(y4)
    theta_phi = SimplicialMap(path_domain(3), small_targets()["theta"], (0, 1, 2))
    with pytest.raises(PreconditionError, match="not a cycle"):
        decide_deg3_to_circle(theta_phi)
    degen = SimplicialMap(path_domain(3), g, (0, 0, 1))
    with pytest.raises(PreconditionError, match="nondegenerate"):
        decide_deg3_to_circle(degen)


def test_degree_three_decider_agrees_with_oracle():
    rng = random.Random(23)
    for _ in range(60):
        target = small_targets()[rng.choice(["C3", "C4", "C5"])]
        phi = random_deg3_map(target, rng, max_vertices=7)
        mine = decide_deg3_to_circle(phi)
        truth, _ = is_approximable_oracle(phi)
        assert mine.approximable == truth, phi.vertex_image


def test_winding_verdict_criterion_and_trace_structure():
    v = decide_cycle(winding_map(2))
    assert all(isinstance(i, int) and isinstance(e, Event) for i, e in v.trace)
    assert v.trace == tuple(sorted(v.trace, key=lambda t: t[0]))
