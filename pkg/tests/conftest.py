"""Shared helpers for the test suite."""

from __future__ import annotations

import random

from embapprox.catalog import cycle_domain, path_domain, small_targets
from embapprox.core import SimplicialMap


def random_lane_orders(phi: SimplicialMap, rng: random.Random, side: int = 0):
    """A uniformly shuffled lane permutation for every realized target edge."""
    lanes: dict[int, list[tuple[int, int]]] = {}
    for eid, img in enumerate(phi.edge_image):
        if img is not None:
            lanes.setdefault(img, []).append((side, eid))
    return {a: tuple(rng.sample(block, len(block))) for a, block in lanes.items()}


def random_walk_map(
    rng: random.Random, target, k: int, closed: bool, force_stay: bool = False
) -> SimplicialMap:
    """A random walk map on k vertices; steps may stay put (degenerate edges).

    With force_stay the walk is redrawn until at least one step stays, so the
    resulting map has a degenerate edge to contract.
    """
    while True:
        images = [rng.randrange(target.n)]
        for _ in range(k - 1):
            v = images[-1]
            images.append(rng.choice([v] + [target.other_end(e, v) for e in target.incident[v]]))
        if closed:
            u, v = images[0], images[-1]
            if u != v and (min(u, v), max(u, v)) not in target.edge_index:
                continue
        steps = list(zip(images, images[1:]))
        if closed:
            steps.append((images[-1], images[0]))
        if force_stay and all(a != b for a, b in steps):
            continue
        domain = cycle_domain(k) if closed else path_domain(k)
        return SimplicialMap(domain, target, tuple(images))


def sample_corpus(shape: str, count: int, seed: int, k_max: int = 6):
    """A deterministic mixed sample of exhaustive corpus instances."""
    from embapprox.corpus import CorpusSpec, generate

    spec = CorpusSpec(
        shape=shape, targets=tuple(small_targets()), k_min=3 if shape == "cycle" else 1,
        k_max=k_max,
    )
    items = list(generate(spec))
    rng = random.Random(seed)
    return rng.sample(items, count)
