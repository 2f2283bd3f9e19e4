"""Isomorphism of labeled maps.

Two maps are isomorphic when there are vertex bijections of the domains and
of the targets that carry edges to edges (with multiplicity), preserve every
target rotation as a cyclic sequence (same orientation), and commute with the
maps.  Used for stabilization detection during derivative iteration and for
order-independence tests, so it deliberately ignores provenance names.
"""

from __future__ import annotations

from itertools import permutations

from .core import DomainGraph, PlaneGraph, SimplicialMap, _pair


def _cyclic_variants(seq: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [seq[i:] + seq[:i] for i in range(len(seq))] or [()]


def _rotation_respected(g1: PlaneGraph, g2: PlaneGraph, vmap: list[int], emap: dict[int, int]) -> bool:
    for v in range(g1.n):
        image = tuple(emap[e] for e in g1.rotation[v])
        rot2 = g2.rotation[vmap[v]]
        if len(image) != len(rot2):
            return False
        if len(image) <= 2:
            if sorted(image) != sorted(rot2):
                return False
            continue
        if image not in _cyclic_variants(rot2):
            return False
    return True


def _plane_isos(g1: PlaneGraph, g2: PlaneGraph):
    """Yield rotation-preserving isomorphisms g1 -> g2 as vertex lists."""
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return
    deg1 = [g1.degree(v) for v in range(g1.n)]
    deg2 = [g2.degree(v) for v in range(g2.n)]
    if sorted(deg1) != sorted(deg2):
        return
    order = sorted(range(g1.n), key=lambda v: -deg1[v])
    adj1 = {frozenset(e) for e in g1.edges}
    adj2 = {frozenset(e) for e in g2.edges}

    vmap: list[int] = [-1] * g1.n
    used = [False] * g2.n

    def extend(i: int):
        if i == len(order):
            emap = {}
            ok = True
            for eid, (u, v) in enumerate(g1.edges):
                key = _pair(vmap[u], vmap[v])
                if key not in g2.edge_index:
                    ok = False
                    break
                emap[eid] = g2.edge_index[key]
            if ok and _rotation_respected(g1, g2, vmap, emap):
                yield list(vmap)
            return
        v = order[i]
        for w in range(g2.n):
            if used[w] or deg1[v] != deg2[w]:
                continue
            good = True
            for u in range(g1.n):
                if vmap[u] >= 0:
                    if (frozenset((u, v)) in adj1) != (frozenset((vmap[u], w)) in adj2):
                        good = False
                        break
            if not good:
                continue
            vmap[v] = w
            used[w] = True
            yield from extend(i + 1)
            vmap[v] = -1
            used[w] = False

    yield from extend(0)


def _edge_multiset(d: DomainGraph, vmap: list[int]) -> list[tuple[int, int]]:
    return sorted(_pair(vmap[u], vmap[v]) for u, v in d.edges)


def _domain_isos(d1: DomainGraph, d2: DomainGraph):
    """Yield multigraph isomorphisms d1 -> d2 as vertex lists."""
    if d1.n != d2.n or len(d1.edges) != len(d2.edges):
        return
    deg1 = [d1.degree(v) for v in range(d1.n)]
    deg2 = [d2.degree(v) for v in range(d2.n)]
    if sorted(deg1) != sorted(deg2):
        return
    target_multiset = sorted(d2.edges)
    if d1.n <= 8:
        for perm in permutations(range(d1.n)):
            vmap = list(perm)
            if all(deg1[v] == deg2[vmap[v]] for v in range(d1.n)):
                if _edge_multiset(d1, vmap) == target_multiset:
                    yield vmap
        return

    order = sorted(range(d1.n), key=lambda v: -deg1[v])
    vmap: list[int] = [-1] * d1.n
    used = [False] * d2.n
    adj2: dict[tuple[int, int], int] = {}
    for u, v in d2.edges:
        adj2[_pair(u, v)] = adj2.get(_pair(u, v), 0) + 1
    adj1: dict[tuple[int, int], int] = {}
    for u, v in d1.edges:
        adj1[_pair(u, v)] = adj1.get(_pair(u, v), 0) + 1

    def extend(i: int):
        if i == len(order):
            if _edge_multiset(d1, vmap) == target_multiset:
                yield list(vmap)
            return
        v = order[i]
        for w in range(d2.n):
            if used[w] or deg1[v] != deg2[w]:
                continue
            good = True
            for u in range(d1.n):
                if vmap[u] >= 0 and adj1.get(_pair(u, v), 0) != adj2.get(_pair(vmap[u], w), 0):
                    good = False
                    break
            if not good:
                continue
            vmap[v] = w
            used[w] = True
            yield from extend(i + 1)
            vmap[v] = -1
            used[w] = False

    yield from extend(0)


def maps_isomorphic(m1: SimplicialMap, m2: SimplicialMap) -> bool:
    """True when some pair of bijections exhibits m1 and m2 as the same labeled map."""
    if m1.domain.n != m2.domain.n or len(m1.domain.edges) != len(m2.domain.edges):
        return False
    if m1.target.n != m2.target.n or len(m1.target.edges) != len(m2.target.edges):
        return False
    for gmap in _plane_isos(m1.target, m2.target):
        for dmap in _domain_isos(m1.domain, m2.domain):
            if all(m2.vertex_image[dmap[x]] == gmap[m1.vertex_image[x]] for x in range(m1.domain.n)):
                return True
    return False


def domains_isomorphic_with_map(m1: SimplicialMap, m2: SimplicialMap) -> bool:
    """Same-target variant: domain bijection commuting with the maps, target fixed pointwise."""
    if m1.target != m2.target:
        return False
    for dmap in _domain_isos(m1.domain, m2.domain):
        if all(m2.vertex_image[dmap[x]] == m1.vertex_image[x] for x in range(m1.domain.n)):
            return True
    return False
