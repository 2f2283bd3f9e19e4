"""Transversal crossing detection for arc images in a plane graph.

Two arcs drawn along a graph cross transversally when no small perturbation
can pull their images apart.  Combinatorially that happens at a connected
component sigma of the image intersection: the arcs enter and leave the
regular neighborhood of sigma through ports, and they cross if the ports of
one arc interleave with the ports of the other around a boundary circle, or
if sigma contains a cycle and both arcs thread every boundary circle of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .core import PlaneGraph, SimplicialMap, WalkArc, closed_walk, open_walk
from .errors import PreconditionError
from .ribbon import Port, boundary_walks, circle_touches_both, interleaves

Subgraph = tuple[frozenset[int], frozenset[int]]


@dataclass(frozen=True)
class CrossingWitness:
    """A crossing pair: two domain arcs, the intersection component, ports."""

    arc_p: WalkArc
    arc_q: WalkArc
    component_vertices: frozenset[int]
    component_edges: frozenset[int]
    kind: str  # "interleaved" or "annulus"
    ports: tuple[Port, ...]


def _intersection_components(g: PlaneGraph, a: Subgraph, b: Subgraph) -> list[Subgraph]:
    vs = a[0] & b[0]
    es = a[1] & b[1]
    if not vs:
        return []
    parent = {v: v for v in vs}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in es:
        u, v = g.edges[e]
        parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for v in sorted(vs):
        groups.setdefault(find(v), []).append(v)
    out = []
    for root in sorted(groups, key=lambda r: groups[r][0]):
        cvs = frozenset(groups[root])
        ces = frozenset(e for e in es if g.edges[e][0] in cvs)
        out.append((cvs, ces))
    return out


def _alternating_ports(circle, a_edges: frozenset[int], b_edges: frozenset[int]):
    """Four ports in cyclic order A, B, A, B, or None."""
    marked = [(p, p.edge in a_edges) for p in circle.ports if p.edge in a_edges or p.edge in b_edges]
    if len(marked) < 4:
        return None
    start = None
    for i, (_, is_a) in enumerate(marked):
        if is_a and not marked[i - 1][1]:
            start = i
            break
    if start is None:
        return None
    seq = marked[start:] + marked[:start]
    picks = []
    want_a = True
    for p, is_a in seq:
        if is_a == want_a:
            picks.append(p)
            want_a = not want_a
            if len(picks) == 4:
                return tuple(picks)
    return None


@lru_cache(maxsize=None)
def _crossing_component(
    g: PlaneGraph,
    a_vs: frozenset[int],
    a_es: frozenset[int],
    b_vs: frozenset[int],
    b_es: frozenset[int],
):
    """Shared engine behind images_cross; returns (sigma, kind, ports) or None."""
    if g.max_degree() <= 2:
        # every intersection component has at most two ports: nothing can alternate
        return None
    for sigma_vs, sigma_es in _intersection_components(g, (a_vs, a_es), (b_vs, b_es)):
        a_stubs = frozenset(e for e in a_es - sigma_es if sigma_vs & set(g.edges[e]))
        b_stubs = frozenset(e for e in b_es - sigma_es if sigma_vs & set(g.edges[e]))
        if not a_stubs or not b_stubs:
            continue
        circles = boundary_walks(g, sigma_vs, sigma_es)
        a_ports = frozenset(p for c in circles for p in c.ports if p.edge in a_stubs)
        b_ports = frozenset(p for c in circles for p in c.ports if p.edge in b_stubs)
        for c in circles:
            picks = _alternating_ports(c, a_stubs, b_stubs)
            assert (picks is not None) == interleaves(c, a_ports, b_ports)
            if picks is not None:
                return (sigma_vs, sigma_es, "interleaved", picks)
        if len(sigma_es) >= len(sigma_vs) and len(circles) >= 2:
            if all(circle_touches_both(c, a_ports, b_ports) for c in circles):
                picks = []
                for c in circles:
                    picks.append(next(p for p in c.ports if p in a_ports))
                    picks.append(next(p for p in c.ports if p in b_ports))
                return (sigma_vs, sigma_es, "annulus", tuple(picks))
    return None


def images_cross(g: PlaneGraph, a: Subgraph, b: Subgraph) -> bool:
    """Do two arc images cross transversally somewhere?

    a and b are (vertex set, edge set) subgraphs of g, each the image of an
    arc.  Symmetric, and false whenever the subgraphs are disjoint.
    """
    key_a = (tuple(sorted(a[0])), tuple(sorted(a[1])))
    key_b = (tuple(sorted(b[0])), tuple(sorted(b[1])))
    if key_b < key_a:
        a, b = b, a
    return _crossing_component(g, a[0], a[1], b[0], b[1]) is not None


def _domain_arcs(phi: SimplicialMap) -> list[WalkArc]:
    """Vertex-aligned arcs of the domain with at least one edge, in stable order.

    Path and cycle shapes enumerate contiguous subwalks; general shapes
    enumerate all simple paths (each taken once, smaller endpoint first).
    """
    d = phi.domain
    if d.shape == "path":
        order, eids = open_walk(d, frozenset(range(d.n)), frozenset(range(len(d.edges))))
        arcs = []
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                arcs.append(WalkArc(tuple(order[i : j + 1]), tuple(eids[i:j])))
        return arcs
    if d.shape == "cycle":
        order, eids = closed_walk(d, frozenset(range(d.n)), frozenset(range(len(d.edges))))
        m = len(order)
        arcs = []
        for s in range(m):
            for length in range(1, m):
                vs = tuple(order[(s + t) % m] for t in range(length + 1))
                es = tuple(eids[(s + t) % m] for t in range(length))
                arcs.append(WalkArc(vs, es))
        return arcs
    arcs = []
    seen: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()

    def extend(vs: list[int], es: list[int]):
        if es:
            key = (tuple(vs), tuple(es))
            rkey = (tuple(reversed(vs)), tuple(reversed(es)))
            if rkey not in seen:
                seen.add(key)
                arcs.append(WalkArc(tuple(vs), tuple(es)))
        cur = vs[-1]
        for e in d.incident[cur]:
            if e in es:
                continue
            u, v = d.edges[e]
            if u == v:
                continue
            nxt = d.other_end(e, cur)
            if nxt in vs:
                continue
            extend(vs + [nxt], es + [e])

    for v in range(d.n):
        extend([v], [])
    arcs.sort(key=lambda a: (a.vertices, a.edges))
    return arcs


def _arc_pairs(arcs: list[WalkArc], disjoint_only: bool):
    for i in range(len(arcs)):
        vi = set(arcs[i].vertices)
        for j in range(i + 1, len(arcs)):
            disjoint = vi.isdisjoint(arcs[j].vertices)
            if disjoint_only and not disjoint:
                continue
            yield arcs[i], arcs[j], disjoint


def find_crossing_pair(phi: SimplicialMap, disjoint_only: bool) -> CrossingWitness | None:
    """First crossing arc pair in enumeration order, or None.

    With disjoint_only the search realizes the transversal self-intersection
    predicate; without it, the stronger any-two-arcs condition that guards
    the derivative construction.
    """
    if not phi.is_nondegenerate():
        raise PreconditionError("map has degenerate edges; normalize first")
    if phi.target.max_degree() <= 2:
        return None
    arcs = _domain_arcs(phi)
    images = [phi.arc_image(a) for a in arcs]
    for i in range(len(arcs)):
        vi = set(arcs[i].vertices)
        for j in range(i + 1, len(arcs)):
            if disjoint_only and not vi.isdisjoint(arcs[j].vertices):
                continue
            a, b = images[i], images[j]
            key_a = (tuple(sorted(a[0])), tuple(sorted(a[1])))
            key_b = (tuple(sorted(b[0])), tuple(sorted(b[1])))
            hit = (
                _crossing_component(phi.target, a[0], a[1], b[0], b[1])
                if key_a <= key_b
                else _crossing_component(phi.target, b[0], b[1], a[0], a[1])
            )
            if hit is not None:
                svs, ses, kind, ports = hit
                return CrossingWitness(arcs[i], arcs[j], svs, ses, kind, ports)
    return None


def has_transversal_self_intersection(phi: SimplicialMap) -> CrossingWitness | None:
    """Witness of two vertex-disjoint domain arcs with crossing images, or None."""
    return find_crossing_pair(phi, disjoint_only=True)


def contains_simple_triod(phi: SimplicialMap) -> bool:
    """Does some domain vertex send three edges to three distinct target edges?"""
    if not phi.is_nondegenerate():
        raise PreconditionError("map has degenerate edges; normalize first")
    for v in range(phi.domain.n):
        imgs = {phi.edge_image[e] for e in phi.domain.incident[v]}
        if len(imgs) >= 3:
            return True
    return False


def _triods(phi: SimplicialMap) -> list[tuple[frozenset[int], frozenset[int | None]]]:
    out = []
    d = phi.domain
    for v in range(d.n):
        for trio in combinations(d.incident[v], 3):
            imgs = {phi.edge_image[e] for e in trio}
            if len(imgs) == 3:
                vs = {v}
                for e in trio:
                    vs.add(d.other_end(e, v))
                out.append((frozenset(vs), frozenset(imgs)))
    return out


def identifies_triods(phi: SimplicialMap) -> bool:
    """Two vertex-disjoint simple triods in the domain with the same image?"""
    if not phi.is_nondegenerate():
        raise PreconditionError("map has degenerate edges; normalize first")
    triods = _triods(phi)
    for i in range(len(triods)):
        for j in range(i + 1, len(triods)):
            if triods[i][1] == triods[j][1] and not (triods[i][0] & triods[j][0]):
                return True
    return False
