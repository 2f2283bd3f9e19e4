"""Instance generation and the decision/oracle agreement runner.

Exhaustive corpora enumerate every simplicial map of a path or cycle into a
catalog target as a vertex assignment where consecutive images are equal or
adjacent.  Random corpora draw degree-<=3 multigraph domains with
nondegenerate assignments into a cycle, reproducibly from a seed.  The
runner decides every instance along each applicable route, compares with
the brute-force oracle, and emits one TSV row per instance.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import transversal
from .catalog import TARGETS, cycle_domain, path_domain
from .core import DomainGraph, PlaneGraph, SimplicialMap, _pair
from .decide import decide_cycle, decide_deg3_to_circle, decide_path, decide_path_via_vk
from .derivative import iterate_derivative
from .errors import OracleBudgetExceeded
from .oracle import is_approximable_oracle

TSV_HEADER = "instance\tshape\ttarget\tk\tdecide\toracle\tvk\tagree"


@dataclass(frozen=True)
class CorpusSpec:
    """What to generate and how."""

    shape: str  # path | cycle | deg3
    targets: tuple[str, ...]
    k_min: int = 1
    k_max: int = 7
    mode: str = "exhaustive"  # exhaustive | random (deg3 is always random)
    seed: int = 0
    count: int = 500  # random mode: instances per target
    max_lifts: int | None = None  # per-instance oracle budget

    def __post_init__(self):
        if self.shape not in ("path", "cycle", "deg3"):
            raise ValueError(f"unknown corpus shape {self.shape!r}")
        for t in self.targets:
            if t not in TARGETS:
                raise ValueError(f"unknown target {t!r}")


def _assignments(g: PlaneGraph, k: int, closed: bool):
    """Every vertex assignment where consecutive images are equal or adjacent."""
    neighbors = [
        [g.other_end(e, v) for e in g.rotation[v]] for v in range(g.n)
    ]
    seq: list[int] = []

    def extend(i: int):
        if i == k:
            if closed and k > 1:
                last, first = seq[-1], seq[0]
                if last != first and _pair(last, first) not in g.edge_index:
                    return
            yield tuple(seq)
            return
        options = range(g.n) if i == 0 else sorted({seq[-1], *neighbors[seq[-1]]})
        for img in options:
            seq.append(img)
            yield from extend(i + 1)
            seq.pop()

    yield from extend(0)


def generate(spec: CorpusSpec):
    """Yield (instance id, map) deterministically."""
    for tname in spec.targets:
        g = TARGETS[tname]()
        if spec.shape == "deg3":
            rng = random.Random(spec.seed)
            made = 0
            while made < spec.count:
                phi = random_deg3_map(g, rng, max_vertices=spec.k_max)
                yield f"deg3-{tname}-s{spec.seed}-{made:05d}", phi
                made += 1
            continue
        closed = spec.shape == "cycle"
        k_lo = max(spec.k_min, 3) if closed else spec.k_min
        for k in range(k_lo, spec.k_max + 1):
            domain = cycle_domain(k) if closed else path_domain(k)
            idx = 0
            for images in _assignments(g, k, closed):
                yield f"{spec.shape}-{tname}-k{k}-{idx:06d}", SimplicialMap(
                    domain, g, images
                )
                idx += 1


def random_deg3_map(
    target: PlaneGraph, rng: random.Random, max_vertices: int = 8
) -> SimplicialMap:
    """A loop-free multigraph with all degrees <= 3 and a nondegenerate map.

    Images spread from a random root along a spanning forest; instances whose
    non-tree edges land on non-adjacent images are redrawn.
    """
    while True:
        n = rng.randint(1, max_vertices)
        deg = [0] * n
        edges: list[tuple[int, int]] = []
        for _ in range(rng.randint(0, 2 * n)):
            u, v = rng.randrange(n), rng.randrange(n)
            if u == v or deg[u] >= 3 or deg[v] >= 3:
                continue
            edges.append(_pair(u, v))
            deg[u] += 1
            deg[v] += 1
        edges.sort()
        incident: list[list[int]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(edges):
            incident[u].append(eid)
            incident[v].append(eid)
        images: list[int | None] = [None] * n
        ok = True
        for root in range(n):
            if images[root] is not None:
                continue
            images[root] = rng.randrange(target.n)
            stack = [root]
            while stack and ok:
                x = stack.pop()
                for eid in incident[x]:
                    u, v = edges[eid]
                    y = v if x == u else u
                    if images[y] is None:
                        a = images[x]
                        nbrs = [target.other_end(e, a) for e in target.rotation[a]]
                        images[y] = nbrs[rng.randrange(len(nbrs))]
                        stack.append(y)
                    else:
                        a, b = images[x], images[y]
                        if a == b or _pair(a, b) not in target.edge_index:
                            ok = False
                            break
        if not ok:
            continue
        domain = DomainGraph(n, tuple(edges), "general")
        return SimplicialMap(domain, target, tuple(images))


@dataclass(frozen=True)
class AgreementRow:
    instance: str
    shape: str
    target: str
    k: int
    decide: str
    oracle: str
    vk: str
    agree: bool

    def tsv(self) -> str:
        return "\t".join(
            (
                self.instance,
                self.shape,
                self.target,
                str(self.k),
                self.decide,
                self.oracle,
                self.vk,
                "yes" if self.agree else "NO",
            )
        )


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def evaluate_instance(
    instance_id: str, phi: SimplicialMap, shape: str, target_name: str,
    max_lifts: int | None = None,
) -> AgreementRow:
    k = phi.domain.n
    vk = "-"
    if shape == "path":
        d = decide_path(phi).approximable
        vk_verdict = decide_path_via_vk(phi).approximable
        vk = _yn(vk_verdict)
    elif shape == "cycle":
        d = decide_cycle(phi).approximable
        vk_verdict = d
    else:
        d = decide_deg3_to_circle(phi).approximable
        vk_verdict = d
    try:
        o, _ = is_approximable_oracle(phi, max_lifts=max_lifts)
        oracle_str = _yn(o)
        agree = (d == o) and (vk_verdict == o)
    except OracleBudgetExceeded:
        oracle_str = "inconclusive"
        agree = False
    return AgreementRow(
        instance_id, shape, target_name, k, _yn(d), oracle_str, vk, agree
    )


def _eval_packed(args) -> AgreementRow:
    instance_id, phi, shape, target_name, max_lifts = args
    return evaluate_instance(instance_id, phi, shape, target_name, max_lifts)


def run_agreement(spec: CorpusSpec, jobs: int = 1):
    """Evaluate the whole corpus; returns (rows sorted by id, disagreements)."""
    tasks = []
    for instance_id, phi in generate(spec):
        target_name = instance_id.split("-")[1]
        tasks.append((instance_id, phi, spec.shape, target_name, spec.max_lifts))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_eval_packed, tasks, chunksize=64))
    else:
        rows = [_eval_packed(t) for t in tasks]
    transversal._crossing_component.cache_clear()
    rows.sort(key=lambda r: r.instance)
    bad = sum(1 for r in rows if not r.agree)
    return rows, bad


def final_derivative_state(phi: SimplicialMap) -> tuple[str, SimplicialMap]:
    """Status and last map of the full derivative iteration (budget = k)."""
    result = iterate_derivative(phi, max_steps=phi.domain.n)
    return result.status, result.maps[-1]
