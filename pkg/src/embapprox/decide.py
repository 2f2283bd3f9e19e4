"""Decision procedures for approximability by embeddings.

Paths and cycles are decided by iterating the derivative and checking each
stage for transversal self-intersections (cycles additionally for windings
of degree outside {-1, 0, 1}).  Degree-3 domains over a cycle combine the
mod-2 obstruction with a winding-parity check on the last derivative.  A
second, independent route for paths uses the obstruction alone.  Every
verdict carries a trace of per-step events.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import SimplicialMap, normalize_nondegenerate
from .derivative import (
    _target_is_circle,
    derive,
    iterate_derivative,
    winding_report,
)
from .errors import DerivePreconditionError, PreconditionError
from .iso import maps_isomorphic
from .oracle import is_approximable_oracle
from .transversal import find_crossing_pair
from .vankampen import obstruction_vanishes

EVENT_KINDS = frozenset(
    {
        "transversal-self-intersection",
        "forbidden-winding",
        "obstruction-nonzero",
        "empty-domain",
        "terminal-approximable",
        "clean-pass",
    }
)


@dataclass(frozen=True)
class Event:
    kind: str
    detail: object = None

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise PreconditionError(f"unknown event kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "forbidden-winding":
            return f"forbidden-winding({self.detail})"
        if self.detail is None:
            return self.kind
        return f"{self.kind}(..)"


@dataclass(frozen=True)
class Verdict:
    approximable: bool
    criterion: str
    trace: tuple[tuple[int, Event], ...]
    flagged_for_review: bool = False

    def decisive(self) -> tuple[int, Event] | None:
        """The single non-clean event of a negative verdict."""
        hits = [
            (i, e)
            for i, e in self.trace
            if e.kind in ("transversal-self-intersection", "forbidden-winding", "obstruction-nonzero")
        ]
        return hits[0] if hits else None


def _escalate(cur: SimplicialMap, criterion: str, trace, step: int, err) -> Verdict:
    """Derive refused with a non-disjoint crossing: let the oracle decide."""
    ok, _ = is_approximable_oracle(cur)
    if ok:
        return Verdict(True, criterion, tuple(trace), flagged_for_review=True)
    trace.append((step, Event("transversal-self-intersection", err.witness)))
    return Verdict(False, criterion, tuple(trace), flagged_for_review=True)


def _decide_by_iteration(
    phi: SimplicialMap, criterion: str, check_windings: bool, stabilize: bool
) -> Verdict:
    budget = phi.domain.n
    cur = normalize_nondegenerate(phi)
    trace: list[tuple[int, Event]] = []
    for i in range(budget + 1):
        if cur.domain.n == 0:
            trace.append((i, Event("empty-domain")))
            return Verdict(True, criterion, tuple(trace))
        witness = find_crossing_pair(cur, disjoint_only=True)
        if witness is not None:
            trace.append((i, Event("transversal-self-intersection", witness)))
            return Verdict(False, criterion, tuple(trace))
        if check_windings:
            for comp in winding_report(cur).components:
                if comp.is_winding and abs(comp.degree) >= 2:
                    trace.append((i, Event("forbidden-winding", comp.degree)))
                    return Verdict(False, criterion, tuple(trace))
        trace.append((i, Event("clean-pass")))
        if i == budget:
            break
        try:
            step = derive(cur)
        except DerivePreconditionError as err:
            return _escalate(cur, criterion, trace, i, err)
        if step.terminal_approximable:
            trace.append((i + 1, Event("terminal-approximable")))
            return Verdict(True, criterion, tuple(trace))
        if stabilize and step.map.domain.n > 0 and maps_isomorphic(cur, step.map):
            break
        cur = step.map
    return Verdict(True, criterion, tuple(trace))


def decide_path(phi: SimplicialMap, stabilize: bool = True) -> Verdict:
    """A path map embeds approximably iff every derivative stage is crossing-free.

    ``stabilize`` exits once a derivative repeats up to isomorphism; it is an
    optimization that never changes the verdict, only shortens the trace.
    """
    if phi.domain.shape != "path":
        raise PreconditionError("domain shape must be path")
    return _decide_by_iteration(phi, "path-derivatives", False, stabilize)


def decide_cycle(phi: SimplicialMap, stabilize: bool = True) -> Verdict:
    """A cycle map additionally fails on any winding of degree outside {-1,0,1}."""
    if phi.domain.shape != "cycle":
        raise PreconditionError("domain shape must be cycle")
    return _decide_by_iteration(phi, "cycle-derivatives", True, stabilize)


def decide_path_via_vk(phi: SimplicialMap) -> Verdict:
    """Independent path route: approximable iff the obstruction vanishes."""
    if phi.domain.shape != "path":
        raise PreconditionError("domain shape must be path")
    vanishes, witness = obstruction_vanishes(phi)
    if vanishes:
        return Verdict(True, "path-van-kampen", ((0, Event("clean-pass")),))
    return Verdict(
        False, "path-van-kampen", ((0, Event("obstruction-nonzero", witness)),)
    )


def decide_deg3_to_circle(phi: SimplicialMap) -> Verdict:
    """Degree-<=3 domain into a cycle: obstruction plus last-stage winding parity.

    Not approximable exactly when the obstruction fails to vanish or the
    final derivative contains a winding of odd degree other than +-1.
    """
    d = phi.domain
    for v in range(d.n):
        if d.degree(v) > 3:
            raise PreconditionError(
                f"vertex {v} has degree {d.degree(v)} > 3"
            )
    if not _target_is_circle(phi.target):
        raise PreconditionError("target is not a cycle")
    if not phi.is_nondegenerate():
        raise PreconditionError("map must be nondegenerate")
    vanishes, witness = obstruction_vanishes(phi)
    if not vanishes:
        return Verdict(
            False,
            "degree-3-to-circle",
            ((0, Event("obstruction-nonzero", witness)),),
        )
    result = iterate_derivative(phi, max_steps=d.n)
    final = result.maps[-1]
    final_step = len(result.maps) - 1
    for comp in winding_report(final).components:
        if comp.is_winding and comp.degree % 2 != 0 and abs(comp.degree) >= 3:
            return Verdict(
                False,
                "degree-3-to-circle",
                ((final_step, Event("forbidden-winding", comp.degree)),),
            )
    return Verdict(True, "degree-3-to-circle", ((final_step, Event("clean-pass")),))
