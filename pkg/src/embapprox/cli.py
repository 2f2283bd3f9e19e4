"""Command-line front end.

Subcommands: check (decide one instance), derive (iterate the derivative,
optionally exporting DOT files), vk (obstruction report, single map or
pair), oracle (brute-force decision), winding (winding report), corpus
(agreement suites and fixture replay).  Exit codes: 0 approximable /
success, 1 not approximable / disagreement, 2 input or usage error, 3
out-of-scope shape, 4 inconclusive (budget exhausted).
"""

from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stdout
from importlib import resources
from pathlib import Path

from .core import parse_instance
from .corpus import TSV_HEADER, CorpusSpec, run_agreement
from .decide import decide_cycle, decide_deg3_to_circle, decide_path
from .derivative import iterate_derivative, winding_report
from .errors import (
    DanglingIdError,
    EmbapproxError,
    InvariantError,
    OracleBudgetExceeded,
    ParseError,
    PreconditionError,
)
from .oracle import oracle_result
from .vankampen import obstruction_report, pair_report, path_cut_components


def _load(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_instance(text)


def _dot(phi, title: str) -> str:
    g, d = phi.target, phi.domain
    lines = [f'graph "{title}" {{']
    lines.append("  // counterclockwise rotations of the target:")
    for v in range(g.n):
        rot = " ".join(g.edge_name(e) for e in g.rotation[v])
        lines.append(f"  // rot {g.name_of(v)} : {rot}")
    lines.append("  node [shape=circle];")
    for x in range(d.n):
        lines.append(
            f'  k{x} [label="{d.name_of(x)}->{g.name_of(phi.vertex_image[x])}"];'
        )
    for eid, (u, v) in enumerate(d.edges):
        img = phi.edge_image[eid]
        lbl = g.edge_name(img) if img is not None else "degenerate"
        lines.append(f'  k{u} -- k{v} [label="{lbl}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_check(args) -> int:
    phi = _load(args.file)
    shape = phi.domain.shape
    if shape == "path":
        verdict = decide_path(phi)
    elif shape == "cycle":
        verdict = decide_cycle(phi)
    else:
        verdict = decide_deg3_to_circle(phi)
    if verdict.approximable:
        print("approximable")
    else:
        _, event = verdict.decisive()
        print(f"not approximable: {event}")
    if verdict.flagged_for_review:
        print("flagged-for-review: derivative precondition failed; oracle decided")
    if args.trace:
        for step, event in verdict.trace:
            print(f"step {step}: {event}")
    return 0 if verdict.approximable else 1


def _cmd_derive(args) -> int:
    phi = _load(args.file)
    steps = args.steps if args.steps is not None else phi.domain.n
    result = iterate_derivative(phi, max_steps=steps)
    for i, m in enumerate(result.maps):
        d = m.domain
        print(
            f"step {i}: vertices={d.n} edges={len(d.edges)} shape={d.shape}"
            f" injective={'yes' if m.is_injective() else 'no'}"
        )
    print(f"status: {result.status}")
    if result.failure is not None:
        print(f"failure at step {result.failure_step}: {result.failure}")
    if args.dot:
        out = Path(args.dot)
        out.mkdir(parents=True, exist_ok=True)
        for i, m in enumerate(result.maps):
            (out / f"step{i}.dot").write_text(_dot(m, f"step{i}"), encoding="utf-8")
        print(f"wrote {len(result.maps)} dot files to {out}")
    return 0


def _cmd_vk(args) -> int:
    phi = _load(args.file)
    if args.pair:
        psi = _load(args.pair)
        report = pair_report(phi, psi)
        print("v = 0" if report.vanishes else "v != 0")
        print("kedge\tledge\tred\tparity")
        for (i, j), red, val in zip(report.cells2, report.red2, report.values):
            print(f"{i}\t{j}\t{'yes' if red else 'no'}\t{val}")
        return 0 if report.vanishes else 1
    report = obstruction_report(phi)
    print("v = 0" if report.vanishes else "v != 0")
    if report.vanishes:
        print(f"solving cochain: {len(report.solving_cells)} cells")
    else:
        print(f"certificate: {len(report.certificate_cells)} cells")
    if phi.domain.shape == "path":
        vec = path_cut_components(phi)
        print("cut-components: " + (" ".join(str(b) for b in vec) if vec else "-"))
    print("cell2\tred\tparity")
    for cell, red, val in zip(
        report.complex.cells2, report.complex.red2, report.values
    ):
        print(f"{cell[0]},{cell[1]}\t{'yes' if red else 'no'}\t{val}")
    return 0 if report.vanishes else 1


def _cmd_oracle(args) -> int:
    phi = _load(args.file)
    try:
        result = oracle_result(phi, max_lifts=args.max_lifts)
    except OracleBudgetExceeded as err:
        print(f"inconclusive: examined {err.lifts_examined} lifts")
        return 4
    print("approximable" if result.approximable else "not approximable")
    print(f"lifts examined: {result.lifts_examined}")
    print(f"total lifts: {result.total_lifts}")
    if args.witness and result.lift is not None:
        g = phi.target
        for a, row in enumerate(result.lift.by_edge):
            if row:
                print(f"lane order {g.edge_name(a)}: " + " ".join(map(str, row)))
    return 0 if result.approximable else 1


def _cmd_winding(args) -> int:
    phi = _load(args.file)
    report = winding_report(phi)
    for i, comp in enumerate(report.components):
        print(
            f"component {i}: vertices={len(comp.vertices)}"
            f" circle={'yes' if comp.is_circle else 'no'}"
            f" winding={'yes' if comp.is_winding else 'no'}"
            f" degree={comp.degree if comp.is_winding else '-'}"
        )
    degrees = report.winding_degrees()
    print(f"standard-winding: {'yes' if report.is_standard_winding() else 'no'}")
    print("degrees: " + (" ".join(str(x) for x in degrees) if degrees else "-"))
    return 0


def _fixture_dir():
    return resources.files("embapprox") / "fixtures"


def _replay_fixtures() -> int:
    base = _fixture_dir()
    expected_files = sorted(
        p.name for p in base.iterdir() if p.name.endswith(".expected")
    )
    failures = 0
    for name in expected_files:
        text = (base / name).read_text(encoding="utf-8")
        blocks = _parse_expected(text, name)
        for argv, body, code in blocks:
            argv = [
                str(base / tok) if tok.endswith(".inst") else tok for tok in argv
            ]
            buf = io.StringIO()
            with redirect_stdout(buf):
                got_code = main(argv)
            ok = buf.getvalue() == body and got_code == code
            status = "PASS" if ok else "FAIL"
            print(f"{status} {name}: {' '.join(argv[:1])} (exit {got_code})")
            if not ok:
                failures += 1
                sys.stderr.write(
                    f"--- expected (exit {code}) ---\n{body}"
                    f"--- got (exit {got_code}) ---\n{buf.getvalue()}"
                )
    print(f"fixtures: {len(expected_files)} files, {failures} failures")
    return 1 if failures else 0


def _parse_expected(text: str, name: str):
    """Blocks of `$ cmd args`, captured stdout, `$ exit N`."""
    blocks = []
    lines = text.splitlines(keepends=True)
    i = 0
    while i < len(lines):
        head = lines[i].rstrip("\n")
        if not head.startswith("$ "):
            raise ParseError(f"{name}: expected a '$ command' line", i + 1)
        argv = head[2:].split()
        i += 1
        body: list[str] = []
        while i < len(lines) and not lines[i].startswith("$ exit"):
            body.append(lines[i])
            i += 1
        if i == len(lines):
            raise ParseError(f"{name}: missing '$ exit N' line", i)
        code = int(lines[i].split()[2])
        i += 1
        blocks.append((argv, "".join(body), code))
    return blocks


def _cmd_corpus(args) -> int:
    if args.fixtures:
        return _replay_fixtures()
    if not args.shape or not args.target:
        print("error: --shape and --target are required (or --fixtures)", file=sys.stderr)
        return 2
    spec = CorpusSpec(
        shape=args.shape,
        targets=tuple(args.target),
        k_min=args.k_min,
        k_max=args.k_max,
        mode=args.mode,
        seed=args.seed,
        count=args.count,
        max_lifts=args.max_lifts,
    )
    rows, bad = run_agreement(spec, jobs=args.jobs)
    out_lines = [TSV_HEADER] + [r.tsv() for r in rows]
    payload = "\n".join(out_lines) + "\n"
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    print(f"rows: {len(rows)} disagreements: {bad}", file=sys.stderr)
    return 1 if bad else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embapprox",
        description="decide approximability by embeddings of simplicial maps into plane graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide one instance")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="print per-step events")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("derive", help="iterate the derivative")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=None, help="iteration budget (default: vertex count)")
    p.add_argument("--dot", metavar="DIR", help="write one DOT file per step")
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser("vk", help="obstruction report")
    p.add_argument("file")
    p.add_argument("--pair", metavar="FILE2", help="second map; report the pair obstruction")
    p.set_defaults(func=_cmd_vk)

    p = sub.add_parser("oracle", help="brute-force lift search")
    p.add_argument("file")
    p.add_argument("--max-lifts", type=int, default=None)
    p.add_argument("--witness", action="store_true", help="print the accepted lift's lane orders")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("winding", help="winding report")
    p.add_argument("file")
    p.set_defaults(func=_cmd_winding)

    p = sub.add_parser("corpus", help="agreement suites and fixture replay")
    p.add_argument("--shape", choices=("path", "cycle", "deg3"))
    p.add_argument("--target", action="append", help="catalog target (repeatable)")
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--max-lifts", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--fixtures", action="store_true", help="replay shipped fixtures")
    p.set_defaults(func=_cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ParseError, DanglingIdError, InvariantError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except PreconditionError as err:
        print(f"out of scope: {err}", file=sys.stderr)
        return 3
    except OracleBudgetExceeded as err:
        print(f"inconclusive: {err}", file=sys.stderr)
        return 4
    except EmbapproxError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
