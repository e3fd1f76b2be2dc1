"""Command-line front end: build, verify, automorphism, classify.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import DomainError, InputError, InternalError, RabkitError, ValidationError
from .graph_product import (
    DefiningGraph, claw_graph, complete_bipartite, cycle_graph, element_from_json, element_to_json,
    heawood_graph, load_graph, running_example,
)

BUILTINS = {
    "running": running_example,
    "heawood": lambda: heawood_graph(2),
    "heawood3": lambda: heawood_graph(3),
    "hexagon3": lambda: cycle_graph(6, 3),
    "square": lambda: cycle_graph(4, 2),
    "square3": lambda: cycle_graph(4, 3),
    "k23": lambda: complete_bipartite(2, 3),
    "claw": claw_graph,
}


@dataclass
class RunConfig:
    graph_path: str
    radius: int | None = None
    seed: int = 0
    out: str | None = None
    fmt: str | None = None
    threads: int = 1


def resolve_graph(spec: str) -> DefiningGraph:
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name not in BUILTINS:
            raise InputError(f"unknown builtin graph {name!r}; choose from {', '.join(sorted(BUILTINS))}")
        return BUILTINS[name]()
    return load_graph(spec)


def threads_from_env() -> int:
    raw = os.environ.get("RABKIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"RABKIT_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError("RABKIT_THREADS must be at least 1")
    return n


def _emit(text: str, out: str | None, filename: str) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    (d / filename).write_text(text if text.endswith("\n") else text + "\n")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)


# -- commands ---------------------------------------------------------------------

def cmd_build(cfg: RunConfig) -> int:
    from .building import Building
    g = resolve_graph(cfg.graph_path)
    radius = 1 if cfg.radius is None else cfg.radius
    if radius < 0:
        raise InputError("radius must be non-negative")
    B = Building(g)
    T = B.truncation(radius)
    formats = [cfg.fmt] if cfg.fmt else (["json", "dot"] if cfg.out else ["json"])
    for f in formats:
        if f == "json":
            _emit(T.dumps_json(g), cfg.out, f"building_r{radius}.json")
        else:
            _emit(T.to_dot(B), cfg.out, f"building_r{radius}.dot")
    return 0


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    from .verify import run_suite
    g = resolve_graph(cfg.graph_path)
    if cfg.radius is not None and cfg.radius < 0:
        raise InputError("radius must be non-negative")
    rep = run_suite(suite, g, cfg.radius, cfg.seed, cfg.threads)
    _emit(rep.dumps(), cfg.out, f"report_{suite}.json")
    for line in rep.summary_lines():
        print(line, file=sys.stderr)
    print(f"{'PASS' if rep.ok else 'FAIL'} {suite}: {rep.violations} violations", file=sys.stderr)
    return 0 if rep.ok else 1


def _atlas(B, name: str):
    from .atlases import standard_atlas, twisted_atlas
    if name == "standard":
        return standard_atlas(B)
    return twisted_atlas(B, name)[0]


def _element_arg(raw: str | None, g: DefiningGraph):
    if raw is None:
        return ()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"element must be JSON like [[0,1],[2,1]]: {exc}") from None
    return element_from_json(data, g)


def cmd_automorphism(cfg: RunConfig, atlas1: str, atlas2: str, source: str | None,
                     target: str | None, demo: str | None, samples: int) -> int:
    from .atlases import commensuration_demo, extend_automorphism
    from .building import Building, Chamber
    g = resolve_graph(cfg.graph_path)
    B = Building(g)
    radius = 2 if cfg.radius is None else cfg.radius
    if demo is not None:
        rep = commensuration_demo(B, demo, radius, samples, cfg.seed)
        _emit(_dumps(rep.to_json()), cfg.out, f"demo_{demo}.json")
        return 0 if rep.ok else 1
    C = Chamber(_element_arg(source, g))
    D = Chamber(_element_arg(target, g))
    E = extend_automorphism(None, C, D, _atlas(B, atlas1), _atlas(B, atlas2), radius)
    rows = []
    for x in g.enumerate_ball(radius):
        Cx = Chamber(g.multiply(C.label, x))
        img, sigma = E.apply(Cx)
        rows.append({"chamber": element_to_json(Cx.label), "image": element_to_json(img.label),
                     "sigma": list(sigma)})
    out = {"atlas1": atlas1, "atlas2": atlas2, "source": element_to_json(C.label),
           "target": element_to_json(D.label), "radius": radius, "table": rows}
    _emit(_dumps(out), cfg.out, "automorphism.json")
    return 0


def cmd_classify(cfg: RunConfig, links: bool) -> int:
    from .fuchsian import classify_case, edge_cell_incidence, verify_links
    g = resolve_graph(cfg.graph_path)
    rep = classify_case(g)
    if links and rep.case != "none":
        radius = 1 if cfg.radius is None else cfg.radius
        lr = verify_links(g, radius)
        rep.link_check = lr.to_json()
        rep.notes["incidence"] = edge_cell_incidence(g)
    _emit(_dumps(rep.to_json()), cfg.out, "classify.json")
    if rep.link_check is not None and not rep.link_check["ok"]:
        return 1
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .verify import SUITES
    p = argparse.ArgumentParser(prog="rabkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, radius_help: str):
        sp.add_argument("--graph", default="builtin:running",
                        help="graph spec JSON path or builtin:NAME (%s)" % ", ".join(sorted(BUILTINS)))
        sp.add_argument("--radius", type=int, default=None, help=radius_help)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="output directory (default: stdout)")

    b = sub.add_parser("build", help="export a truncation of the building")
    common(b, "ball radius (default 1)")
    b.add_argument("--format", choices=["dot", "json"], default=None)

    v = sub.add_parser("verify", help="run a verification suite")
    common(v, "override each suite's default radius")
    v.add_argument("--suite", required=True, choices=[*SUITES, "all"])

    a = sub.add_parser("automorphism", help="extend a chamber map using typed atlases")
    common(a, "ball radius for the table (default 2)")
    atlases = ["standard", "inversion", "rotation"]
    a.add_argument("--atlas1", choices=atlases, default="standard")
    a.add_argument("--atlas2", choices=atlases, default="standard")
    a.add_argument("--source", default=None, help="source chamber as JSON element (default identity)")
    a.add_argument("--target", default=None, help="target chamber as JSON element (default identity)")
    a.add_argument("--demo", choices=["none", "inversion", "rotation"], default=None,
                   help="run the commensuration demo for this twist instead")
    a.add_argument("--samples", type=int, default=10)

    c = sub.add_parser("classify", help="Fuchsian case classification")
    common(c, "link check radius (default 1)")
    c.add_argument("--links", action="store_true", help="also verify vertex links")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.graph, args.radius, args.seed, args.out,
                        getattr(args, "format", None), threads_from_env())
        if args.command == "build":
            return cmd_build(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite)
        if args.command == "automorphism":
            return cmd_automorphism(cfg, args.atlas1, args.atlas2, args.source, args.target,
                                    args.demo, args.samples)
        return cmd_classify(cfg, args.links)
    except (InputError, DomainError, ValidationError) as exc:
        print(f"rabkit: error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"rabkit: internal consistency failure: {exc}", file=sys.stderr)
        return 1
    except RabkitError as exc:
        print(f"rabkit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
