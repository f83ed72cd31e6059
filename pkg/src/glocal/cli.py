"""``glocal`` command-line interface.

Exit codes: 0 success / equivalent, 1 negative result, 2 unknown or capped,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from . import __version__
from .bits import from_iter, to_list
from .equivalence import SearchCaps, decide_lc1, decide_level, decide_lu_small
from .families import (
    FamilySpec,
    check_obstruction,
    gen_family,
    gen_repeater,
    hierarchy_params,
    verify_family_pair,
)
from .genlc import CapExceeded, InvalidRLC
from .graph import Graph
from .io import FIXTURE_NAMES, Fixture, load_fixture, parse_graph, to_dot, to_edge_json, to_graph6
from .localsets import enumerate_mls, types_from_mls
from .moves import InvalidMove, moves_from_json, replay
from .qoracle import build_graph_state, project_qubit
from .standardform import is_standard_form
from .suites import FIGURE_RLC, figure_instance, lc_suite, pivot_suite, rlc_instance_deviation, rlc_suite, stabilizer_suite

EXIT_OK, EXIT_NEGATIVE, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64
FORMATS = ("json", "text", "graph6", "dot")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    caps_n: int = 20
    orbit_cap: int = 1_000_000
    witness_bits: int = 24
    tol: float = 1e-9
    seed: int = 0
    fmt: str = "json"

    def __post_init__(self):
        if min(self.caps_n, self.orbit_cap, self.witness_bits) <= 0 or self.tol <= 0:
            raise UsageError("caps and tolerances must be positive")
        if self.fmt not in FORMATS:
            raise UsageError(f"unknown format {self.fmt!r}")

    def search_caps(self) -> SearchCaps:
        return SearchCaps(max_n=self.caps_n, orbit=self.orbit_cap, witness_bits=self.witness_bits,
                          mls_n=self.caps_n)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- input helpers -------------------------------------------------------------


def read_graph(spec: str) -> tuple[Graph, Fixture | None]:
    """``-`` (stdin), ``fixture:NAME``, a file path, or an inline graph6 string."""
    if spec.startswith("fixture:"):
        fx = load_fixture(spec.split(":", 1)[1])
        return fx.graph, fx
    if spec == "-":
        return parse_graph(sys.stdin.read()), None
    if os.path.exists(spec):
        with open(spec) as fh:
            return parse_graph(fh.read()), None
    return parse_graph(spec), None


def _resolve_vertex(key, fx: Fixture | None) -> int:
    if isinstance(key, int):
        return key
    key = str(key)
    if key.lstrip("-").isdigit():
        return int(key)
    if fx is not None and key in fx.labels:
        return fx.index(key)
    raise UsageError(f"unknown vertex {key!r}")


def _resolve_moves(raw: list, fx: Fixture | None) -> list[dict]:
    out = []
    for item in raw:
        item = dict(item)
        for f in ("u", "v"):
            if f in item:
                item[f] = _resolve_vertex(item[f], fx)
        if "mult" in item:
            item["mult"] = {str(_resolve_vertex(k, fx)): v for k, v in item["mult"].items()}
        out.append(item)
    return out


def emit_graph(g: Graph, fmt: str, labels=None) -> str:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "dot":
        return to_dot(g, list(labels) if labels else None).rstrip("\n")
    if fmt == "text":
        return f"n={g.n} edges={g.edges()}"
    return json.dumps(to_edge_json(g))


def emit(obj, fmt: str) -> str:
    if fmt == "text" and isinstance(obj, dict):
        return "\n".join(f"{k}: {json.dumps(v)}" for k, v in obj.items())
    return json.dumps(obj, sort_keys=True)


# -- commands ------------------------------------------------------------------


def cmd_gen(args, cfg: RunConfig) -> int:
    fmt = args.format or "graph6"
    labels = None
    if args.what == "family":
        spec = FamilySpec(args.t, args.k, "C'" if args.variant in ("C'", "Cprime", "prime") else "C")
        g = gen_family(spec)
        labels = spec.labels()
    elif args.what == "repeater":
        g = gen_repeater(args.kind, args.n)
    elif args.what == "random":
        g = Graph.random(args.n, args.p, random.Random(cfg.seed if args.seed is None else args.seed))
    else:
        fx = load_fixture(args.name)
        g, labels = fx.graph, fx.labels
    print(emit_graph(g, fmt, labels))
    return EXIT_OK


def cmd_apply(args, cfg: RunConfig) -> int:
    g, fx = read_graph(args.graph)
    with open(args.moves) if args.moves != "-" else sys.stdin as fh:
        raw = json.load(fh)
    moves = moves_from_json(g.n, _resolve_moves(raw, fx))
    try:
        out = replay(g, moves, verify=args.verify)
    except InvalidMove as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    print(emit_graph(out, args.format or "graph6", fx.labels if fx else None))
    return EXIT_OK


def cmd_analyze(args, cfg: RunConfig) -> int:
    g, fx = read_graph(args.graph)
    name = (lambda u: fx.labels[u]) if fx else (lambda u: u)
    report: dict = {"n": g.n, "edges": [[name(u), name(v)] for u, v in g.edges()], "capped": False}
    try:
        mls = enumerate_mls(g, cfg.caps_n)
    except CapExceeded as exc:
        report.update(capped=True, mls=None, types=None, standard_form=None, cap_detail=str(exc))
        mls = None
    if mls is not None:
        types = types_from_mls(g.n, mls, g)
        report["mls"] = [{"set": [name(u) for u in to_list(m.set)], "dimension": m.dimension,
                          "generators": [[name(u) for u in to_list(d)] for d in m.generators]} for m in mls]
        report["types"] = {lab: [name(u) for u in us] for lab, us in types.to_json().items()}
        report["standard_form"] = is_standard_form(g, types)
    cuts = []
    for cut in args.cut or []:
        mask = from_iter(_resolve_vertex(x, fx) for x in cut.split(",") if x)
        cuts.append({"cut": [name(u) for u in to_list(mask)], "rank": g.cut_rank(mask).rank})
    report["cut_ranks"] = cuts
    print(emit(report, args.format or "json"))
    return EXIT_UNKNOWN if report["capped"] else EXIT_OK


def cmd_equiv(args, cfg: RunConfig) -> int:
    g1, _ = read_graph(args.g1)
    g2, _ = read_graph(args.g2)
    if g1.n != g2.n:
        raise UsageError(f"graphs have different orders ({g1.n}, {g2.n})")
    caps = cfg.search_caps()
    try:
        if args.level == "lu":
            cert = decide_lu_small(g1, g2, caps)
        elif args.level == "1":
            cert = decide_lc1(g1, g2, caps)
        else:
            cert = decide_level(g1, g2, int(args.level), caps)
    except CapExceeded as exc:
        print(emit({"verdict": "unknown", "level": args.level, "moves": None,
                    "obstruction": {"kind": "cap", "detail": str(exc)}}, "json"))
        return EXIT_UNKNOWN
    print(emit(cert.to_json(), "json"))
    return cert.exit_code


def cmd_hierarchy(args, cfg: RunConfig) -> int:
    if args.r < 2:
        raise UsageError("--r must be >= 2")
    params = hierarchy_params(args.r, args.t_max)
    report = params.to_json()
    chosen = (params.t, params.k) if params.valid else params.fallback
    report["discrepancy"] = None if params.valid else (
        f"closed-form parameters (t={params.t}, k={params.k}) fail validation; "
        f"fallback scan gives {None if chosen is None else {'t': chosen[0], 'k': chosen[1]}}"
    )
    if chosen is not None:
        t, k = chosen
        if FamilySpec(t, k).order <= args.max_order:
            report["witness"] = verify_family_pair(t, k, args.r)
        else:
            report["witness"] = {"t": t, "k": k, "capped": True}
        if args.validate:
            report["lower_level_refutation"] = {"r": args.r - 1, "obstruction": check_obstruction(t, k, args.r - 1)}
    print(emit(report, args.format or "json"))
    return EXIT_OK if chosen is not None else EXIT_NEGATIVE


def cmd_oracle(args, cfg: RunConfig) -> int:
    tol = args.tol
    if args.check == "stabilizers":
        res = stabilizer_suite(args.n_max, tol or 1e-10)
    elif args.check == "lc":
        res = lc_suite(args.exhaustive, tol or 1e-10)
    elif args.check == "pivot":
        res = pivot_suite(args.exhaustive, tol or 1e-10)
    elif args.check == "rlc":
        if args.fixture:
            g, g2, s, r = figure_instance(args.fixture)
            dev = rlc_instance_deviation(g, s, r)
            ok = dev <= (tol or 1e-9)
            print(emit({"suite": "rlc", "fixture": args.fixture, "pass": ok, "max_deviation": dev}, "json"))
            return EXIT_OK if ok else EXIT_NEGATIVE
        res = rlc_suite(args.count, cfg.seed, tol or 1e-9)
    else:
        g, _ = read_graph(args.graph)
        st = build_graph_state(g, cfg.caps_n)
        proj, weight = project_qubit(st, args.u, args.basis)
        print(emit({"n": g.n, "u": args.u, "basis": args.basis, "weight": weight}, "json"))
        return EXIT_OK
    print(emit(res.to_json(), "json"))
    return EXIT_OK if res.passed else EXIT_NEGATIVE


# -- parser --------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--caps-n", type=int, default=None, help="vertex cap for exponential enumerations")
    p.add_argument("--orbit-cap", type=int, default=1_000_000)
    p.add_argument("--witness-bits", type=int, default=24)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=FORMATS, default=None)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="glocal", description="Generalised local complementation toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="generate a graph")
    gsub = gen.add_subparsers(dest="what", required=True, parser_class=_Parser)
    fam = gsub.add_parser("family", parents=[common])
    fam.add_argument("--t", type=int, required=True)
    fam.add_argument("--k", type=int, required=True)
    fam.add_argument("--variant", default="C", choices=["C", "C'", "Cprime", "prime"])
    rep = gsub.add_parser("repeater", parents=[common])
    rep.add_argument("--kind", choices=["complete", "biclique"], required=True)
    rep.add_argument("--n", type=int, required=True)
    rnd = gsub.add_parser("random", parents=[common])
    rnd.add_argument("--n", type=int, required=True)
    rnd.add_argument("--p", type=float, default=0.5)
    fx = gsub.add_parser("fixture", parents=[common])
    fx.add_argument("name", choices=FIXTURE_NAMES)
    gen.set_defaults(func=cmd_gen)

    app = sub.add_parser("apply", parents=[common], help="replay a move sequence")
    app.add_argument("graph")
    app.add_argument("moves", help="JSON move list (file or -)")
    app.add_argument("--verify", action="store_true", help="re-check r-incidence of every r-LC")
    app.set_defaults(func=cmd_apply)

    ana = sub.add_parser("analyze", parents=[common], help="minimal local sets, types, standard form")
    ana.add_argument("graph")
    ana.add_argument("--cut", action="append", help="comma-separated vertex set; repeatable")
    ana.set_defaults(func=cmd_analyze)

    eq = sub.add_parser("equiv", parents=[common], help="decide equivalence of two graphs")
    eq.add_argument("g1")
    eq.add_argument("g2")
    eq.add_argument("--level", default="lu", help="1, an integer r >= 2, or lu")
    eq.set_defaults(func=cmd_equiv)

    hi = sub.add_parser("hierarchy", parents=[common], help="hierarchy pair parameters")
    hi.add_argument("--r", type=int, required=True)
    hi.add_argument("--validate", action="store_true")
    hi.add_argument("--t-max", type=int, default=None)
    hi.add_argument("--max-order", type=int, default=20_000)
    hi.set_defaults(func=cmd_hierarchy)

    ora = sub.add_parser("oracle", parents=[common], help="statevector certification")
    osub = ora.add_subparsers(dest="check", required=True, parser_class=_Parser)
    st = osub.add_parser("stabilizers", parents=[common])
    st.add_argument("--n-max", type=int, default=5)
    for name in ("lc", "pivot"):
        p = osub.add_parser(name, parents=[common])
        p.add_argument("--exhaustive", type=int, default=5, metavar="N_MAX")
    rl = osub.add_parser("rlc", parents=[common])
    rl.add_argument("--fixture", choices=sorted(FIGURE_RLC))
    rl.add_argument("--count", type=int, default=200)
    pr = osub.add_parser("project", parents=[common])
    pr.add_argument("graph")
    pr.add_argument("--u", type=int, required=True)
    pr.add_argument("--basis", choices=["Z0", "Z1", "Xplus"], default="Z0")
    ora.set_defaults(func=cmd_oracle)
    return parser


def _config(args) -> RunConfig:
    caps_n = args.caps_n if args.caps_n is not None else int(os.environ.get("GLOCAL_CAPS_N", "20"))
    return RunConfig(
        caps_n=caps_n,
        orbit_cap=args.orbit_cap,
        witness_bits=args.witness_bits,
        tol=args.tol if args.tol is not None else 1e-9,
        seed=args.seed if args.seed is not None else 0,
        fmt=args.format or "json",
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"glocal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, OSError, json.JSONDecodeError, InvalidRLC) as exc:
        print(f"glocal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"glocal: capped: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
