"""Command-line entry point: one binary, five subcommands.

  polarity    build a projective-plane polarity graph, write an edge list
  hom         weighted homomorphism counting between edge-list graphs
  certify     countability/tameness search and certificate verification
  harness     numerical experiments (counting gaps, discrepancy, trimming)
  corpus      regression sweep over the bundled example graphs

Results go to stdout as a single JSON document wrapping the payload and a
run manifest (argv, seed, library versions, input digests, output paths);
files requested via -o/--emit/--report/--dot receive the bare payload. In
exact mode a rerun of the same manifest is byte-identical.

Exit codes: 0 success, 2 a verification or corpus check failed, 3 resource
budget exceeded, 4 bad input (including usage errors). All randomness flows
from --seed; there is no ambient entropy. The C4COUNT_MEMO_CAP environment
variable bounds the certifier's memo tables (speed only, never verdicts).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from . import certify as certify_mod
from .certify import (
    DEFAULT_COUNTABLE_BUDGET,
    DEFAULT_TAME_BUDGET,
    certificate_document,
    load_certificate_document,
    search_countable,
    search_tame,
    verify_countable_cert,
    verify_tame_cert,
)
from .corpus import run_corpus
from .errors import InputError, PreconditionError, ResourceLimitError
from .graphs import Graph, format_edge_list, isomorphic, parse_edge_list, to_dot
from .harness import (
    c4_counterexample,
    constant_host,
    counting_experiment,
    discrepancy_search,
    discrepancy_spectral,
    triangle_counterexample,
    trim,
)
from .homcount import DenseHost, SparseHost, VertexWeights, hom_weighted
from .polarity import build_polarity, verify_polarity

RESULT_SCHEMA = "c4count/cli-result/1"
MANIFEST_SCHEMA = "c4count/run-manifest/1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 2
EXIT_RESOURCE = 3
EXIT_INPUT = 4


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is 4."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -- plumbing --------------------------------------------------------------------


def _versions() -> dict:
    import platform

    import networkx
    import scipy

    try:
        from importlib.metadata import version

        own = version("c4count")
    except Exception:
        own = "unknown"
    return {
        "c4count": own,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "networkx": networkx.__version__,
    }


class _Run:
    """Collects input digests and output paths for the manifest."""

    def __init__(self, argv: list[str], seed: Optional[int]):
        self.argv = argv
        self.seed = seed
        self.inputs: dict[str, str] = {}
        self.outputs: list[str] = []

    def read_text(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as e:
            raise InputError(f"cannot read {path}: {e}") from None
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return data.decode("utf-8")

    def read_graph(self, path: str, allow_loops: bool = False) -> Graph:
        return parse_edge_list(self.read_text(path), allow_loops=allow_loops)

    def read_json(self, path: str):
        text = self.read_text(path)
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"{path} is not valid JSON: {e}") from None

    def write(self, path: str, text: str) -> None:
        try:
            Path(path).write_text(text)
        except OSError as e:
            raise InputError(f"cannot write {path}: {e}") from None
        self.outputs.append(path)

    def manifest(self) -> dict:
        return {
            "schema": MANIFEST_SCHEMA,
            "argv": self.argv,
            "seed": self.seed,
            "versions": _versions(),
            "inputs": self.inputs,
            "outputs": self.outputs,
        }


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    raise TypeError(f"not JSON-serializable: {type(x).__name__}")


def _dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, default=_json_default) + "\n"


def _scalar(x):
    """Exact-friendly JSON scalar; non-integer rationals go through str."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, (bool, int, np.integer)):
        return int(x)
    return None if x is None else float(x)


def _parse_fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{what} must be a rational like 1/2 or 0.25, got {text!r}") from None


def _graph_stats(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "loops": sum(1 for u, v in g.edges if u == v)}


def _host_from_json(doc) -> DenseHost:
    """Dense host descriptor: {"kind": "constant", "n": N, "value": v}
    or {"kind": "matrix", "entries": [[...], ...]}."""
    if not isinstance(doc, dict):
        raise InputError("host file must hold a JSON object")
    kind = doc.get("kind")
    if kind == "constant":
        n, value = doc.get("n"), doc.get("value")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise InputError("constant host needs an integer vertex count n")
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise InputError("constant host needs a numeric value")
        return DenseHost.constant(n, float(value))
    if kind == "matrix":
        entries = doc.get("entries")
        if not isinstance(entries, list):
            raise InputError("matrix host needs an entries array")
        return DenseHost(np.asarray(entries, dtype=np.float64))
    raise InputError(f"host kind must be 'constant' or 'matrix', got {kind!r}")


# -- subcommand handlers -----------------------------------------------------------


def _cmd_polarity(args, run: _Run):
    pol = build_polarity(args.q)
    g = pol.loopless if args.loopless else pol.g0
    run.write(args.output, format_edge_list(g))
    payload = {
        "q": args.q,
        "variant": "loopless" if args.loopless else "with-loops",
        "graph": _graph_stats(g),
    }
    if args.dot:
        run.write(args.dot, to_dot(g, name=f"polarity_{args.q}"))
    code = EXIT_OK
    if args.verify:
        report = verify_polarity(pol)
        payload["verification"] = report.as_dict()
        if not report.passed:
            code = EXIT_CHECK_FAILED
    return code, payload


def _cmd_hom(args, run: _Run):
    f = run.read_graph(args.pattern)
    g = run.read_graph(args.host, allow_loops=args.allow_loops)
    if args.scaled is not None:
        c = _parse_fraction(args.scaled, "--scaled")
        host = SparseHost(g, c)
        host_kind = {"kind": "scaled-sparse", "c": str(c)}
    else:
        host = DenseHost(g.adjacency_matrix(dtype=np.float64))
        host_kind = {"kind": "adjacency"}
    weights = None
    if args.weights is not None:
        doc = run.read_json(args.weights)
        if not isinstance(doc, dict):
            raise InputError("weights file must map pattern vertices to arrays")
        try:
            arrays = {int(k): np.asarray(v, dtype=np.float64) for k, v in doc.items()}
        except (TypeError, ValueError):
            raise InputError("weights file must map pattern vertices to arrays") from None
        weights = VertexWeights(g.n, arrays)
    mode = "exact" if args.exact else "float"
    result = hom_weighted(f, host, weights=weights, mode=mode)
    try:
        density = result.value
        note = None
    except PreconditionError as e:
        density = None
        note = str(e)
    payload = {
        "pattern": _graph_stats(f),
        "host": {**_graph_stats(g), **host_kind},
        "mode": mode,
        "raw_sum": _scalar(result.raw),
        "density": _scalar(density),
        "normalization": {
            "vertices": result.nvertices,
            "half_edges": result.nedges / 2,
        },
    }
    if args.scaled is None and weights is None and mode == "exact":
        payload["hom_count"] = int(result.raw)
    if note is not None:
        payload["density_note"] = note
    return EXIT_OK, payload


def _cmd_certify_search(args, run: _Run):
    g = run.read_graph(args.graph)
    allow_axioms = not args.no_axioms
    payload = {"target": _graph_stats(g), "axioms": allow_axioms}
    if args.action == "tame":
        budget = DEFAULT_TAME_BUDGET if args.budget is None else args.budget
        cert = search_tame(g, budget=budget, allow_axioms=allow_axioms)
        payload["budget"] = budget
        payload["status"] = "certified" if cert is not None else "unknown"
    else:
        budget = DEFAULT_COUNTABLE_BUDGET if args.budget is None else args.budget
        verdict = search_countable(g, budget=budget, allow_axioms=allow_axioms)
        cert = verdict.certificate
        payload["budget"] = budget
        payload["status"] = verdict.status
        payload["conjectural_flags"] = list(verdict.conjectural_flags)
        if verdict.witness is not None:
            payload["witness_cycle"] = list(verdict.witness)
    payload["emitted"] = None
    if args.emit is not None:
        if cert is None:
            raise InputError(f"nothing to emit: search returned {payload['status']!r}")
        run.write(args.emit, _dumps(certificate_document(g, args.action, cert)))
        payload["emitted"] = args.emit
    return EXIT_OK, payload


def _cmd_certify_verify(args, run: _Run):
    g = run.read_graph(args.graph)
    f, kind, cert = load_certificate_document(run.read_json(args.cert))
    allow_axioms = not args.no_axioms
    payload = {"kind": kind, "target": _graph_stats(g), "axioms": allow_axioms}
    if not isomorphic(f, g):
        payload["valid"] = False
        payload["reason"] = "certificate targets a different graph"
        return EXIT_CHECK_FAILED, payload
    if kind == "tame":
        valid = verify_tame_cert(f, cert, allow_axioms=allow_axioms)
    else:
        valid = verify_countable_cert(f, cert, allow_axioms=allow_axioms)
    payload["valid"] = bool(valid)
    return (EXIT_OK if valid else EXIT_CHECK_FAILED), payload


def _report_payload(args, run: _Run, report) -> dict:
    payload = report.to_json()
    if getattr(args, "report", None):
        run.write(args.report, _dumps(payload))
    return payload


def _cmd_harness_counting(args, run: _Run):
    f = run.read_graph(args.pattern)
    g = build_polarity(args.q).loopless
    report = counting_experiment(
        f,
        g,
        constant_host(g),
        c=_parse_fraction(args.c, "--c"),
        trials=args.trials,
        seed=args.seed,
    )
    return EXIT_OK, _report_payload(args, run, report)


def _cmd_harness_discrepancy(args, run: _Run):
    g = run.read_graph(args.host)
    h = _host_from_json(run.read_json(args.h_file)) if args.h_file else constant_host(g)
    lower = discrepancy_search(g, h, iters=args.iters, seed=args.seed)
    payload = _report_payload(args, run, lower)
    # the spectral certificate only speaks about the constant reference host
    if args.h_file is None:
        payload["spectral_upper"] = discrepancy_spectral(g).upper
    return EXIT_OK, payload


def _cmd_harness_counterexample(args, run: _Run):
    if args.which == "c4":
        report = c4_counterexample(args.q)
    else:
        report = triangle_counterexample(args.q, seed=args.seed)
    return EXIT_OK, _report_payload(args, run, report)


def _cmd_harness_trim(args, run: _Run):
    g = run.read_graph(args.host)
    report = trim(g, pairs=args.pairs, seed=args.seed)
    return EXIT_OK, _report_payload(args, run, report)


def _cmd_corpus(args, run: _Run):
    summary = run_corpus(budget=args.budget)
    payload = {
        "total": summary.total,
        "passed": summary.total - len(summary.failures),
        "failures": [
            {"entry": name, "expected": expected, "got": got}
            for name, expected, got in summary.failures
        ],
    }
    return (EXIT_OK if summary.ok else EXIT_CHECK_FAILED), payload


# -- parser ------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="c4count", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("polarity", help="build a polarity graph of PG(2,q)")
    p.add_argument("--q", type=int, required=True, help="prime-power field size")
    p.add_argument("--loopless", action="store_true", help="induced graph on non-absolute points")
    p.add_argument("--verify", action="store_true", help="run the exact structural checks")
    p.add_argument("-o", "--output", required=True, metavar="PATH", help="edge-list destination")
    p.add_argument("--dot", metavar="PATH", help="also write Graphviz DOT")
    p.set_defaults(handler=_cmd_polarity, _seed_attr=None)

    p = sub.add_parser("hom", help="homomorphism density of a pattern in a host")
    p.add_argument("-F", dest="pattern", required=True, metavar="PATTERN.el")
    p.add_argument("-G", dest="host", required=True, metavar="HOST.el")
    p.add_argument("--weights", metavar="W.json", help="pattern vertex -> array of n values in [0,1]")
    p.add_argument("--scaled", metavar="C", help="treat the host as c*sqrt(n)*G, c in (0,1/2]")
    p.add_argument("--exact", action="store_true", help="rational arithmetic")
    p.add_argument("--allow-loops", action="store_true", help="accept loops in the host edge list")
    p.set_defaults(handler=_cmd_hom, _seed_attr=None)

    p = sub.add_parser("certify", help="countability/tameness certificates")
    csub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for action in ("tame", "countable"):
        a = csub.add_parser(action, help=f"search for a {action} certificate")
        a.add_argument("-g", dest="graph", required=True, metavar="F.el")
        a.add_argument("--budget", type=int, metavar="N", help="search-node budget")
        a.add_argument("--no-axioms", action="store_true", help="disable the axiom table")
        a.add_argument("--emit", metavar="CERT.json", help="write the certificate document")
        a.set_defaults(handler=_cmd_certify_search, _seed_attr=None)
    a = csub.add_parser("verify", help="replay a certificate against a graph")
    a.add_argument("-g", dest="graph", required=True, metavar="F.el")
    a.add_argument("--cert", required=True, metavar="CERT.json")
    a.add_argument("--no-axioms", action="store_true")
    a.set_defaults(handler=_cmd_certify_verify, _seed_attr=None)

    p = sub.add_parser("harness", help="numerical experiments")
    hsub = p.add_subparsers(dest="experiment", required=True, parser_class=_Parser)

    h = hsub.add_parser("counting", help="counting-lemma gaps on a polarity host")
    h.add_argument("-F", dest="pattern", required=True, metavar="F.el")
    h.add_argument("--q", type=int, required=True)
    h.add_argument("--c", default="1", metavar="C", help="sparse scale (default 1)")
    h.add_argument("--trials", type=int, default=9, metavar="N")
    h.add_argument("--seed", type=int, default=0, metavar="S")
    h.add_argument("--report", metavar="OUT.json")
    h.set_defaults(handler=_cmd_harness_counting, _seed_attr="seed")

    h = hsub.add_parser("discrepancy", help="two-sided discrepancy estimates")
    h.add_argument("-G", dest="host", required=True, metavar="G.el")
    h.add_argument("--H", dest="h_file", metavar="H.json", help="dense host (default: constant)")
    h.add_argument("--iters", type=int, default=20, metavar="N")
    h.add_argument("--seed", type=int, default=0, metavar="S")
    h.add_argument("--report", metavar="OUT.json")
    h.set_defaults(handler=_cmd_harness_discrepancy, _seed_attr="seed")

    h = hsub.add_parser("counterexample", help="necessity-of-hypotheses constructions")
    h.add_argument("which", choices=("c4", "triangle"))
    h.add_argument("--q", type=int, required=True)
    h.add_argument("--seed", type=int, default=0, metavar="S")
    h.add_argument("--report", metavar="OUT.json")
    h.set_defaults(handler=_cmd_harness_counterexample, _seed_attr="seed")

    h = hsub.add_parser("trim", help="drop high-degree vertices, check the error chain")
    h.add_argument("-G", dest="host", required=True, metavar="G.el")
    h.add_argument("--pairs", type=int, default=200, metavar="N")
    h.add_argument("--seed", type=int, default=0, metavar="S")
    h.add_argument("--report", metavar="OUT.json")
    h.set_defaults(handler=_cmd_harness_trim, _seed_attr="seed")

    p = sub.add_parser("corpus", help="reproduce every bundled verdict")
    p.add_argument("--budget", type=int, default=DEFAULT_COUNTABLE_BUDGET, metavar="N")
    p.set_defaults(handler=_cmd_corpus, _seed_attr=None)

    return parser


def _apply_memo_cap() -> None:
    raw = os.environ.get("C4COUNT_MEMO_CAP")
    if raw is None:
        return
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"C4COUNT_MEMO_CAP must be an integer, got {raw!r}") from None
    if cap < 0:
        raise InputError("C4COUNT_MEMO_CAP must be nonnegative")
    certify_mod.MEMO_CAP = cap


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT
    seed = getattr(args, args._seed_attr) if args._seed_attr else None
    run = _Run(argv, seed)
    try:
        _apply_memo_cap()
        code, payload = args.handler(args, run)
    except (InputError, PreconditionError) as e:
        print(f"c4count: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as e:
        print(f"c4count: error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    doc = {
        "schema": RESULT_SCHEMA,
        "command": args.command,
        "result": payload,
        "manifest": run.manifest(),
    }
    sys.stdout.write(_dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
