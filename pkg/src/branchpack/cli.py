"""Command-line front end.

Verdicts go to stdout as JSON (or DOT with ``--format dot``); anything meant
for a human goes to stderr. Exit status: 0 feasible/packed/valid,
1 infeasible/invalid, 2 input error.
"""
from __future__ import annotations

import argparse
import sys

from . import generators
from .branching import KBranching
from .cuts import CutCertificate, check_condition
from .errors import BranchpackError, InputError
from .formats import (branchings_from_json, dump_json, instance_from_json,
                      instance_to_json, parse_json, to_dot, with_materialized)
from .packer import PathSystem, pack, path_system_to

OK, INFEASIBLE, INPUT_ERROR = 0, 1, 2


def _read(path: str | None) -> tuple[str, str]:
    if path is None or path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_instance(path):
    text, source = _read(path)
    return instance_from_json(parse_json(text, source))


def _emit(doc) -> None:
    sys.stdout.write(doc if isinstance(doc, str) else dump_json(doc))


def cmd_check(args) -> int:
    graph, roots, initial = _load_instance(args.input)
    kb = initial or KBranching.edgeless(roots)
    cert = check_condition(graph, kb, "brute" if args.oracle else "flow")
    if cert is None:
        _emit({"status": "ok"})
        return OK
    print(f"condition fails on {sorted(cert.X)}: rho={cert.rho} < s={cert.s}", file=sys.stderr)
    _emit({"status": "violated", "certificate": cert.to_json()})
    return INFEASIBLE


def cmd_pack(args) -> int:
    graph, roots, initial = _load_instance(args.input)
    report = pack(graph, roots, initial, method="brute" if args.oracle else "flow")
    if args.format == "dot":
        _emit(to_dot(report.host, report.packing))
    else:
        _emit(report.to_json(graph))
    if report.packing is None:
        print("no packing exists; certificate attached", file=sys.stderr)
        return INFEASIBLE
    return OK


def cmd_paths(args) -> int:
    graph, roots, initial = _load_instance(args.input)
    kb = initial or KBranching.edgeless(roots)
    result = path_system_to(graph, kb, args.to)
    if isinstance(result, PathSystem):
        _emit(result.to_json(graph))
        return OK
    _emit({"status": "violated", "certificate": result.to_json()})
    return INFEASIBLE


def cmd_gen(args) -> int:
    if args.family == "counterexample":
        graph, roots = generators.counterexample(args.n, args.mode, args.c)
        header = {"family": "counterexample", "n": args.n, "mode": args.mode,
                  "c": (args.n if args.c is None else args.c) if args.mode == "finite" else None}
        initial = None
    elif args.family == "random":
        inst = generators.random_instance(args.n, args.k, args.seed, args.density)
        graph, roots, initial = inst.graph, inst.roots, None
        header = {"family": "random", "n": args.n, "k": args.k, "seed": args.seed,
                  "density": args.density, "prng": generators.PRNG,
                  "label": "feasible" if inst.feasible else "infeasible"}
    else:
        graph, kb, B0, B1 = generators.nested_tight_fixture(args.l)
        roots, initial = kb.root_sets, None
        header = {"family": "nested", "l": args.l, "B0": sorted(B0), "B1": sorted(B1)}
    if args.format == "dot":
        _emit(to_dot(graph))
    else:
        _emit(instance_to_json(graph, roots, header, initial))
    return OK


def certify_document(instance: dict, doc: dict) -> tuple[bool, str]:
    """Re-check a certificate or packing document against an instance from scratch."""
    graph, roots, initial = instance_from_json(instance)
    kb0 = initial or KBranching.edgeless(roots)
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    if doc.get("outcome") == "packed" or ("branchings" in doc and doc.get("certificate") is None
                                          and "X" not in doc):
        host = with_materialized(graph, doc.get("materialized", []))
        kb = branchings_from_json(host, doc.get("branchings") or [])
        if kb.k != len(roots):
            return False, f"{kb.k} branchings for {len(roots)} root sets"
        for j, (b, r) in enumerate(zip(kb, roots)):
            if b.roots != r:
                return False, f"branching {j} has roots {sorted(b.roots)}, expected {sorted(r)}"
            if not b.is_spanning(host):
                return False, f"branching {j} misses {sorted(host.vertex_set - b.vertices)}"
            if not kb0[j].edge_set <= b.edge_set:
                return False, f"branching {j} drops initial edges"
        bad = kb.verify(host)
        if bad is not None:
            return False, bad.message
        return True, "packing"
    cert_doc = doc["certificate"] if isinstance(doc.get("certificate"), dict) else doc
    cert = CutCertificate.from_json(cert_doc)
    if not cert.revalidate(graph, kb0):
        return False, "certificate does not re-validate"
    return True, "certificate"


def cmd_certify(args) -> int:
    inst_text, inst_src = _read(args.instance)
    doc_text, doc_src = _read(args.document)
    valid, detail = certify_document(parse_json(inst_text, inst_src), parse_json(doc_text, doc_src))
    if valid:
        _emit({"valid": True, "kind": detail})
        return OK
    print(f"invalid: {detail}", file=sys.stderr)
    _emit({"valid": False, "reason": detail})
    return INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="branchpack",
                                     description="Pack edge-disjoint spanning branchings with prescribed roots.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide the cut condition")
    p.add_argument("input", nargs="?", help="instance JSON (default: stdin)")
    p.add_argument("--oracle", action="store_true", help="use subset enumeration instead of max-flow")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pack", help="build the packing or a certificate")
    p.add_argument("input", nargs="?")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("paths", help="edge-disjoint paths from every root set to a vertex")
    p.add_argument("input", nargs="?")
    p.add_argument("--to", required=True, metavar="W")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("gen", help="emit a generated instance")
    p.add_argument("--family", choices=["counterexample", "random", "nested"], required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--mode", choices=["aleph0", "finite"], default="aleph0")
    p.add_argument("--c", type=int, default=None, help="parallel edges per bundle in finite mode")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--l", type=int, default=4)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("certify", help="re-validate a packing or certificate document")
    p.add_argument("document", nargs="?", help="packing/certificate JSON (default: stdin)")
    p.add_argument("--instance", required=True, help="instance JSON the document refers to")
    p.set_defaults(func=cmd_certify)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BranchpackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


def main() -> None:
    sys.exit(run())
