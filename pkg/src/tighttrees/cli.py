"""Batch command line front end.

Exit codes: 0 success or verified pass, 1 verified failure (bound violated,
not contained, not a tight tree), 2 usage or precondition error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .constructions import (
    complete_hypergraph,
    cyclic_tournament,
    disjoint_cliques,
    ekr_family,
    grid_lines,
    parse_tournament,
    shadow_disjoint_packing,
    sink_blocks,
    tournament_family,
)
from .embedding import (
    EmbeddingError,
    embed_bounded_trunk,
    embed_small_tree,
    find_embedding,
    is_embedding,
)
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    ParseError,
    arrangement_holds,
    default_weights,
    parse_hypergraph,
    random_hypergraph,
    shadow,
    sorted_codegrees,
)
from .search import beta_exact, turan_exact, verify_kalai, verify_shadow_bound
from .trees import enumerate_tight_trees, is_star_shaped, r_partition, tight_order, trunk_number

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def q(x) -> List[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def qs(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _load(path: Optional[str], what: str) -> Hypergraph:
    if path is None:
        raise UsageError(f"{what} file is required")
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_hypergraph(text)
    except ParseError as exc:
        raise UsageError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from None


def _need(args, name: str):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name} is required")
    return v


def _embedding(f) -> List[List[int]]:
    return [[u, x] for u, x in sorted(f.items())]


# ---------------------------------------------------------------------------
# commands: each returns (exit code, result payload, text lines)


def cmd_shadow(args):
    G = _load(args.input, "--input")
    sh = sorted(shadow(G))
    return EXIT_OK, {"size": len(sh), "shadow": [list(D) for D in sh]}, [f"shadow size {len(sh)}"]


def cmd_weights(args):
    G = _load(args.input, "--input")
    if not G.edges:
        raise UsageError("weights need a non-empty hypergraph")
    w = default_weights(G)
    sh = len(shadow(G))
    ok = w.total == sh
    arr = all(arrangement_holds(sorted_codegrees(G, e)) for e in G.edges)
    res = {
        "edge_weights": [[list(e), q(x)] for e, x in sorted(w.edge_weights.items())],
        "total": q(w.total),
        "shadow": sh,
        "identity_holds": ok,
        "arrangement_holds": arr,
    }
    code = EXIT_OK if ok and arr else EXIT_FAIL
    return code, res, [f"total {qs(w.total)} shadow {sh} identity {'pass' if ok else 'FAIL'}"]


def cmd_is_tight_tree(args):
    T = _load(args.tree or args.input, "--tree")
    if not T.edges:
        raise UsageError("tree must have at least one edge")
    cert = tight_order(T)
    res = {"tight_tree": cert is not None, "certificate": cert.to_dict() if cert else None}
    return (EXIT_OK if cert else EXIT_FAIL), res, [f"tight tree: {cert is not None}"]


def _tree(args) -> Tuple[Hypergraph, object]:
    T = _load(args.tree, "--tree")
    if not T.edges:
        raise UsageError("tree must have at least one edge")
    cert = tight_order(T)
    if cert is None:
        raise UsageError("--tree is not a tight tree")
    return T, cert


def cmd_partition(args):
    T, cert = _tree(args)
    phi = r_partition(T, cert)
    classes = [sorted(c) for c in phi.classes()]
    return EXIT_OK, {"classes": classes, "certificate": cert.to_dict()}, [f"classes {classes}"]


def cmd_trunk(args):
    T, _ = _tree(args)
    c, tc = trunk_number(T)
    res = {"c": c, "star_shaped": is_star_shaped(T), "trunk": tc.to_dict()}
    return EXIT_OK, res, [f"c(T) = {c}", f"trunk {[list(e) for e in tc.trunk_edges]}"]


def cmd_enumerate_trees(args):
    r, t = _need(args, "r"), _need(args, "t")
    trees = enumerate_tight_trees(r, t)
    res = {"r": r, "t": t, "count": len(trees), "trees": [T.to_text() for T in trees]}
    return EXIT_OK, res, [f"{len(trees)} classes"] + [T.to_text() for T in trees]


def _check_pair(T: Hypergraph, G: Hypergraph):
    if T.r != G.r:
        raise UsageError(f"tree is {T.r}-uniform but host is {G.r}-uniform")


def cmd_embed(args):
    G = _load(args.input, "--input")
    T = _load(args.tree, "--tree")
    _check_pair(T, G)
    f = find_embedding(T, G)
    res = {"contained": f is not None, "embedding": _embedding(f) if f is not None else None}
    return (EXIT_OK if f is not None else EXIT_FAIL), res, [f"contained: {f is not None}"]


def cmd_embed_trunk(args):
    G = _load(args.input, "--input")
    T, _ = _tree(args)
    _check_pair(T, G)
    _, tc = trunk_number(T)
    f, trace = embed_bounded_trunk(G, T, tc, workers=args.threads)
    res = {"valid": is_embedding(f, T, G), "embedding": _embedding(f), "trace": trace.to_dict()}
    return EXIT_OK, res, [f"gamma {qs(trace.gamma)}", f"embedding {_embedding(f)}"]


def cmd_embed_small(args):
    G = _load(args.input, "--input")
    T, _ = _tree(args)
    _check_pair(T, G)
    f = embed_small_tree(G, T)
    return EXIT_OK, {"valid": is_embedding(f, T, G), "embedding": _embedding(f)}, [
        f"embedding {_embedding(f)}"]


def _search_args(args):
    T = _load(args.tree, "--tree")
    n = _need(args, "n")
    if n < T.r:
        raise UsageError(f"--n must be at least r = {T.r}")
    return T, n


def cmd_turan(args):
    T, n = _search_args(args)
    res = turan_exact(n, T, budget=args.budget, workers=args.threads)
    return EXIT_OK, res.to_dict(), [f"ex = {res.max_edges} exhaustive={res.exhaustive}"]


def cmd_beta(args):
    T, n = _search_args(args)
    res = beta_exact(n, T, budget=args.budget, workers=args.threads)
    return EXIT_OK, res.to_dict(), [f"beta = {qs(res.best_ratio)} exhaustive={res.exhaustive}"]


def cmd_verify_kalai(args):
    T, n = _search_args(args)
    rep = verify_kalai(n, T, budget=args.budget, workers=args.threads)
    code = EXIT_FAIL if rep["verdict"] == "fail" else EXIT_OK
    b = Fraction(*rep["bound"])
    return code, rep, [f"ex = {rep['ex']} <= {qs(b)}: {rep['verdict']}"]


def cmd_verify_shadow(args):
    G = _load(args.input, "--input")
    T = _load(args.tree, "--tree")
    _check_pair(T, G)
    try:
        coeff = Fraction(args.coeff)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--coeff {args.coeff!r} is not a rational p/q") from None
    rep = verify_shadow_bound(G, T, coeff)
    code = EXIT_OK if rep["verdict"] == "pass" else EXIT_FAIL
    return code, rep, [f"{rep['e']} <= {qs(coeff)} * {rep['shadow']}: {rep['verdict']}"]


def cmd_construct(args):
    kind = args.kind
    extra: Dict = {}
    if kind == "complete":
        G = complete_hypergraph(_need(args, "n"), _need(args, "r"))
    elif kind == "ekr":
        G = ekr_family(_need(args, "n"), _need(args, "r"))
    elif kind == "cliques":
        G = disjoint_cliques(_need(args, "n"), _need(args, "t"))
    elif kind == "tournament":
        n = _need(args, "n")
        if args.arcs:
            with open(args.arcs) as fh:
                k, arcs = parse_tournament(fh.read())
            if 3 * k != n:
                raise UsageError(f"tournament has {k} vertices but n/3 = {n / 3}")
        else:
            if n % 3:
                raise UsageError("--n must be divisible by 3")
            k, arcs = n // 3, cyclic_tournament(n // 3)
        G = tournament_family(n, arcs)
        sinks = sink_blocks(k, arcs)
        extra = {"arcs": [list(a) for a in arcs], "sink_blocks": sinks,
                 "shadow_is_complete": not sinks}
    elif kind == "packing":
        base = _load(args.input, "--input")
        if args.grid:
            n = args.grid * args.grid
            res = shadow_disjoint_packing(base, n, budget=args.budget, candidates=grid_lines(args.grid))
        else:
            n = _need(args, "n")
            res = shadow_disjoint_packing(base, n, budget=args.budget)
        G = res.union
        extra = {"m": res.m, "vertex_sets": [list(s) for s in res.vertex_sets]}
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown construction {kind}")
    sh = len(shadow(G))
    out = {"kind": kind, "edges": G.num_edges, "shadow": sh,
           "ratio": q(Fraction(G.num_edges, sh)) if sh else None, "hypergraph": G.to_text()}
    out.update(extra)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(G.to_text())
    return EXIT_OK, out, [f"{kind}: e = {G.num_edges}, |shadow| = {sh}"]


def cmd_fuzz(args):
    rng = random.Random(args.seed)
    count = args.count
    failures = 0
    for _ in range(count):
        r = rng.choice([2, 3, 4])
        n = rng.randint(r, 10)
        G = random_hypergraph(n, r, rng.random(), rng)
        if not G.edges:
            continue
        if default_weights(G).total != len(shadow(G)):
            failures += 1
        elif not all(arrangement_holds(sorted_codegrees(G, e)) for e in G.edges):
            failures += 1
    res = {"cases": count, "failures": failures}
    return (EXIT_OK if not failures else EXIT_FAIL), res, [f"{count} cases, {failures} failures"]


COMMANDS: Dict[str, Callable] = {
    "shadow": cmd_shadow,
    "weights": cmd_weights,
    "is-tight-tree": cmd_is_tight_tree,
    "partition": cmd_partition,
    "trunk": cmd_trunk,
    "enumerate-trees": cmd_enumerate_trees,
    "embed": cmd_embed,
    "embed-trunk": cmd_embed_trunk,
    "embed-small": cmd_embed_small,
    "turan": cmd_turan,
    "beta": cmd_beta,
    "verify-kalai": cmd_verify_kalai,
    "verify-shadow": cmd_verify_shadow,
    "construct": cmd_construct,
    "fuzz": cmd_fuzz,
}

SEEDED = {"fuzz"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input")
    common.add_argument("--tree")
    common.add_argument("--n", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--budget", type=int, help="node limit for searches")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--timing", action="store_true", help="add wall time to the report")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int, default=1)

    p = _Parser(prog="tighttrees", description="Exact tight-tree Turán toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "verify-shadow":
            sp.add_argument("--coeff", required=True)
        elif name == "construct":
            sp.add_argument("kind", choices=["complete", "ekr", "tournament", "cliques", "packing"])
            sp.add_argument("--arcs", help="tournament arc list file")
            sp.add_argument("--grid", type=int, help="pack on the rows and columns of a k x k grid")
            sp.add_argument("--output", help="also write the hypergraph to this file")
        elif name == "fuzz":
            sp.add_argument("--count", type=int, default=1000)
    return p


def run(argv: Sequence[str], out=None, err=None) -> Tuple[int, Optional[dict]]:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.seed is not None and args.command not in SEEDED:
            raise UsageError(f"--seed is only accepted by {', '.join(sorted(SEEDED))}")
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        start = time.perf_counter()
        code, result, lines = COMMANDS[args.command](args)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE, None
    except (EmbeddingError, HypergraphError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE, None
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE, None
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("command", "json", "timing", "threads", "output") and v is not None}
    report = {
        "command": args.command,
        "parameters": params,
        "result": result,
        "exit_code": code,
        "version": __version__,
    }
    if args.timing:
        report["seconds"] = round(elapsed, 6)
    if args.json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        for line in lines:
            out.write(line.rstrip("\n") + "\n")
    return code, report


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
