"""Command-line interface: ``d2hyper <command> [<action>] [flags]``.

Exit codes: 0 success, 2 precondition or input error, 3 verification
failure (a witness file is written), 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import io as fileio
from .cograph import (
    P4Witness,
    build_cotree,
    cograph_edit,
    cograph_partition,
    cotree_homogeneous_set,
    verify_cograph_partition,
    weighted_split,
)
from .core import Graph, Hypergraph3, link_graph
from .count import count_induced_d2, count_induced_d2_at, count_induced_p4, find_d2_witnesses
from .decomp import main_partition, vertex_split
from .eh import (
    brute_force_homogeneous,
    eh_find,
    eh_parameters,
    engineering_parameters,
    sparse_independent_set,
)
from .errors import D2Error, NotACographError, PreconditionError, VerificationError, WitnessFound
from .experiment import rows_to_csv, run_experiment
from .generators import (
    gen_noisy,
    gen_planted_cohypergraph,
    gen_random_graph,
    gen_random_h3,
    gen_triangle_hypergraph,
    random_split_spec,
)
from .removal import is_cohypergraph, min_edit_to_d2_free, removal_edit, verify_d2_free

EXIT_OK, EXIT_PRECONDITION, EXIT_VERIFICATION, EXIT_USAGE = 0, 2, 3, 64

ACTIONS = {
    "gen": ("random", "triangle", "cohyper", "noisy"),
    "count": ("d2", "d2-at", "p4"),
    "link": None,
    "cograph": ("check", "edit", "homset"),
    "partition": ("main", "vertex", "cograph", "weighted"),
    "removal": None,
    "eh": ("find", "params", "sparse"),
    "oracle": ("homogeneous", "cohyper", "minedit"),
    "bench": None,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    g = p.add_argument_group("global")
    g.add_argument("--input", type=Path)
    g.add_argument("--output", type=Path)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=("text", "csv"), default="text")
    g.add_argument("--threads", type=int)
    g.add_argument("--floor", type=int)
    g.add_argument("--xi", type=_frac)
    g.add_argument("--eps", type=_frac)
    g.add_argument("--beta", type=_frac)
    g.add_argument("--t", type=float)
    g.add_argument("--gamma", type=_frac)
    g.add_argument("--witness-output", type=Path)
    # command-specific knobs shared to keep the surface flat
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=_frac)
    g.add_argument("--rate", type=_frac)
    g.add_argument("--depth", type=int, default=4)
    g.add_argument("--min-leaf", type=int, default=1)
    g.add_argument("--leaf-fill", choices=("empty", "complete"), default="empty")
    g.add_argument("--vertex", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--weights", help="comma-separated rationals, one per vertex")
    g.add_argument("--C0", type=float, default=1.0)
    g.add_argument("--exact", action="store_true", help="cograph edit: exact mode")
    g.add_argument("--edits", type=Path, help="removal: edit-set output path")
    g.add_argument("--tree", type=Path, help="removal: decomposition tree JSON path")
    g.add_argument("--log", type=Path, help="eh find: step-log CSV path")
    g.add_argument("--config", help="bench: JSON config path or inline JSON")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="d2hyper", description="Induced-D2 tools for 3-uniform hypergraphs.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)
    for name, actions in ACTIONS.items():
        sp = sub.add_parser(name, parents=[common])
        if actions:
            sp.add_argument("action", choices=actions)
    return parser


# --------------------------------------------------------------------------
# helpers


def _emit(args, out, record: dict) -> None:
    if args.format == "csv":
        out.write(",".join(record) + "\n")
        out.write(",".join(_csv_cell(v) for v in record.values()) + "\n")
    elif len(record) == 1:
        out.write(f"{next(iter(record.values()))}\n")
    else:
        for k, v in record.items():
            out.write(f"{k}: {v}\n")


def _csv_cell(v) -> str:
    s = " ".join(map(str, v)) if isinstance(v, (list, tuple)) else str(v)
    return f'"{s}"' if "," in s or " " in s else s


def _need(value, flag: str):
    if value is None:
        raise PreconditionError(f"{flag} is required")
    return value


def _read_h3(args) -> Hypergraph3:
    path = _need(args.input, "--input")
    return fileio.read_h3(path)


def _read_graph(args) -> Graph:
    path = _need(args.input, "--input")
    return fileio.read_graph(path)


def _write_or_print(args, out, text: str) -> None:
    if args.output is not None:
        Path(args.output).write_bytes(text.encode("ascii"))
    else:
        out.write(text)


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("D2_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise PreconditionError(f"D2_THREADS={env!r} is not an integer") from None


def _tree_json(tree) -> dict:
    def node(nd):
        if nd.is_leaf:
            return {"vertices": list(nd.vertices)}
        return {"vertices": list(nd.vertices), "verdict": nd.verdict.value, "left": node(nd.left), "right": node(nd.right)}

    return {"eps": None if tree.eps is None else str(tree.eps), "root": node(tree.root)}


def _engineering(args, n: int):
    return engineering_parameters(
        n,
        gamma=args.gamma,
        beta=args.beta,
        xi=args.xi,
        eps=args.eps,
        t=args.t,
    )


def _any_override(args) -> bool:
    return any(v is not None for v in (args.xi, args.eps, args.beta, args.t, args.gamma))


# --------------------------------------------------------------------------
# commands


def _gen(args, out):
    if args.action == "random":
        H = gen_random_h3(_need(args.n, "--n"), _need(args.p, "--p"), args.seed)
    elif args.action == "triangle":
        H = gen_triangle_hypergraph(gen_random_graph(_need(args.n, "--n"), args.p if args.p is not None else Fraction(1, 2), args.seed))
    elif args.action == "cohyper":
        spec = random_split_spec(_need(args.n, "--n"), args.depth, args.seed, min_leaf=args.min_leaf)
        H = gen_planted_cohypergraph(spec, args.leaf_fill, args.seed)
    else:
        H = gen_noisy(_read_h3(args), _need(args.rate, "--rate"), args.seed)
    _write_or_print(args, out, fileio.serialize_h3(H))


def _count(args, out):
    if args.action == "p4":
        _emit(args, out, {"p4": count_induced_p4(_read_graph(args))})
        return
    H = _read_h3(args)
    if args.action == "d2":
        _emit(args, out, {"d2": count_induced_d2(H)})
    else:
        _emit(args, out, {"d2_at": count_induced_d2_at(H, _need(args.vertex, "--vertex"))})


def _link(args, out):
    H = _read_h3(args)
    v = _need(args.vertex, "--vertex")
    if not 0 <= v < H.n:
        raise PreconditionError(f"vertex {v} out of range")
    _write_or_print(args, out, fileio.serialize_graph(link_graph(H, v)))


def _cograph(args, out):
    G = _read_graph(args)
    if args.action == "check":
        tree = build_cotree(G)
        if isinstance(tree, P4Witness):
            _emit(args, out, {"cograph": False, "p4": list(tree.path)})
        else:
            _emit(args, out, {"cograph": True})
    elif args.action == "edit":
        res = cograph_edit(G, exact_threshold=G.n if args.exact else 10)
        if args.output is not None:
            fileio.write_graph(res.graph, args.output)
        _emit(args, out, {"edits": res.size, "additions": len(res.additions), "deletions": len(res.deletions), "exact": res.exact})
    else:
        tree = build_cotree(G)
        if isinstance(tree, P4Witness):
            raise NotACographError(tree.path)
        hs = cotree_homogeneous_set(tree, G)
        _emit(args, out, {"kind": hs.kind, "size": len(hs.vertices), "vertices": list(hs.vertices)})


def _partition(args, out):
    if args.action in ("cograph", "weighted"):
        G = _read_graph(args)
        beta = _need(args.beta, "--beta")
        if args.action == "cograph":
            m = _need(args.m, "--m")
            P = cograph_partition(G, m, beta)
            report = verify_cograph_partition(G, P, m, beta)
            if not report.ok:
                raise VerificationError("; ".join(report.failures), report)
            _emit(args, out, {"S": list(P.S), "parts": len(P.parts), "matched": len(P.matching), "primed": len(P.primed)})
        else:
            if args.weights:
                w = [Fraction(x) for x in args.weights.split(",")]
            else:
                w = [Fraction(1, G.n)] * G.n
            ws = weighted_split(G, w, beta)
            _emit(args, out, {"I": list(ws.I), "J": list(ws.J), "L": list(ws.L), "kind": ws.bipartite_kind})
        return
    H = _read_h3(args)
    floor = 1 if args.floor is None else args.floor
    eps = _need(args.eps, "--eps")
    if args.action == "main":
        res = main_partition(H, _need(args.vertex, "--vertex"), _need(args.xi, "--xi"), eps, floor=floor, seed=args.seed)
        if res.witnesses:
            raise WitnessFound(res.witnesses)
        _emit(args, out, {"verdict": res.verdict.kind.value, "X": list(res.X), "Y": list(res.Y), "S": list(res.S)})
    else:
        res = vertex_split(H, eps, floor=floor, seed=args.seed)
        _emit(args, out, {"verdict": res.verdict.kind.value, "X": list(res.X), "Y": list(res.Y), "method": res.method})


def _removal(args, out):
    H = _read_h3(args)
    eps = _need(args.eps, "--eps")
    res = removal_edit(H, eps, floor=1 if args.floor is None else args.floor, seed=args.seed)
    base = args.output
    if base is not None:
        fileio.write_h3(res.edited, base)
    edits_path = args.edits or (base.with_name(base.name + ".edits") if base else None)
    tree_path = args.tree or (base.with_name(base.name + ".tree.json") if base else None)
    if edits_path:
        Path(edits_path).write_bytes(res.edits.serialize().encode("ascii"))
    if tree_path:
        Path(tree_path).write_text(json.dumps(_tree_json(res.tree), indent=1) + "\n")
    _emit(args, out, {"edits": len(res.edits), "additions": len(res.edits.additions), "deletions": len(res.edits.deletions), "leaves": len(res.tree.leaves())})


def _eh(args, out):
    if args.action == "params":
        p = eh_parameters(_need(args.n, "--n"), args.C0)
        _emit(args, out, {k: getattr(p, k) for k in ("n", "C0", "eta", "gamma", "t", "beta", "xi", "eps", "C")})
        return
    H = _read_h3(args)
    if args.action == "sparse":
        s = sparse_independent_set(H)
        _emit(args, out, {"size": len(s), "vertices": list(s)})
        return
    params = _engineering(args, H.n) if _any_override(args) else None
    res = eh_find(H, args.C0, params=params, floor=args.floor, seed=args.seed)
    if args.log is not None:
        Path(args.log).write_text(res.log.to_csv())
    _emit(args, out, {"kind": res.kind, "size": len(res.vertices), "vertices": list(res.vertices), "route": res.route})


def _oracle(args, out):
    H = _read_h3(args)
    if args.action == "homogeneous":
        s, kind = brute_force_homogeneous(H)
        _emit(args, out, {"kind": kind, "size": len(s), "vertices": list(s)})
    elif args.action == "minedit":
        _emit(args, out, {"min_edits": min_edit_to_d2_free(H)})
    else:
        ok, _ = is_cohypergraph(H)
        free = verify_d2_free(H)
        if not (ok and free):
            raise WitnessFound(find_d2_witnesses(H, 32, args.seed), "input is not a cohypergraph")
        _emit(args, out, {"cohypergraph": True})


def _bench(args, out):
    rows = run_experiment(_need(args.config, "--config"), threads=_threads(args))
    _write_or_print(args, out, rows_to_csv(rows))


HANDLERS = {
    "gen": _gen,
    "count": _count,
    "link": _link,
    "cograph": _cograph,
    "partition": _partition,
    "removal": _removal,
    "eh": _eh,
    "oracle": _oracle,
    "bench": _bench,
}


def _witness_path(args) -> Path:
    if args.witness_output is not None:
        return args.witness_output
    if args.output is not None:
        return args.output.with_name(args.output.name + ".witness")
    return Path("d2hyper.witness")


def _write_witness(args, exc: D2Error, err) -> None:
    if isinstance(exc, WitnessFound):
        lines = [" ".join(map(str, w.four)) for w in exc.witnesses]
    elif isinstance(exc, NotACographError):
        lines = [" ".join(map(str, exc.witness))]
    else:
        lines = [f"# {exc}"]
    path = _witness_path(args)
    path.write_text("".join(line + "\n" for line in lines))
    err.write(f"witness written to {path}\n")


def cli(argv=None, out=None, err=None) -> int:
    """Run the CLI and return its exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        HANDLERS[args.command](args, out)
    except (WitnessFound, VerificationError, NotACographError) as exc:
        err.write(f"verification failure: {exc}\n")
        _write_witness(args, exc, err)
        return EXIT_VERIFICATION
    except (PreconditionError, D2Error, OSError, UnicodeDecodeError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    return EXIT_OK


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
