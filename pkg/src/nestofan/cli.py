"""Command-line interface: ``nestofan hg|fan|weights|verify ...``.

Exit codes: 0 ok, 1 a check failed, 2 malformed input, 3 weights on a wall,
4 theorem hypotheses violated.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import affine, hassett, sweep
from .exact import format_rational, parse_rational
from .fan import (
    FanError,
    f_vector,
    fan_of_hypergraph,
    fans_equal,
    is_complete,
    is_smooth,
    nested_sets,
    random_valid_order,
)
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    _normalize_label,
    atomic_closure,
    graph_hypergraph,
    inflate,
    is_atomic,
    is_connected,
    is_saturated,
)
from .nestohedron import h_rep, vertices, vertices_to_json
from .weights import (
    COARSE,
    FINE,
    M0N,
    TDN,
    DomainError,
    NonGenericError,
    OnWallError,
    WeightData,
    generic_pair,
    geq_c_witness,
    signature,
)

OK, CHECK_FAILED, PARSE_ERROR, ON_WALL, HYPOTHESIS = 0, 1, 2, 3, 4


class CheckFailed(Exception):
    def __init__(self, payload):
        self.payload = payload


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise HypergraphError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise HypergraphError(f"{path} is not valid JSON: {exc}") from exc


def _load_hypergraphs(path: str):
    data = _load_json(path)
    if isinstance(data, list):
        return [Hypergraph.from_json(x) for x in data], True
    return [Hypergraph.from_json(data)], False


def _weights(text: str, flavor: str) -> WeightData:
    return WeightData(tuple(parse_rational(x.strip()) for x in text.split(",")), flavor)


# -- hg -----------------------------------------------------------------------


def cmd_hg(args):
    if args.action == "graph":
        data = _load_json(args.input)
        try:
            H = graph_hypergraph(int(data["n"]), data["edges"])
        except (KeyError, TypeError) as exc:
            raise HypergraphError(f"graph JSON needs 'n' and 'edges': {exc}") from exc
        return H.to_json()
    Hs, many = _load_hypergraphs(args.input)
    if args.action == "check":
        out = []
        for H in Hs:
            rep = {"atomic": is_atomic(H), "saturated": is_saturated(H), "connected": is_connected(H)}
            rep["asc"] = all(rep.values())
            out.append(rep)
        if args.strict and not all(r["asc"] for r in out):
            raise CheckFailed(out if many else out[0])
    elif args.action == "closure":
        out = [atomic_closure(H).to_json() for H in Hs]
    else:
        d = [int(x) for x in args.d.split(",")]
        out = [inflate(H, d[0] if len(d) == 1 else tuple(d)).to_json() for H in Hs]
    return out if many else out[0]


# -- fan ----------------------------------------------------------------------


def _read_order(path):
    data = _load_json(path)
    if not isinstance(data, list):
        raise HypergraphError("an order file is a JSON list of hyperedges")
    return [frozenset(_normalize_label(v) for v in e) for e in data]


def cmd_fan(args):
    Hs, many = _load_hypergraphs(args.input)
    if many:
        raise HypergraphError("fan commands take a single hypergraph")
    H = Hs[0]
    order = _read_order(args.order) if args.order else None
    F = fan_of_hypergraph(H, order)
    if args.action == "build":
        return F.to_json()
    if args.action == "fvector":
        return {"f_vector": list(f_vector(F))}
    if args.action == "polytope":
        return {"h_rep": h_rep(H).to_json(), "vertices": vertices_to_json(H, vertices(H))}
    # verify
    Hat = atomic_closure(H)
    nested = set(nested_sets(Hat, Hat.m - 1))
    cones = {frozenset(F.tags[i] for i in c) for c in F.max_cones}
    rng = random.Random(args.seed)
    independent = True
    for _ in range(args.random_orders):
        order = random_valid_order(Hat.eligible_edges(), Hat.full_set, rng)
        independent &= fans_equal(fan_of_hypergraph(Hat, order), F)
    report = {
        "smooth": is_smooth(F),
        "complete": is_complete(F, seed=args.seed),
        "nested_oracle_match": nested == cones,
        "order_independent": independent,
    }
    if not all(report.values()):
        raise CheckFailed(report)
    return report


# -- weights ------------------------------------------------------------------


def cmd_weights(args):
    flavor = args.flavor
    gran = FINE if args.fine else COARSE
    if args.action == "classify":
        return signature(_weights(args.weights, flavor), gran).to_json()
    if args.action == "geqc":
        A, B = _weights(args.a, flavor), _weights(args.b, flavor)
        res = geq_c_witness(A, B, gran)
        out = {"geq_c": res is not None}
        if res is not None:
            out["witness"] = {"A": res[0].to_json()["values"], "B": res[1].to_json()["values"]}
        return out
    if args.action == "path":
        A, B = _weights(args.a, flavor), _weights(args.b, flavor)
        res = generic_pair(A, B, args.seed, gran)
        if res is None:
            raise CheckFailed({"geq_c": False})
        Ap, Bp, path = res
        return {
            "A": Ap.to_json()["values"],
            "B": Bp.to_json()["values"],
            "crossings": [{"wall": sorted(J), "t": format_rational(t)} for J, t in path],
        }
    # enumerate
    if args.n > args.max_n:
        raise DomainError(f"enumerate is capped at n <= {args.max_n} (see --max-n)")
    cs = sweep.chambers(args.n, gran, flavor, args.seed)
    rows = [c.to_json() for c in cs]
    if args.format == "tsv":
        lines = ["index\tpositive\twitness"]
        for i, r in enumerate(rows):
            pos = ";".join("".join(map(str, I)) if args.n < 10 else "-".join(map(str, I)) for I in r["positive"])
            lines.append(f"{i}\t{pos}\t{','.join(r['witness'])}")
        return "\n".join(lines) + "\n"
    return {"n": args.n, "granularity": gran, "flavor": flavor, "count": len(rows), "chambers": rows}


# -- verify -------------------------------------------------------------------


def _summarize(reports):
    passed = sum(r["pass"] for r in reports)
    return {"chambers": len(reports), "passed": passed, "pass": passed == len(reports), "reports": reports}


def cmd_verify(args):
    if args.sweep and args.n > args.max_n:
        raise DomainError(f"sweeps are capped at n <= {args.max_n} (see --max-n)")
    if args.theorem == "mon":
        if args.sweep:
            out = _summarize(sweep.sweep_mon(args.n, args.seed))
        else:
            if args.weights:
                A = _weights(args.weights, M0N)
                if A.n != args.n:
                    raise DomainError(f"--n {args.n} but {A.n} weights given")
            elif args.p:
                A = hassett.weights_p(args.n)
            else:  # --lm and --any
                A = hassett.weights_lm(args.n)
            inp = hassett.HassettInput.from_weights(A)
            out = hassett.verify_theorem_mon(inp, args.orders, args.seed)
    else:
        if args.sweep:
            out = _summarize(sweep.sweep_tdn(args.d, args.n, args.seed))
        else:
            if args.weights:
                A = _weights(args.weights, TDN)
                if A.n != args.n:
                    raise DomainError(f"--n {args.n} but {A.n} weights given")
            elif args.p:
                A = affine.weights_p_t(args.n)
            else:
                A = affine.weights_lm_t(args.n)
            out = affine.verify_theorem_tdn(affine.AffineInput.from_weights(args.d, A), args.seed)
    if not out["pass"]:
        raise CheckFailed(out)
    return out


# -- plumbing -----------------------------------------------------------------


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--max-n", type=int, default=argparse.SUPPRESS)
    p.add_argument("--format", choices=("json", "tsv"), default=argparse.SUPPRESS)
    p.add_argument("--output", default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="nestofan", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    hg = sub.add_parser("hg", parents=[common], help="hypergraph utilities")
    hg.add_argument("action", choices=("check", "closure", "inflate", "graph"))
    hg.add_argument("input", help="JSON file, or - for stdin")
    hg.add_argument("--d", default="2", help="inflation factor, or one per vertex: 1,2,3")
    hg.add_argument("--strict", action="store_true", help="exit 1 unless every input is ASC")
    hg.set_defaults(func=cmd_hg)

    fan = sub.add_parser("fan", parents=[common], help="fans and nestohedra of hypergraphs")
    fan.add_argument("action", choices=("build", "verify", "fvector", "polytope"))
    fan.add_argument("input")
    fan.add_argument("--order", help="JSON list of hyperedges in blow-up order")
    fan.add_argument("--random-orders", type=int, default=0)
    fan.set_defaults(func=cmd_fan)

    w = sub.add_parser("weights", parents=[common], help="weight data, chambers and wall crossing")
    w.add_argument("action", choices=("classify", "geqc", "path", "enumerate"))
    w.add_argument("--weights", help="comma-separated rationals p/q")
    w.add_argument("--a")
    w.add_argument("--b")
    w.add_argument("--n", type=int)
    w.add_argument("--flavor", choices=(M0N, TDN), default=M0N)
    g = w.add_mutually_exclusive_group()
    g.add_argument("--fine", action="store_true")
    g.add_argument("--coarse", action="store_true")
    w.set_defaults(func=cmd_weights)

    v = sub.add_parser("verify", parents=[common], help="compare blow-up and hypergraph fans")
    v.add_argument("theorem", choices=("mon", "tdn"))
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--d", type=int, default=1)
    v.add_argument("--orders", type=int, default=5, help="random blow-up orders to cross-check")
    pick = v.add_mutually_exclusive_group()
    pick.add_argument("--weights")
    pick.add_argument("--lm", action="store_true")
    pick.add_argument("--p", action="store_true")
    pick.add_argument("--any", action="store_true")
    pick.add_argument("--sweep", action="store_true")
    v.set_defaults(func=cmd_verify)
    return parser


WEIGHT_ARGS = {"classify": ("weights",), "geqc": ("a", "b"), "path": ("a", "b"), "enumerate": ("n",)}


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise DomainError("missing " + ", ".join("--" + n for n in missing))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return PARSE_ERROR if exc.code else OK
    for name, default in (("seed", 0), ("max_n", 6), ("format", "json"), ("output", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        if args.command == "weights":
            _need(args, *WEIGHT_ARGS[args.action])
        result, code = args.func(args), OK
    except CheckFailed as exc:
        result, code = exc.payload, CHECK_FAILED
    except OnWallError as exc:
        result, code = {"error": str(exc), "wall": sorted(exc.wall)}, ON_WALL
    except hassett.HypothesisError as exc:
        result, code = {"error": str(exc)}, HYPOTHESIS
    except (HypergraphError, FanError, DomainError, ValueError) as exc:
        result, code = {"error": str(exc)}, PARSE_ERROR
    except (NonGenericError, hassett.InadmissibleWallError) as exc:
        result, code = {"error": str(exc)}, CHECK_FAILED
    text = result if isinstance(result, str) else dumps(result)
    if args.output and code in (OK, CHECK_FAILED):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        (sys.stdout if code in (OK, CHECK_FAILED) else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
