"""Command-line front end.

Every command prints key-sorted JSON unless a text format is requested.
Exit codes: 0 success, 1 internal failure (including a FAIL certificate),
2 unreadable arguments, 3 inputs that violate a precondition.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import arrangements, characters, jack_map, lr, poset_abacus, tab_c
from .core_partitions import (
    EllPartition,
    Params,
    SkewShape,
    format_partition,
    format_rational,
    parse_ell_partition,
    parse_partition,
    partitions_of,
)

SCHEMA_VERSION = 1
MAX_DEGREE_ENV = "CHEREDNIK_MAX_DEGREE"
SURVEY_HEADER = ["ell", "n", "k", "m", "c0", "d", "lambda", "mu", "i", "dim"]


class PreconditionError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


# ---------------------------------------------------------------------------
# argument types


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _rational_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_rational(t) for t in text.split(","))


def _partition(text: str):
    try:
        return parse_partition(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a partition: {text!r}")


def _ell_partition(text: str) -> EllPartition:
    try:
        return parse_ell_partition(text)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not an ell-partition (JSON array of arrays): {text!r}")


def _rows(text: str) -> tuple[tuple[int, ...], ...]:
    try:
        data = json.loads(text)
        return tuple(tuple(int(v) for v in row) for row in data)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"expected JSON rows like [[1,2],[3]]: {text!r}")


def _skew(text: str) -> SkewShape:
    """``"(2,1)/(1)"`` or a straight shape ``"(2,1)"``."""
    outer, _, inner = text.partition("/")
    try:
        return SkewShape.from_partitions(parse_partition(outer), parse_partition(inner))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a skew shape: {text!r} ({exc})")


def _degree_cap() -> int | None:
    raw = os.environ.get(MAX_DEGREE_ENV)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"{MAX_DEGREE_ENV}={raw!r} is not an integer")


def _degree(requested: int | None, default: int = 3) -> int:
    cap = _degree_cap()
    if requested is None:
        return default if cap is None else min(default, cap)
    if requested < 0:
        raise PreconditionError("degree must be non-negative")
    if cap is not None and requested > cap:
        raise PreconditionError(f"degree {requested} exceeds {MAX_DEGREE_ENV}={cap}")
    return requested


def _params(args) -> Params:
    d = args.d if args.d is not None else (Fraction(0),) * (args.ell or 1)
    if args.ell is not None and len(d) != args.ell:
        raise PreconditionError(f"--ell {args.ell} but {len(d)} d values")
    try:
        return Params(args.c0, d)
    except ValueError as exc:
        raise PreconditionError(str(exc))


def _check_lambda(lam: EllPartition, p: Params) -> None:
    if lam.ell != p.ell:
        raise PreconditionError(f"λ has {lam.ell} components but there are {p.ell} d values")


# ---------------------------------------------------------------------------
# commands


def cmd_character(args) -> dict:
    p = _params(args)
    _check_lambda(args.lam, p)
    char = characters.graded_character(args.lam, p, _degree(args.degree))
    return {
        "lambda": args.lam.to_json(),
        "params": p.to_json(),
        "charged_content": format_rational(char.base),
        "character": char.rows(),
        "layer_dimensions": {str(d): char.layer_dimension(d) for d in sorted(char.layers)},
    }


def cmd_ext(args) -> dict:
    p = _params(args)
    _check_lambda(args.lam, p)
    out = characters.report(args.lam, p, _degree(args.degree, default=1))
    table = characters.ext_table(args.lam, p)
    out["shifts"] = [
        {"mu": mu.to_json(), "i": i, "shift": format_rational(table.shift(mu))}
        for (mu, i) in sorted(table.entries, key=lambda e: (e[1], e[0].to_json()))
    ]
    return out


def cmd_betti(args):
    try:
        spec = arrangements.ArrangementSpec(args.ell, args.n, args.k, args.m)
    except ValueError as exc:
        raise PreconditionError(str(exc))
    table = arrangements.betti_table(spec)
    if args.text:
        return table.text() + "\n"
    return table.to_json()


def cmd_lr(args) -> dict:
    if args.shape.size != args.weight.size:
        raise PreconditionError("shape and weight have different sizes")
    return {
        "shape": args.shape_text,
        "weight": list(args.weight),
        "coefficient": lr.lr_coeff_skew(args.shape, args.weight),
    }


def cmd_tabc(args) -> dict:
    p = _params(args)
    _check_lambda(args.lam, p)
    rows = []
    for q in tab_c.tab_c(args.lam, p, _degree(args.degree)):
        shape = tab_c.shape_s_c(q, p)
        rows.append({
            "degree": q.degree,
            "q": q.rows(),
            "shape": [shape.rows(j) for j in range(shape.ell)],
        })
    return {"lambda": args.lam.to_json(), "params": p.to_json(), "fillings": rows}


def cmd_poset(args):
    try:
        diagram = poset_abacus.hasse_diagram(args.n, args.k)
    except ValueError as exc:
        raise PreconditionError(str(exc))
    if args.dot:
        return diagram.to_dot()
    ranks = diagram.ranks()
    return {
        "n": args.n,
        "k": args.k,
        "vertices": [{"partition": format_partition(v), "rank": ranks[v]} for v in diagram.vertices],
        "edges": [
            {"gamma": format_partition(g), "lambda": format_partition(l), **cert.to_json()}
            for (g, l), cert in sorted(diagram.edges.items())
        ],
    }


def cmd_abacus(args):
    try:
        ab = poset_abacus.abacus_of_partition(args.lam, args.k)
    except ValueError as exc:
        raise PreconditionError(str(exc))
    if args.text:
        return ab.render() + "\n"
    return {
        "lambda": format_partition(args.lam),
        "k": args.k,
        "beads": sorted(ab.beads),
        "rows": list(ab.rows),
        "picture": ab.render().splitlines(),
    }


def _edges_below(gamma, lam, n: int, k: int) -> list[jack_map.Edge]:
    if gamma.size != n:
        raise PreconditionError(f"γ has size {gamma.size}, not n={n}")
    if lam is not None:
        try:
            return [jack_map.Edge.of(gamma, lam, k)]
        except ValueError as exc:
            raise PreconditionError(str(exc))
    below = [
        l for l in poset_abacus.poset_elements(n, k)
        if poset_abacus.covers(gamma, l, k) is not None
    ]
    if not below:
        raise PreconditionError(f"γ covers nothing in P({n},{k})")
    return [jack_map.Edge.of(gamma, l, k) for l in below]


def cmd_phi(args) -> dict:
    """One entry per cover below γ, or just the one named by --lambda."""
    t = args.tableau
    if tuple(len(r) for r in t) != tuple(args.gamma) or not jack_map.is_standard(t) or sorted(
        v for r in t for v in r
    ) != list(range(1, args.gamma.size + 1)):
        raise PreconditionError("tableau is not a standard tableau of shape γ")
    images = []
    for edge in _edges_below(args.gamma, args.lam, args.n, args.k):
        mu, tp = jack_map.phi_forward(edge, t)
        images.append({
            "lambda": list(edge.lam),
            "cover": edge.cert.to_json(),
            "mu": list(mu),
            "tableau": [list(r) for r in tp],
            "classification": jack_map.classify(edge, mu, tp).value,
            "weight": [format_rational(w) for w in jack_map.weight(mu, tp, edge.c)],
            "b": format_rational(jack_map.b_constant(edge, t)),
        })
    return {"gamma": list(args.gamma), "k": args.k, "source": [list(r) for r in t], "images": images}


def _certify_edge(task) -> dict:
    gamma, lam, k, brute = task
    edge = jack_map.Edge.of(gamma, lam, k)
    out = jack_map.multiplicity_one_certify(edge).to_json()
    if brute:
        counts = jack_map.brute_force_multiplicities(edge)
        out["brute_force"] = "PASS" if all(v == 1 for v in counts.values()) else "FAIL"
        if out["brute_force"] == "FAIL":
            out["status"] = "FAIL"
    return out


def _pool_map(fn, tasks, jobs: int):
    if jobs <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def cmd_certify(args) -> dict:
    try:
        diagram = poset_abacus.hasse_diagram(args.n, args.k)
    except ValueError as exc:
        raise PreconditionError(str(exc))
    tasks = [(g, l, args.k, args.brute_force) for (g, l) in sorted(diagram.edges)]
    if args.brute_force:
        for g, l, k, _ in tasks:
            count = jack_map.composition_count(jack_map.Edge.of(g, l, k))
            if count > args.limit:
                raise PreconditionError(f"{count} compositions on {format_partition(g)} exceeds --limit {args.limit}")
    edges = _pool_map(_certify_edge, tasks, args.jobs)
    status = "PASS" if all(e["status"] == "PASS" for e in edges) else "FAIL"
    return {"n": args.n, "k": args.k, "edges": edges, "status": status}


def _survey_point(point) -> list[list[str]]:
    ell, n, k, m = point
    if ell == 1:
        p = Params(Fraction(1, k), (Fraction(0),))
        lams = [EllPartition([lam]) for lam in partitions_of(n) if arrangements.unitary_ell1(lam, k)]
    else:
        spec = arrangements.ArrangementSpec(ell, n, k, m)
        p = arrangements.unitarity_params(spec)
        lams = [arrangements.lowest_weight(spec)]
    rows = []
    for lam in lams:
        table = characters.ext_table(lam, p)
        for (mu, i), dim in sorted(table.entries.items(), key=lambda e: (e[0][1], e[0][0].to_json())):
            rows.append([
                str(ell), str(n), str(k), str(m), format_rational(p.c0),
                ",".join(format_rational(v) for v in p.d),
                json.dumps(lam.to_json(), separators=(",", ":")),
                json.dumps(mu.to_json(), separators=(",", ":")),
                str(i), str(dim),
            ])
    return rows


def survey_points(ells, n_max: int, k_max: int) -> list[tuple[int, int, int, int]]:
    """ℓ = 1: c0 = 1/k at every hook-unitary λ; ℓ >= 2: the arrangement family."""
    points = []
    for ell in sorted(set(ells)):
        for n in range(2, n_max + 1):
            for k in range(2, min(n, k_max) + 1):
                for m in range(k if ell > 1 else 1):
                    try:
                        spec = arrangements.ArrangementSpec(ell, n, k, m)
                        if ell > 1:
                            arrangements.unitarity_params(spec)
                    except ValueError:
                        continue
                    points.append((ell, n, k, m))
    return points


def cmd_survey(args) -> str:
    points = survey_points(args.ell, args.n_max, args.k_max)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SURVEY_HEADER)
    for rows in _pool_map(_survey_point, points, args.jobs):
        writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# parser


def _add_params(sp, need_lambda=True):
    sp.add_argument("--ell", type=int, help="number of species; checked against --d")
    sp.add_argument("--c0", type=_rational, required=True, help='e.g. "1/3"')
    sp.add_argument("--d", type=_rational_list, help='comma list summing to 0, e.g. "1/6,-1/6"')
    if need_lambda:
        sp.add_argument("--lambda", dest="lam", type=_ell_partition, required=True, help="e.g. [[1,1],[1,1]]")
    sp.add_argument("--degree", type=int, help=f"highest degree; capped by ${MAX_DEGREE_ENV}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cherednik", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("character", help="graded character layers of L_c(λ)")
    _add_params(sp)
    sp.set_defaults(func=cmd_character)

    sp = sub.add_parser("ext", help="Ext table of a unitary L_c(λ)")
    _add_params(sp)
    sp.set_defaults(func=cmd_ext)

    sp = sub.add_parser("betti", help="Betti table of the ideal of X_k ∪ Y_{m+1}")
    for flag in ("--ell", "--n", "--k", "--m"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--text", action="store_true", help="aligned table instead of JSON")
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("lr", help="LR coefficient of a skew shape")
    sp.add_argument("--shape", required=True, help='e.g. "(2,1)/(1)"')
    sp.add_argument("--weight", type=_partition, required=True)
    sp.set_defaults(func=cmd_lr)

    sp = sub.add_parser("tabc", help="admissible fillings and their shapes")
    _add_params(sp)
    sp.set_defaults(func=cmd_tabc)

    sp = sub.add_parser("poset", help="Hasse diagram of P(n,k)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--dot", action="store_true", help="Graphviz output")
    sp.set_defaults(func=cmd_poset)

    sp = sub.add_parser("abacus", help="k-abacus of a partition")
    sp.add_argument("--lambda", dest="lam", type=_partition, required=True, help='e.g. "4^3,3"')
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--text", action="store_true", help="bead picture only")
    sp.set_defaults(func=cmd_abacus)

    sp = sub.add_parser("phi", help="the map φ on one tableau of γ")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--gamma", type=_partition, required=True)
    sp.add_argument("--lambda", dest="lam", type=_partition, help="needed when γ covers several partitions")
    sp.add_argument("--tableau", type=_rows, required=True, help="JSON rows, e.g. [[1,2,4],[3,5]]")
    sp.set_defaults(func=cmd_phi)

    sp = sub.add_parser("certify", help="multiplicity-one certificate on every edge of P(n,k)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--brute-force", action="store_true", help="also enumerate every composition")
    sp.add_argument("--limit", type=int, default=10**6, help="composition count allowed with --brute-force")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("survey", help="CSV of Ext dimensions over a grid")
    sp.add_argument("--ell", type=lambda s: [int(v) for v in s.split(",")], default=[1], help='e.g. "1,2"')
    sp.add_argument("--n-max", type=int, default=5)
    sp.add_argument("--k-max", type=int, default=5)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_survey)
    return parser


def emit(result) -> str:
    if isinstance(result, str):
        return result
    if isinstance(result, dict):
        result = {"schema": SCHEMA_VERSION, **result}
    return json.dumps(result, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "lr":
        args.shape_text = args.shape
        try:
            args.shape = _skew(args.shape)
        except argparse.ArgumentTypeError as exc:
            parser.error(str(exc))
    try:
        result = args.func(args)
    except (tab_c.ReconstructionError, jack_map.WeightCollision, AssertionError) as exc:
        print(f"cherednik {args.command}: internal check failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:  # PreconditionError and library input checks
        print(f"cherednik {args.command}: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:
        print(f"cherednik {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out.write(emit(result))
    if isinstance(result, dict) and result.get("status") == "FAIL":
        return 1
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


if __name__ == "__main__":
    raise SystemExit(main())
