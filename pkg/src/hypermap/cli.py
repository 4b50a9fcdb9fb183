"""Command-line front end.

Subcommands: moments, trees, poly, genus, wright, oracle, selftest, tables.
Results are wrapped in a deterministic envelope and printed as canonical
JSON (sorted keys), CSV (power,value rows), or human-readable text.

Exit codes: 0 success, 2 usage error, 3 guard violation, 4 self-test
failure.  Guard violations emit a machine-readable error object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__, genus, goldens, polys, treeseries, wright
from .cache import memo_json, resolve_cache_dir, write_family_jsonl
from .errors import GuardError
from .graphs import enumerate_min_degree3
from .moments import loop_moment, nonloop_complex_moment
from .series import Series, rat_to_str, series_to_text

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_SELFTEST = 4


def _envelope(kind: str, params: dict, payload: dict, cache_enabled: bool, hit: bool) -> dict:
    return {
        "kind": kind,
        "tool": "hypermap",
        "version": __version__,
        "params": params,
        "cache": {"enabled": cache_enabled, "hit": hit},
        "payload": payload,
    }


def _emit(env: dict, fmt: str) -> None:
    payload = env["payload"]
    if fmt == "json":
        sys.stdout.write(json.dumps(env, sort_keys=True, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        if "coeffs" in payload:
            sys.stdout.write("power,value\n")
            for k, c in enumerate(payload["coeffs"]):
                sys.stdout.write(f"{k},{c}\n")
        elif "monomial" in payload or "falling" in payload:
            key = "monomial" if "monomial" in payload else "falling"
            sys.stdout.write("degree,value\n")
            for k, c in enumerate(payload[key]):
                sys.stdout.write(f"{k},{c}\n")
        else:
            for k, v in sorted(payload.items()):
                sys.stdout.write(f"{k},{v}\n")
    else:  # text
        sys.stdout.write(payload.get("text", json.dumps(payload, sort_keys=True)) + "\n")


def _series_payload(series: Series) -> dict:
    return {
        "coeffs": [rat_to_str(c) for c in series.coeffs],
        "order": series.order,
        "text": series_to_text(series),
        "var": "x",
    }


# -- subcommand handlers ---------------------------------------------------


def _cmd_moments(args, cache_dir) -> dict:
    if args.a is not None or args.b is not None:
        if args.a is None or args.b is None:
            raise SystemExit_usage("moments needs both --a and --b (or --loop-k)")
        value = nonloop_complex_moment(args.m, args.a, args.b)
        params = {"m": args.m, "a": args.a, "b": args.b, "kind": "nonloop"}
    elif args.loop_k is not None:
        value = loop_moment(args.m, args.loop_k)
        params = {"m": args.m, "k": args.loop_k, "kind": "loop"}
    else:
        raise SystemExit_usage("moments needs --a/--b or --loop-k")
    payload = {"value": str(value), "text": str(value)}
    return _envelope("table", params, payload, cache_dir is not None, False)


def _cmd_trees(args, cache_dir) -> dict:
    params = {"m": args.m, "s": args.s, "order": args.order}

    def compute():
        return _series_payload(treeseries.tree_series(args.m, args.s, args.order + 1))

    payload, hit = memo_json(cache_dir, "trees", params, compute)
    return _envelope("series", params, payload, cache_dir is not None, hit)


def _cmd_poly(args, cache_dir) -> dict:
    params = {
        "m": args.m,
        "r": args.r,
        "basis": args.basis,
        "normalized": args.normalized,
    }

    def compute():
        falling = polys.moment_polynomial(args.m, args.r)
        if args.normalized:
            falling = falling.scale(Fraction(1, 2 * args.m * args.r))
        if args.basis == "monomial":
            poly = falling.to_monomial()
            return {
                "monomial": [rat_to_str(c) for c in poly.coeffs],
                "text": str(poly),
            }
        return {
            "falling": [rat_to_str(c) for c in falling.coeffs],
            "text": str(falling),
        }

    payload, hit = memo_json(cache_dir, "poly", params, compute)
    return _envelope("polynomial", params, payload, cache_dir is not None, hit)


def _contribution_worker(task):
    vertex_count, edges, m, order = task
    from .graphs import Multigraph

    series = genus.graph_contribution(Multigraph(vertex_count, edges), m, order)
    return series.coeffs


def _gg_series_jobs(m: int, g: int, order: int, jobs: int, allow_large: bool) -> Series:
    family = enumerate_min_degree3(g, allow_large=allow_large)
    tasks = [(gr.vertex_count, gr.edges, m, order) for gr, _aut in family]
    total = Series.zero(order)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for coeffs in pool.map(_contribution_worker, tasks):
            total = total + Series(coeffs, order)
    return total


def _cmd_genus(args, cache_dir) -> dict:
    params = {
        "m": args.m,
        "g": args.g,
        "order": args.order,
        "oracle": bool(args.oracle),
        "vmax": args.vmax,
        "per_graph": bool(args.per_graph),
    }

    def compute():
        order = args.order + 1
        if args.oracle:
            series = genus.gg_series_oracle(
                args.m, args.g, args.vmax, allow_large=args.allow_large
            ).truncate(min(args.vmax, args.order) + 1)
            return _series_payload(series)
        if args.g == 0:
            return _series_payload(genus.g0_series(args.m, order))
        if args.g == 1:
            return _series_payload(genus.g1_series(args.m, order))
        if args.per_graph:
            family = enumerate_min_degree3(args.g, allow_large=args.allow_large)
            if cache_dir is not None:
                write_family_jsonl(
                    cache_dir,
                    f"gamma_ge3_g{args.g}",
                    [gr.to_json_obj(aut=aut) for gr, aut in family],
                )
            entries = []
            for gr, _aut in family:
                contrib = genus.graph_contribution(gr, args.m, order)
                entries.append(
                    {
                        "edges": [list(e) for e in gr.edges],
                        "v": gr.vertex_count,
                        "series": _series_payload(contrib),
                    }
                )
            text = "\n".join(
                f"{e['v']} vertices {e['edges']}: {e['series']['text']}"
                for e in entries
            )
            return {"graphs": entries, "text": text}
        if args.jobs > 1:
            return _series_payload(
                _gg_series_jobs(args.m, args.g, order, args.jobs, args.allow_large)
            )
        return _series_payload(
            genus.gg_series(args.m, args.g, order, allow_large=args.allow_large)
        )

    payload, hit = memo_json(cache_dir, "genus", params, compute)
    return _envelope("series", params, payload, cache_dir is not None, hit)


def _cmd_wright(args, cache_dir) -> dict:
    params = {"g": args.g, "order": args.order}

    def compute():
        order = args.order + 1
        if args.g >= 4:
            if args.g != 5:
                raise GuardError(
                    "only g <= 3 (enumeration) and g = 5 (shipped data) supported",
                    g=args.g,
                )
            series = wright.wg_from_bivariate(goldens.g5_autsum(), order)
        else:
            series = wright.w_series(args.g, order, allow_large=args.allow_large)
        return _series_payload(series)

    payload, hit = memo_json(cache_dir, "wright", params, compute)
    return _envelope("series", params, payload, cache_dir is not None, hit)


def _cmd_oracle(args, cache_dir) -> dict:
    if args.which == "trace":
        value = polys.trace_word_oracle(args.m, args.r, args.N)
        params = {"which": "trace", "m": args.m, "r": args.r, "N": args.N}
        payload = {"value": str(value), "text": str(value)}
        kind = "table"
    elif args.which == "pairing":
        poly = polys.pairing_oracle_gue(args.r)
        params = {"which": "pairing", "r": args.r}
        payload = {"monomial": [rat_to_str(c) for c in poly.coeffs], "text": str(poly)}
        kind = "polynomial"
    elif args.which == "moment":
        from .moments import complex_moment_bruteforce

        value = complex_moment_bruteforce(args.m, args.a, args.b)
        params = {"which": "moment", "m": args.m, "a": args.a, "b": args.b}
        payload = {"value": str(value), "text": str(value)}
        kind = "table"
    else:
        raise SystemExit_usage(f"unknown oracle {args.which!r}")
    return _envelope(kind, params, payload, cache_dir is not None, False)


def _cmd_tables(args, cache_dir) -> dict:
    params = {"family": args.family, "m": args.m, "order": args.order}

    def compute():
        order = args.order + 1
        if args.family == "g0":
            series = genus.g0_series(args.m, order)
        elif args.family == "g1":
            series = genus.g1_series(args.m, order)
        elif args.family == "g2":
            series = genus.gg_series(args.m, 2, order, allow_large=args.allow_large)
        elif args.family == "w":
            series = wright.w_series(args.m, order, allow_large=args.allow_large)
        else:
            raise SystemExit_usage(f"unknown table family {args.family!r}")
        return _series_payload(series)

    payload, hit = memo_json(cache_dir, f"tables-{args.family}", params, compute)
    return _envelope("table", params, payload, cache_dir is not None, hit)


class SystemExit_usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypermap",
        description="Exact moment polynomials, genus series, tree series, "
        "and graph generating functions.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--allow-large", action="store_true")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("moments", help="single moment values")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--loop-k", type=int)
    common(p)

    p = sub.add_parser("trees", help="tree series F_s")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--order", type=int, required=True, help="highest power to report")
    common(p)

    p = sub.add_parser("poly", help="trace moment polynomial in N")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--basis", choices=("falling", "monomial"), default="monomial")
    p.add_argument("--normalized", action="store_true", help="divide by 2mr")
    common(p)

    p = sub.add_parser("genus", help="genus series")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--order", type=int, required=True, help="highest power to report")
    p.add_argument("--oracle", action="store_true", help="direct summation route")
    p.add_argument("--vmax", type=int, default=3, help="vertex bound for --oracle")
    p.add_argument("--per-graph", action="store_true", help="one series per graph")
    common(p)

    p = sub.add_parser("wright", help="graph generating functions of fixed Betti number")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--order", type=int, required=True, help="highest power to report")
    common(p)

    p = sub.add_parser("oracle", help="independent brute-force oracles")
    p.add_argument("--which", choices=("trace", "pairing", "moment"), required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    common(p)

    p = sub.add_parser("selftest", help="oracle equivalences and golden tables")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    common(p)

    p = sub.add_parser("tables", help="recompute one table column")
    p.add_argument("--family", choices=("g0", "g1", "g2", "w"), required=True)
    p.add_argument("--m", type=int, required=True, help="m (or Betti number for w)")
    p.add_argument("--order", type=int, required=True)
    common(p)

    return parser


HANDLERS = {
    "moments": _cmd_moments,
    "trees": _cmd_trees,
    "poly": _cmd_poly,
    "genus": _cmd_genus,
    "wright": _cmd_wright,
    "oracle": _cmd_oracle,
    "tables": _cmd_tables,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "selftest":
        from .selftest import run_selftest

        ok = run_selftest(args.level)
        return EXIT_OK if ok else EXIT_SELFTEST
    cache_dir = resolve_cache_dir(args.cache_dir)
    try:
        env = HANDLERS[args.command](args, cache_dir)
    except GuardError as exc:
        error = {"error": {"code": "guard", "message": str(exc), "params": exc.params}}
        sys.stderr.write(json.dumps(error, sort_keys=True) + "\n")
        return EXIT_GUARD
    except SystemExit_usage as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    _emit(env, args.format)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
