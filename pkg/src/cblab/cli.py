"""Command-line front end.

Point sets travel as JSON files with exact rational-string coordinates;
no floating point appears anywhere in the I/O. Exit codes are a stable
contract:

  0  success / verdict true
  1  verdict false / property failure / counterexample found
  2  parse or usage error
  3  internal cross-check disagreement (a bug, never expected)
  4  inexhaustive cover search (upper bounds only)

The environment variable CB_LAB_LIMIT overrides the exhaustive
cover-search limit.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import harness
from .cbp import MethodDisagreement, cbp, cbp_fast
from .cover import DEFAULT_EXHAUSTIVE_LIMIT, InexhaustiveSearchError, greedy_cover, min_cover
from .hilbert import delta_hf, hf_full
from .projective import PointSet, point_set, proj_point


class ParseError(ValueError):
    """A file or argument failed to parse; maps to exit code 2."""


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(value) -> Fraction:
    """Exact coordinate: an int, or a string 'a' or 'a/b'. No floats."""
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value):
        return Fraction(value)
    raise ParseError(f"coordinate {value!r} is not an integer or a/b rational string")


# --- point set files --------------------------------------------------------


def point_set_to_obj(x: PointSet, meta: dict | None = None) -> dict:
    obj = {
        "ambient": x.ambient_n,
        "points": [[str(c) for c in p.coords] for p in x.points],
        "labels": list(x.labels),
    }
    if meta:
        obj["meta"] = meta
    return obj


def point_set_from_obj(obj: dict) -> PointSet:
    try:
        ambient = int(obj["ambient"])
        rows = obj["points"]
        labels = obj.get("labels")
        pts = []
        for row in rows:
            if len(row) != ambient + 1:
                raise ParseError(f"point {row!r} does not have {ambient + 1} coordinates")
            pts.append(proj_point([parse_rational(c) for c in row]))
        return point_set(pts, labels)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point-set object: {exc}") from exc


def load_point_set(path: str) -> PointSet:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read point set from {path}: {exc}") from exc
    return point_set_from_obj(obj)


def dump_json(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=1) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _default_limit() -> int:
    env = os.environ.get("CB_LAB_LIMIT")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ParseError(f"CB_LAB_LIMIT must be an integer, got {env!r}") from exc
    return DEFAULT_EXHAUSTIVE_LIMIT


# --- commands ---------------------------------------------------------------


def cmd_hf(args) -> int:
    x = load_point_set(args.file)
    h = hf_full(x)
    print("HF: " + " ".join(str(v) for v in h.values[: h.reg_index + 1]) + f"; rX={h.reg_index}")
    print("dHF: " + " ".join(str(v) for v in delta_hf(h)))
    print(f"|X|={len(x)}")
    return 0


def cmd_cbp(args) -> int:
    x = load_point_set(args.file)
    if args.r < 0:
        raise ParseError("--r must be nonnegative")
    if args.fast:
        verdict = cbp_fast(x, args.r)
        print(f"CBP({args.r}): {_bool(verdict)} (hf method only)")
        return 0 if verdict else 1
    report = cbp(x, args.r)
    print(f"CBP({args.r}): {_bool(report.verdict)}")
    print(
        "methods: "
        + " ".join(f"{name}={_bool(v)}" for name, v in report.per_method.items())
    )
    if report.verdict and report.witness is not None:
        print("witness: (" + ", ".join(str(c) for c in report.witness.entries) + ")")
    if not report.verdict and report.failing_point is not None:
        print(f"failing point: {report.failing_point} {x.point(report.failing_point)}")
    return 0 if report.verdict else 1


def cmd_cover(args) -> int:
    x = load_point_set(args.file)
    limit = args.limit if args.limit is not None else _default_limit()
    if args.budget < 0:
        raise ParseError("--budget must be nonnegative")
    try:
        result = min_cover(x, args.budget, limit)
    except InexhaustiveSearchError:
        g = greedy_cover(x)
        print(f"inexhaustive: {len(x)} points exceed limit {limit}")
        print(f"greedy upper bound: dim={g.total_dim} len={g.config.length}")
        _print_config(g)
        return 4
    if result is None:
        print(f"no plane configuration of dimension <= {args.budget} contains the set")
        return 1
    print(
        f"cover: dim={result.total_dim} len={result.config.length} "
        f"optimal={_bool(result.optimal)}"
    )
    _print_config(result)
    return 0


def _print_config(result) -> None:
    for i, (flat, block) in enumerate(zip(result.config.flats, result.blocks)):
        print(f"flat {i}: dim={flat.proj_dim} points={list(block)}")
        for row in range(flat.basis.rows):
            print("  [" + " ".join(str(v) for v in flat.basis.row(row)) + "]")


def cmd_generate(args) -> int:
    kind = args.kind.replace("-", "_")
    params = args.params
    seed = args.seed
    try:
        if kind == "grid":
            if len(params) != 2:
                raise ParseError("generate grid needs two arguments: d e")
            inst = harness.gen_grid(params[0], params[1])
        elif kind == "collinear":
            if len(params) != 1:
                raise ParseError("generate collinear needs one argument: s")
            inst = harness.gen_collinear(params[0], args.ambient or 2, seed)
        elif kind == "random":
            if len(params) != 1:
                raise ParseError("generate random needs one argument: size")
            inst = harness.gen_random(args.ambient or 3, params[0], args.height, seed)
        elif kind in ("split_lines", "split_plane_line", "skew_lines", "meeting_lines", "meeting_plane_line"):
            if not params:
                raise ParseError(f"generate {args.kind} needs per-flat point counts")
            defaults = {
                "split_lines": 2 * len(params) - 1,
                "split_plane_line": 4,
                "skew_lines": 3,
                "meeting_lines": 2,
                "meeting_plane_line": 3,
            }
            inst = harness.gen_structured(
                kind, args.ambient or defaults[kind], list(params), seed, args.include_meet
            )
        else:
            raise ParseError(f"unknown generator {args.kind!r}")
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    dump_json(point_set_to_obj(inst.point_set, meta={"provenance": inst.provenance}), args.output)
    return 0


def cmd_verify(args) -> int:
    if args.builtin:
        config = harness.default_suite_config(seed=args.seed, scale=args.scale)
    else:
        if args.config is None:
            raise ParseError("verify needs a suite config file (or --builtin)")
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read suite config: {exc}") from exc
    if args.limit is not None:
        config["cover_limit"] = args.limit
    elif "cover_limit" not in config:
        config["cover_limit"] = _default_limit()
    try:
        result = harness.run_suite(config)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad suite config: {exc}") from exc
    print(result.summary_text())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(result.to_json_lines())
    counts = result.counts
    if counts["fail"] > 0:
        return 1
    if counts["inconclusive"] > 0:
        return 4
    return 0


def cmd_search(args) -> int:
    limit = args.limit if args.limit is not None else _default_limit()
    result = harness.counterexample_search(args.d, args.r, args.trials, args.seed, limit)
    print(json.dumps(result.summary_obj(), sort_keys=True))
    lines = []
    for inst in result.hits:
        lines.append(
            json.dumps(
                {
                    "type": "hit",
                    "provenance": inst.provenance,
                    "point_set": point_set_to_obj(inst.point_set),
                },
                sort_keys=True,
            )
        )
    for inst in result.inconclusive:
        lines.append(
            json.dumps(
                {
                    "type": "inconclusive",
                    "provenance": inst.provenance,
                    "point_set": point_set_to_obj(inst.point_set),
                },
                sort_keys=True,
            )
        )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + ("\n" if lines else ""))
    else:
        for line in lines:
            print(line)
    if result.hits:
        return 1
    if result.inconclusive:
        return 4
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cblab",
        description="Exact Cayley-Bacharach / Hilbert function / plane-cover toolbox",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_hf = sub.add_parser("hf", help="Hilbert function, first differences, regularity index")
    p_hf.add_argument("file")
    p_hf.set_defaults(fn=cmd_hf)

    p_cbp = sub.add_parser("cbp", help="Cayley-Bacharach property of a given degree")
    p_cbp.add_argument("file")
    p_cbp.add_argument("--r", type=int, required=True)
    p_cbp.add_argument("--fast", action="store_true", help="Hilbert-function route only")
    p_cbp.set_defaults(fn=cmd_cbp)

    p_cover = sub.add_parser("cover", help="minimum plane-configuration cover")
    p_cover.add_argument("file")
    p_cover.add_argument("--budget", type=int, required=True)
    p_cover.add_argument("--limit", type=int, default=None)
    p_cover.set_defaults(fn=cmd_cover)

    p_gen = sub.add_parser("generate", help="write a seeded point-set file")
    p_gen.add_argument("kind")
    p_gen.add_argument("params", nargs="*", type=int)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--ambient", type=int, default=None)
    p_gen.add_argument("--height", type=int, default=10)
    p_gen.add_argument("--include-meet", action="store_true")
    p_gen.add_argument("-o", "--output", default=None)
    p_gen.set_defaults(fn=cmd_generate)

    p_ver = sub.add_parser("verify", help="run a property suite over generated instances")
    p_ver.add_argument("config", nargs="?", default=None)
    p_ver.add_argument("--builtin", action="store_true", help="use the built-in default suite")
    p_ver.add_argument("--seed", type=int, default=7)
    p_ver.add_argument("--scale", type=int, default=1)
    p_ver.add_argument("--limit", type=int, default=None)
    p_ver.add_argument("-o", "--output", default=None, help="write reports as JSON lines")
    p_ver.set_defaults(fn=cmd_verify)

    p_search = sub.add_parser("search", help="counterexample search for the cover conjecture")
    p_search.add_argument("d", type=int)
    p_search.add_argument("r", type=int)
    p_search.add_argument("--trials", type=int, default=100)
    p_search.add_argument("--seed", type=int, default=0)
    p_search.add_argument("--limit", type=int, default=None)
    p_search.add_argument("-o", "--output", default=None, help="write candidates as JSON lines")
    p_search.set_defaults(fn=cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MethodDisagreement as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except InexhaustiveSearchError as exc:
        print(f"inexhaustive: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
