"""Command-line front end: expression evaluation, identity verification,
and table generation, with an append-only JSON-lines result cache.

Expression grammar (whitespace-insensitive):

    expr   := kind "(" args ")"
    kind   := "zeta" | "zetastar" | "zeta_N" | "zetastar_N" | "G" | "H"
    index  := int | "{" int "}" "^" int   (comma-separated, may be empty)
    G args := "n=" int "," "p=" int "," "q=" int
    H args := n "," s

"zeta_N"/"zetastar_N" are the finite sums truncated at N.  Indices follow
the ascending convention: zeta(1,2) converges, zeta(2,1) does not.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from mpmath import mp, mpf

from . import identity_suite
from .euler_sums import GSpec, g2_closed, g_direct
from .finite_sums import finite_mzv, finite_mzsv, gen_harmonic
from .indices import MultiIndex, format_index, parse_index
from .mzv_engine import DivergentIndexError, DomainLimitError, mzsv, mzv
from .numerics import PrecisionConfig, ValueWithError, precision

__all__ = ["Expression", "parse_expression", "ResultCache", "main"]

CACHE_VERSION = 1
DEFAULT_CACHE = "./eulersum-cache.jsonl"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# Expression grammar
# ---------------------------------------------------------------------------

_HEAD_RE = re.compile(r"\s*([A-Za-z]+)(?:_(\d+))?\s*\(")
_G_ARGS_RE = re.compile(
    r"\s*n\s*=\s*(\d+)\s*,\s*p\s*=\s*(\d+)\s*,\s*q\s*=\s*(\d+)\s*$"
)

KINDS = {"zeta", "zetastar", "G", "H"}


@dataclass(frozen=True)
class Expression:
    """A parsed evaluation request."""

    kind: str                      # zeta | zetastar | finite_zeta | finite_zetastar | G | harmonic
    index: Optional[MultiIndex] = None
    gspec: Optional[GSpec] = None
    harmonic: Optional[tuple[int, int]] = None
    truncation: Optional[int] = None

    def canonical(self) -> str:
        if self.kind == "G":
            return str(self.gspec)
        if self.kind == "harmonic":
            return f"H({self.harmonic[0]},{self.harmonic[1]})"
        base = {"zeta": "zeta", "zetastar": "zetastar",
                "finite_zeta": "zeta", "finite_zetastar": "zetastar"}[self.kind]
        trunc = f"_{self.truncation}" if self.truncation is not None else ""
        return f"{base}{trunc}{format_index(self.index)}"


def parse_expression(text: str) -> Expression:
    """Parse an expression; ValueError messages carry the failing position."""
    m = _HEAD_RE.match(text)
    if not m:
        raise ValueError(f"position 0: expected kind(<args>) in {text!r}")
    kind, trunc = m.group(1), m.group(2)
    if kind not in KINDS:
        raise ValueError(f"position 0: unknown kind {kind!r} (expected one of {sorted(KINDS)})")
    rest = text[m.end():].rstrip()
    if not rest.endswith(")"):
        raise ValueError(f"position {len(text) - 1}: expected closing ')'")
    body = rest[:-1]

    if kind == "G":
        if trunc is not None:
            raise ValueError("position 1: G takes no truncation suffix")
        gm = _G_ARGS_RE.match(body)
        if not gm:
            raise ValueError(
                f"position {m.end()}: G arguments must be n=<int>,p=<int>,q=<int>"
            )
        return Expression("G", gspec=GSpec(*(int(g) for g in gm.groups())))

    if kind == "H":
        if trunc is not None:
            raise ValueError("position 1: H takes no truncation suffix")
        parts = [p.strip() for p in body.split(",")]
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ValueError(f"position {m.end()}: H arguments must be <n>,<s>")
        n, s = int(parts[0]), int(parts[1])
        if s < 1:
            raise ValueError(f"position {m.end()}: harmonic order must be >= 1")
        return Expression("harmonic", harmonic=(n, s))

    try:
        idx = parse_index(body)
    except ValueError as exc:
        raise ValueError(f"position {m.end()}: {exc}") from exc
    if trunc is not None:
        return Expression(f"finite_{kind}", index=idx, truncation=int(trunc))
    return Expression(kind, index=idx)


def evaluate_expression(expr: Expression, cfg: PrecisionConfig) -> ValueWithError:
    if expr.kind == "zeta":
        return mzv(expr.index, cfg)
    if expr.kind == "zetastar":
        return mzsv(expr.index, cfg)
    if expr.kind == "G":
        return g_direct(expr.gspec, cfg)
    with precision(cfg):
        if expr.kind == "harmonic":
            return ValueWithError.exact(_to_mpf(gen_harmonic(*expr.harmonic)))
        if expr.kind == "finite_zeta":
            return ValueWithError.exact(_to_mpf(finite_mzv(expr.index, expr.truncation)))
        if expr.kind == "finite_zetastar":
            return ValueWithError.exact(_to_mpf(finite_mzsv(expr.index, expr.truncation)))
    raise ValueError(f"unhandled expression kind {expr.kind}")


def _to_mpf(x) -> mpf:
    if isinstance(x, mpf):
        return x
    return mpf(x.numerator) / x.denominator


# ---------------------------------------------------------------------------
# JSON-lines cache
# ---------------------------------------------------------------------------

class ResultCache:
    """Append-only JSON-lines store, loaded once into a dict at startup.

    Hits require exact match on (expression text, digits, cutoff,
    extrapolate, quad_level, schema version).  Corrupt lines are skipped
    with a warning, never fatally.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.records: dict[tuple, dict] = {}
        if self.path.exists():
            self._load()

    @staticmethod
    def key_for(expr_text: str, cfg: PrecisionConfig) -> tuple:
        return (expr_text, cfg.digits, cfg.cutoff, cfg.extrapolate,
                cfg.quad_level, CACHE_VERSION)

    def _load(self) -> None:
        with self.path.open("r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    key = (rec["expr"], rec["digits"], rec["cutoff"],
                           rec["extrapolate"], rec["quad_level"], rec["version"])
                    float(rec["err"])  # sanity: numeric fields parse
                except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                    print(f"warning: {self.path}:{lineno}: skipping corrupt cache line",
                          file=sys.stderr)
                    continue
                self.records[key] = rec

    def lookup(self, expr_text: str, cfg: PrecisionConfig) -> Optional[dict]:
        return self.records.get(self.key_for(expr_text, cfg))

    def store(self, expr_text: str, cfg: PrecisionConfig, value: str, err: str) -> dict:
        rec = {
            "expr": expr_text,
            "digits": cfg.digits,
            "cutoff": cfg.cutoff,
            "extrapolate": cfg.extrapolate,
            "quad_level": cfg.quad_level,
            "value": value,
            "err": err,
            "version": CACHE_VERSION,
        }
        self.records[self.key_for(expr_text, cfg)] = rec
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec) + "\n")
        return rec


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cfg_from_args(args) -> PrecisionConfig:
    return PrecisionConfig(
        digits=args.digits,
        cutoff=args.cutoff,
        extrapolate=not args.no_extrapolate,
        quad_level=args.quad_level,
    )


def _cmd_eval(args) -> int:
    try:
        expr = parse_expression(args.expression)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = _cfg_from_args(args)
    text = expr.canonical()

    cache = None if args.no_cache else ResultCache(args.cache)
    rec = cache.lookup(text, cfg) if cache else None
    t0 = time.perf_counter()
    if rec is None:
        try:
            result = evaluate_expression(expr, cfg)
        except DivergentIndexError as exc:
            print(f"error: divergent series: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except (DomainLimitError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        with precision(cfg):
            value_str = mp.nstr(result.value, cfg.digits, strip_zeros=False)
            err_str = mp.nstr(result.err, 3)
        if cache:
            rec = cache.store(text, cfg, value_str, err_str)
        else:
            rec = {"expr": text, "value": value_str, "err": err_str}
        hit = False
    else:
        hit = True
    elapsed = time.perf_counter() - t0

    if args.json:
        print(json.dumps({"expr": rec["expr"], "value": rec["value"], "err": rec["err"]}))
    else:
        print(f"{rec['expr']} = {rec['value']}")
        print(f"err <= {rec['err']}")
    if args.verbose:
        source = "cache hit, no summation" if hit else "computed"
        print(f"[{source} in {elapsed * 1000.0:.1f} ms]", file=sys.stderr)
    return EXIT_OK


def _parse_range(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise ValueError(f"bad range {text!r}, expected N or LO..HI")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


_PARAM_NAMES = ("n", "p", "q", "k", "r", "s", "m", "rep")


def _cmd_verify(args) -> int:
    cfg = _cfg_from_args(args)
    if args.all or args.identity is None:
        if not args.all:
            print("error: give an identity id or --all", file=sys.stderr)
            return EXIT_USAGE
        reports = identity_suite.run_suite(None, cfg, threads=args.threads, tol=args.tol)
    else:
        ident = args.identity
        if ident not in identity_suite.CATALOG:
            print(f"error: unknown identity {ident!r}; known ids: "
                  f"{', '.join(identity_suite.catalog_ids())}", file=sys.stderr)
            return EXIT_USAGE
        idef = identity_suite.CATALOG[ident]
        overrides = {
            name: _parse_range(getattr(args, name))
            for name in _PARAM_NAMES if getattr(args, name) is not None
        }
        bad = [k for k in overrides if k not in idef.params]
        if bad:
            print(f"error: {ident} does not take parameter(s) {bad}; "
                  f"it takes {list(idef.params)}", file=sys.stderr)
            return EXIT_USAGE
        grid = [
            params for params in idef.grid
            if all(params[k] in v for k, v in overrides.items())
        ]
        if not grid:
            print("error: no grid instances match the given parameter ranges",
                  file=sys.stderr)
            return EXIT_USAGE
        reports = [identity_suite.run_identity(ident, params, cfg, tol=args.tol)
                   for params in grid]

    if args.json:
        payload = [r.to_json_dict(cfg.digits, with_timing=args.timings) for r in reports]
        print(json.dumps(payload, indent=2))
    else:
        for r in reports:
            params = ",".join(f"{k}={v}" for k, v in sorted(r.params.items()))
            status = "PASS" if r.passed else "FAIL"
            detail = f" [{r.error}]" if r.error else ""
            print(f"{status} {r.id}({params}) residual={r.residual:.3e} "
                  f"tol={r.tol:g}{detail}")
        npass = sum(r.passed for r in reports)
        print(f"summary: {npass}/{len(reports)} instances passed")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_table(args) -> int:
    cfg = _cfg_from_args(args)
    if args.name == "zetastar-head":
        try:
            rs = _parse_range(args.r) if args.r else [0, 1, 2]
            ns = _parse_range(args.n) if args.n else [0, 1, 2]
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if any(r > 2 for r in rs) or any(n > 3 for n in ns):
            print("error: zetastar-head supports r in 0..2 and n in 0..3",
                  file=sys.stderr)
            return EXIT_USAGE
        header = ["r", "n", "value", "err"]
        rows = []
        with precision(cfg):
            for r in rs:
                for n in ns:
                    v = identity_suite.zetastar_head_eval(r, n, cfg)
                    rows.append([str(r), str(n),
                                 mp.nstr(v.value, cfg.digits, strip_zeros=False),
                                 mp.nstr(v.err, 3)])
    elif args.name == "g2":
        pmax = args.max if args.max is not None else 4
        if pmax < 0 or pmax > 12:
            print("error: g2 table needs 0 <= --max <= 12", file=sys.stderr)
            return EXIT_USAGE
        header = ["p", "q", "coefficient", "zeta_argument", "value"]
        rows = []
        with precision(cfg):
            for p in range(pmax + 1):
                for q in range(pmax - p + 1):
                    cf = g2_closed(p, q)
                    rows.append([
                        str(p), str(q), str(cf.coefficient), str(cf.zeta_argument),
                        mp.nstr(cf.value(cfg).value, cfg.digits, strip_zeros=False),
                    ])
    else:
        print(f"error: unknown table {args.name!r} (known: zetastar-head, g2)",
              file=sys.stderr)
        return EXIT_USAGE

    if args.format == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(row))
    elif args.format == "json":
        print(json.dumps([dict(zip(header, row)) for row in rows], indent=2))
    else:
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
                  for i, h in enumerate(header)]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            print("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--digits", type=int, default=30,
                        help="working significant decimal digits (default 30)")
    parser.add_argument("--cutoff", type=int, default=100_000,
                        help="series truncation bound (default 100000)")
    parser.add_argument("--no-extrapolate", action="store_true",
                        help="disable the tail-acceleration step")
    parser.add_argument("--quad-level", type=int, default=10,
                        help="tanh-sinh refinement level (default 10)")
    parser.add_argument("--json", action="store_true", help="emit JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulersums",
        description="Multiple zeta values, zeta-star values, and the two-block "
                    "Euler sums G_{n+2}(p,q), with identity verification. "
                    "Indices use the ascending convention: the LAST exponent "
                    "must be >= 2 for convergence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one expression")
    p_eval.add_argument("expression",
                        help='e.g. "zetastar(3,{2}^2)", "G(n=0,p=1,q=1)", '
                             '"H(10,2)", "zeta_100(1,2)"')
    _add_common(p_eval)
    p_eval.add_argument("--cache", default=DEFAULT_CACHE,
                        help=f"cache path (default {DEFAULT_CACHE})")
    p_eval.add_argument("--no-cache", action="store_true",
                        help="bypass the result cache")
    p_eval.add_argument("--verbose", action="store_true",
                        help="report timing and cache status on stderr")

    p_verify = sub.add_parser("verify", help="verify catalog identities")
    p_verify.add_argument("identity", nargs="?",
                          help="catalog id (e.g. prop2.4, eq6.1)")
    p_verify.add_argument("--all", action="store_true",
                          help="run the whole catalog on default grids")
    for name in _PARAM_NAMES:
        p_verify.add_argument(f"--{name}", default=None,
                              help=f"restrict parameter {name} (N or LO..HI)")
    _add_common(p_verify)
    p_verify.add_argument("--tol", type=float, default=None,
                          help="override the relative tolerance")
    p_verify.add_argument("--threads", type=int, default=1,
                          help="parallel identity instances (default 1)")
    p_verify.add_argument("--timings", action="store_true",
                          help="include elapsed_ms in JSON reports "
                               "(off by default so reports are reproducible)")

    p_table = sub.add_parser("table", help="tabulate value families")
    p_table.add_argument("name", help="table name: zetastar-head | g2")
    p_table.add_argument("--r", default=None, help="r range, e.g. 0..2")
    p_table.add_argument("--n", default=None, help="n range, e.g. 0..3")
    p_table.add_argument("--max", type=int, default=None,
                         help="p+q bound for the g2 table (default 4)")
    p_table.add_argument("--format", choices=("text", "csv", "json"),
                         default="text")
    _add_common(p_table)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg_check = _cfg_from_args(args)
        del cfg_check
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "eval":
        return _cmd_eval(args)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "table":
        return _cmd_table(args)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
