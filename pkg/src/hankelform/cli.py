"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 bad input, 3 closed form
singular (``--method closed``), 4 detector says no product form is likely,
5 detector inconclusive.
"""

from __future__ import annotations

import argparse
import configparser
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import catalog as cat
from .arith import DEFAULT_FACTOR_BUDGET, as_rational, format_rational, parse_rational
from .closedform import SingularDenominator, d_principal, d_reciprocal
from .detector import INCONCLUSIVE, UNLIKELY, default_bound, detect
from .grid import random_specs, verify_grid
from .hankel import TransformValue, build_matrix, condense, det_bareiss
from .recurrence import (
    InvalidGamma,
    RecurrenceSpec,
    SequenceWindow,
    ZeroAlpha,
    ZeroTerm,
    make_spec,
    reciprocal_spec,
    window,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_SINGULAR = 3
EXIT_NO_PRODUCT_FORM = 4
EXIT_INCONCLUSIVE = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # let "-3/8" through as a value rather than an unknown option
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


@dataclass
class CliConfig:
    format: str = "text"
    bound: Optional[int] = None
    budget: int = DEFAULT_FACTOR_BUDGET
    jobs: int = 1
    seed: int = 0


_CONFIG_KEYS = {"format": str, "bound": int, "budget": int, "jobs": int, "seed": int}


def load_config(path: Optional[str]) -> dict:
    """Read ``key = value`` lines; unknown keys are an error."""
    if not path:
        return {}
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_string("[hankelform]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    out = {}
    for key, raw in parser["hankelform"].items():
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        try:
            out[key] = _CONFIG_KEYS[key](raw.strip())
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {raw!r}") from exc
    return out


def resolve_config(args: argparse.Namespace) -> CliConfig:
    cfg = CliConfig()
    for key, value in load_config(getattr(args, "config", None)).items():
        setattr(cfg, key, value)
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    if cfg.format not in ("text", "json"):
        raise UsageError(f"unknown format {cfg.format!r}")
    if cfg.jobs < 1:
        raise UsageError("jobs must be >= 1")
    return cfg


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} is not positive")
    return v


def _common_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    p.add_argument("--format", choices=("text", "json"), default=s, help="output format")
    p.add_argument("--config", default=s, metavar="FILE", help="key=value config file")
    p.add_argument("--bound", type=_positive, default=s, help="detector smoothness bound")
    p.add_argument("--budget", type=_positive, default=s, help="Pollard rho iterations per composite")
    p.add_argument("--jobs", type=_positive, default=s, help="worker processes for grid commands")
    p.add_argument("--seed", type=int, default=s, help="seed for randomized grids")
    return p


def _spec_options(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_argument_group("recurrence a_{n+1} = (alpha + beta/(n+gamma)) a_n")
    g.add_argument("-a", "--alpha", type=_rational, required=required)
    g.add_argument("-b", "--beta", type=_rational, required=required)
    g.add_argument("-g", "--gamma", type=_rational, required=required)
    g.add_argument("--a0", type=_rational, default=Fraction(1))


def _catalog_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("name", help="catalog entry")
    p.add_argument("--lambda", dest="lam", type=_rational)
    p.add_argument("--mu", type=_rational)
    p.add_argument("--m", type=_nonneg)


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(
        prog="hankelform",
        description="Exact generalized Hankel transforms of sequences with "
        "a_{n+1} = (alpha + beta/(n+gamma)) a_n.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="list sequence terms")
    _spec_options(p)
    p.add_argument("-c", "--count", type=_positive, required=True)

    p = sub.add_parser("transform", parents=[common], help="evaluate d_n^(k)")
    _spec_options(p)
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("-k", type=_nonneg, default=0)
    p.add_argument("--method", choices=("auto", "closed", "bareiss", "condensation"), default="auto")

    p = sub.add_parser("verify", parents=[common], help="closed form vs both oracles over a grid")
    _spec_options(p, required=False)
    p.add_argument("--n-max", type=_positive, default=6)
    p.add_argument("--k-max", type=_nonneg, default=5)
    p.add_argument("--random", type=_positive, metavar="COUNT", help="verify COUNT seeded random specs")

    p = sub.add_parser("catalog", parents=[common], help="named sequences")
    csub = p.add_subparsers(dest="catalog_command", required=True)
    csub.add_parser("list", parents=[common])
    q = csub.add_parser("eval", parents=[common])
    _catalog_params(q)
    q.add_argument("-n", type=_positive, required=True)
    q.add_argument("-k", type=_nonneg, default=0)
    q = csub.add_parser("verify", parents=[common])
    _catalog_params(q)
    q.add_argument("--n-max", type=_positive, default=6)
    q.add_argument("--k-max", type=_nonneg, default=4)

    p = sub.add_parser("reciprocal", parents=[common], help="d_n^(k) of the sequence 1/a_n")
    _spec_options(p)
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("-k", type=_nonneg, default=0)

    p = sub.add_parser("detect", parents=[common], help="look for large primes in d_n^(k)")
    _spec_options(p, required=False)
    p.add_argument("--terms-file", metavar="PATH", help='JSON array of "p/q" strings, a_0 first')
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("-k", type=_nonneg, default=0)
    return parser


# --- output -------------------------------------------------------------------


def _emit(cfg: CliConfig, text: str, data) -> None:
    if cfg.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _spec_from(args: argparse.Namespace) -> RecurrenceSpec:
    if args.alpha is None or args.beta is None or args.gamma is None:
        raise UsageError("alpha, beta and gamma are all required")
    return make_spec(args.alpha, args.beta, args.gamma, args.a0)


# --- commands -----------------------------------------------------------------


def cmd_gen(args, cfg: CliConfig) -> int:
    spec = _spec_from(args)
    terms = [format_rational(t) for t in window(spec, 0, args.count).terms]
    _emit(cfg, " ".join(terms), {"spec": spec.to_dict(), "terms": terms})
    return EXIT_OK


def evaluate(spec: RecurrenceSpec, n: int, k: int, method: str) -> TransformValue:
    """One d_n^(k) by the requested method; ``auto`` falls back to Bareiss on a singular closed form."""
    if method in ("closed", "auto"):
        out = d_principal(spec, n, k)
        if out.ok:
            return TransformValue(n, k, out.value, "closed_form")
        if method == "closed":
            out.unwrap()
        return TransformValue(n, k, _bareiss(spec, n, k), "bareiss", f"closed form singular: {out.singular}")
    if method == "bareiss":
        return TransformValue(n, k, _bareiss(spec, n, k), "bareiss")
    res = condense(build_matrix(window(spec, k, 2 * n - 1), n, k))
    return TransformValue(n, k, res.value, "condensation", "fell back to bareiss" if res.fallback else "")


def _bareiss(spec: RecurrenceSpec, n: int, k: int) -> Fraction:
    return det_bareiss(build_matrix(window(spec, k, 2 * n - 1), n, k))


def _tv_text(tv: TransformValue) -> str:
    line = f"d_{tv.n}^({tv.k}) = {format_rational(tv.value)}  [{tv.method}]"
    return line + (f"  ({tv.note})" if tv.note else "")


def cmd_transform(args, cfg: CliConfig) -> int:
    spec = _spec_from(args)
    tv = evaluate(spec, args.n, args.k, args.method)
    _emit(cfg, _tv_text(tv), {"spec": spec.to_dict(), **tv.to_dict()})
    return EXIT_OK


def _grid_text(spec: RecurrenceSpec, checks) -> list[str]:
    lines = [f"spec {spec}"]
    for c in checks:
        closed = format_rational(c.closed) if c.closed is not None else "singular"
        status = "ok" if c.agree else "MISMATCH"
        extra = " (condensation fell back)" if c.fallback else ""
        lines.append(
            f"  n={c.n} k={c.k}: closed={closed} bareiss={format_rational(c.bareiss)} "
            f"condensation={format_rational(c.condensation)} {status}{extra}"
        )
    return lines


def cmd_verify(args, cfg: CliConfig) -> int:
    if args.random:
        specs = list(random_specs(args.random, cfg.seed))
    else:
        specs = [_spec_from(args)]
    lines, data, bad = [], [], 0
    for spec in specs:
        checks = verify_grid(spec, args.n_max, args.k_max, cfg.jobs)
        bad += sum(not c.agree for c in checks)
        lines += _grid_text(spec, checks)
        data.append({"spec": spec.to_dict(), "checks": [c.to_dict() for c in checks]})
    total = len(specs) * args.n_max * (args.k_max + 1)
    lines.append("all agree" if not bad else f"{bad} of {total} grid points disagree")
    _emit(cfg, "\n".join(lines), {"all_agree": not bad, "specs": data})
    return EXIT_OK if not bad else EXIT_MISMATCH


def _entry_from(args) -> cat.CatalogEntry:
    return cat.entry(args.name, lam=args.lam, mu=args.mu, m=args.m)


def cmd_catalog(args, cfg: CliConfig) -> int:
    if args.catalog_command == "list":
        _emit(
            cfg,
            "\n".join(f"{name:30s} {cat.DESCRIPTIONS[name]}" for name in cat.ENTRY_NAMES),
            [{"name": name, "sequence": cat.DESCRIPTIONS[name]} for name in cat.ENTRY_NAMES],
        )
        return EXIT_OK
    e = _entry_from(args)
    if args.catalog_command == "eval":
        simp = cat.eval_simplified(e, args.n, args.k)
        prin = d_principal(e.spec, args.n, args.k)
        show = lambda o: format_rational(o.value) if o.ok else f"singular ({o.singular})"  # noqa: E731
        text = f"{show(simp)}\n  simplified: {show(simp)}\n  principal:  {show(prin)}"
        _emit(
            cfg,
            text,
            {
                "name": e.name,
                "params": e.params.to_dict(),
                "spec": e.spec.to_dict(),
                "n": args.n,
                "k": args.k,
                "simplified": format_rational(simp.value) if simp.ok else None,
                "principal": format_rational(prin.value) if prin.ok else None,
            },
        )
        return EXIT_OK if simp.ok else EXIT_SINGULAR
    report = cat.verify_entry(e, args.n_max, args.k_max)
    fmt = lambda v: None if v is None else format_rational(v)  # noqa: E731
    rows = [
        {
            "n": c.n,
            "k": c.k,
            "simplified": fmt(c.simplified),
            "principal": fmt(c.principal),
            "oracle": fmt(c.oracle),
            "reciprocal": fmt(c.reciprocal),
            "agree": c.agree,
        }
        for c in report.checks
    ]
    lines = [
        f"  n={r['n']} k={r['k']}: {r['oracle']} {'ok' if r['agree'] else 'MISMATCH'}" for r in rows
    ]
    lines.append("all agree" if report.ok else f"{len(report.mismatches)} mismatches")
    _emit(cfg, "\n".join([f"{e.name} {e.params.to_dict()}"] + lines), {"name": e.name, "ok": report.ok, "checks": rows})
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_reciprocal(args, cfg: CliConfig) -> int:
    spec = _spec_from(args)
    derived = reciprocal_spec(spec) if spec.alpha != 0 else None
    out = d_reciprocal(spec, args.n, args.k)
    value = out.unwrap()
    lines = []
    if derived is not None:
        lines.append(f"reciprocal spec {derived}")
    else:
        lines.append("alpha = 0: the reciprocal sequence has no recurrence of this shape")
    lines.append(f"d_{args.n}^({args.k}) = {format_rational(value)}")
    _emit(
        cfg,
        "\n".join(lines),
        {
            "spec": spec.to_dict(),
            "reciprocal_spec": None if derived is None else derived.to_dict(),
            **TransformValue(args.n, args.k, value, "closed_form").to_dict(),
        },
    )
    return EXIT_OK


def read_terms_file(path: str) -> SequenceWindow:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read terms file {path}: {exc}") from exc
    if not isinstance(raw, list) or not raw:
        raise UsageError("terms file must hold a non-empty JSON array")
    try:
        return SequenceWindow(0, tuple(as_rational(x if isinstance(x, int) else str(x)) for x in raw))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"bad term in {path}: {exc}") from exc


def cmd_detect(args, cfg: CliConfig) -> int:
    if args.terms_file:
        terms = read_terms_file(args.terms_file)
    else:
        terms = window(_spec_from(args), 0, args.k + 2 * args.n_max - 1)
    bound = cfg.bound if cfg.bound is not None else default_bound(args.n_max, args.k)
    verdict = detect(terms, args.n_max, args.k, bound, cfg.budget, cfg.jobs)
    lines = [f"verdict: {verdict.verdict} (bound {bound}, largest prime {verdict.largest_prime})"]
    for r in verdict.reports:
        if r.value == 0:
            lines.append(f"  d_{r.n}^({r.k}) = 0")
            continue
        sign = "-" if r.value < 0 else ""
        flag = {True: "", False: "  <- large prime", None: "  <- unfactored"}[r.smooth]
        lines.append(f"  d_{r.n}^({r.k}) = {sign}({r.num_factors}) / ({r.den_factors}){flag}")
    _emit(cfg, "\n".join(lines), verdict.to_dict())
    if verdict.verdict == UNLIKELY:
        return EXIT_NO_PRODUCT_FORM
    if verdict.verdict == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "transform": cmd_transform,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
    "reciprocal": cmd_reciprocal,
    "detect": cmd_detect,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags and 0 on --help
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](args, cfg)
    except SingularDenominator as exc:
        print(f"error: closed form is singular: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (UsageError, InvalidGamma, ZeroTerm, ZeroAlpha, cat.InvalidParams, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except cat.UnknownEntry as exc:
        print(f"error: unknown catalog entry {exc}; try 'catalog list'", file=sys.stderr)
        return EXIT_INPUT
    except ZeroDivisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
