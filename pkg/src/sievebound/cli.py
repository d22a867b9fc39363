# -*- coding: utf-8 -*-
"""Command-line front end.

Subcommands: omega, classify, member, verify, scan, witness.
Exit codes: 0 success / verdict true, 2 verdict false, 1 runtime error,
64 usage error.  Output is line-delimited JSON unless --csv is given.
Reports are byte-identical for identical configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import buchstab, losses, regions, witness
from .params import SieveParams, default_params, parse_real, validate
from .quadrature import DEFAULT_BUDGETS

SCHEMA_VERSION = 1

_DEFAULTS = default_params()


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_config(path: str) -> tuple[dict[str, str], dict[str, int]]:
    """Flat key=value file with an optional [budgets] section."""
    top: dict[str, str] = {}
    budgets: dict[str, int] = {}
    section = None
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1].strip().lower()
                continue
            if "=" not in line:
                raise UsageError(f"bad config line: {raw.strip()!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if section == "budgets":
                budgets[key] = int(float(value))
            elif section in (None, "params", "run"):
                top[key] = value
            else:
                raise UsageError(f"unknown config section [{section}]")
    return top, budgets


def _build_parser() -> _Parser:
    ap = _Parser(prog="sievebound", description=__doc__)
    ap.add_argument("--config", help="key=value config file with optional [budgets] section")
    ap.add_argument("--sigma", type=parse_real, default=None)
    ap.add_argument("--varpi", type=parse_real, default=None)
    ap.add_argument("--epsilon", type=parse_real, default=None)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--mode", choices=["plain", "stratified"], default=None)
    ap.add_argument("--budget", action="append", default=[], metavar="NAME=N")
    ap.add_argument("--budget-scale", type=float, default=None)
    ap.add_argument("--sa54-strict-descent", action="store_true")
    ap.add_argument("--csv", action="store_true")
    ap.add_argument("--output", default=None, help="write report lines to this path")

    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("omega", help="evaluate omega and its envelopes at u")
    sp.add_argument("u", type=float)

    sp = sub.add_parser("classify", help="classify a base pair (t1, t2)")
    sp.add_argument("t1", type=float)
    sp.add_argument("t2", type=float)

    sp = sub.add_parser("member", help="test membership of a point in a named domain")
    sp.add_argument("domain", choices=list(regions.DOMAIN_NAMES))
    sp.add_argument("coords", type=float, nargs="+")

    sub.add_parser("verify", help="estimate all losses and render the verdict")

    sp = sub.add_parser("scan", help="grid of verify runs over sigma (and varpi)")
    sp.add_argument("--sigma-range", required=True, metavar="A:B:N")
    sp.add_argument("--varpi-range", default=None, metavar="A:B:N")

    sp = sub.add_parser("witness", help="search for witnesses d^2 | (p - a), d^2 >= p^theta")
    sp.add_argument("--a", type=int, default=1)
    sp.add_argument("--d", default="2:200", metavar="MIN:MAX")
    sp.add_argument("--theta", type=float, default=witness.DEFAULT_THETA)
    sp.add_argument("--squarefree-only", action="store_true")

    return ap


def _range_spec(text: str) -> list[float]:
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise UsageError(f"range must be A:B:N, got {text!r}") from None
    if n < 1:
        raise UsageError("range count must be >= 1")
    if n == 1:
        return [a]
    step = (b - a) / (n - 1)
    return [a + i * step for i in range(n)]


def _resolve(args) -> dict:
    """Merge config file values with CLI flags (flags win)."""
    top: dict[str, str] = {}
    budgets: dict[str, int] = {}
    if args.config:
        top, budgets = _read_config(args.config)

    def pick(flag, key, conv, fallback):
        if flag is not None:
            return flag
        if key in top:
            return conv(top[key])
        return fallback

    sigma = pick(args.sigma, "sigma", parse_real, _DEFAULTS.sigma)
    varpi = pick(args.varpi, "varpi", parse_real, _DEFAULTS.varpi)
    epsilon = pick(args.epsilon, "epsilon", parse_real, _DEFAULTS.epsilon)
    seed = int(pick(args.seed, "seed", int, 0))
    mode_word = pick(args.mode, "mode", str, "plain")
    mode = "stratified" if mode_word == "stratified" else "plain_qmc"
    scale = float(pick(args.budget_scale, "budget_scale", float, 1.0))

    for item in args.budget:
        if "=" not in item:
            raise UsageError(f"--budget expects NAME=N, got {item!r}")
        name, _, num = item.partition("=")
        budgets[name.strip()] = int(float(num))
    unknown = set(budgets) - set(regions.DOMAIN_NAMES)
    if unknown:
        raise UsageError(f"unknown budget domain names: {sorted(unknown)}")
    full_budgets = {
        name: max(10_000, int(scale * budgets.get(name, DEFAULT_BUDGETS[name])))
        for name in regions.DOMAIN_NAMES
    }
    return {
        "params": SieveParams(sigma=sigma, varpi=varpi, epsilon=epsilon),
        "seed": seed,
        "mode": mode,
        "budgets": full_budgets,
        "output": pick(args.output, "output", str, None),
    }


def _emit(lines: list[str], output: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _jline(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True)


def _report_lines(report, csv: bool) -> list[str]:
    if not csv:
        d = report.to_dict()
        d["schema_version"] = SCHEMA_VERSION
        return [_jline(d)]
    lines = ["name,dim,estimate,std_err,samples"]
    for name in regions.DOMAIN_NAMES:
        est = report.estimates[name]
        dim = regions.domain(default_params(), name).dim
        lines.append(f"{name},{dim},{est.value!r},{est.std_err!r},{est.samples}")
    lines.append(
        f"total,,{report.total!r},{report.total_err!r},"
        f"{sum(e.samples for e in report.estimates.values())}"
    )
    return lines


def run(argv: list[str]) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    cfg = _resolve(args)
    p = cfg["params"]

    if args.command == "omega":
        u = args.u
        table = losses.table_for(p)
        out = {
            "schema_version": SCHEMA_VERSION,
            "u": u,
            "omega": buchstab.omega(table, u),
            "omega_lower": buchstab.omega_lower(u),
            "omega_upper": buchstab.omega_upper(u),
            "omega_simple_upper": buchstab.omega_simple_upper(u),
        }
        _emit([_jline(out)], cfg["output"])
        return 0

    if args.command == "classify":
        validate(p)
        label = regions.classify_pair(p, args.t1, args.t2)
        _emit(
            [_jline({"schema_version": SCHEMA_VERSION, "t1": args.t1, "t2": args.t2, "class": label})],
            cfg["output"],
        )
        return 0

    if args.command == "member":
        validate(p)
        spec = regions.domain(p, args.domain, sa54_strict_descent=args.sa54_strict_descent)
        if len(args.coords) != spec.dim:
            raise UsageError(
                f"{args.domain} takes {spec.dim} coordinates, got {len(args.coords)}"
            )
        failing = spec.first_failing_clause(*args.coords)
        out = {
            "schema_version": SCHEMA_VERSION,
            "domain": args.domain,
            "coords": args.coords,
            "member": failing is None,
            "first_failing_clause": failing,
        }
        _emit([_jline(out)], cfg["output"])
        return 0

    if args.command == "verify":
        report = losses.verify(
            p,
            budgets=cfg["budgets"],
            seed=cfg["seed"],
            mode=cfg["mode"],
            sa54_strict_descent=args.sa54_strict_descent,
        )
        _emit(_report_lines(report, args.csv), cfg["output"])
        return 0 if report.verdict else 2

    if args.command == "scan":
        sigmas = _range_spec(args.sigma_range)
        varpis = _range_spec(args.varpi_range) if args.varpi_range else [p.varpi]
        reports = losses.scan(
            sigmas,
            varpis,
            epsilon=p.epsilon,
            budgets=cfg["budgets"],
            seed=cfg["seed"],
            mode=cfg["mode"],
        )
        lines = []
        for rep in reports:
            d = rep.to_dict()
            d["schema_version"] = SCHEMA_VERSION
            lines.append(_jline(d))
        _emit(lines if lines else ["{}"], cfg["output"])
        return 0

    if args.command == "witness":
        try:
            d_min, d_max = (int(x) for x in args.d.split(":"))
        except ValueError:
            raise UsageError(f"--d expects MIN:MAX, got {args.d!r}") from None
        records = witness.find_witnesses(
            args.a, d_min, d_max, theta=args.theta, squarefree_only=args.squarefree_only
        )
        lines = [
            _jline({"schema_version": SCHEMA_VERSION, **r.to_dict()}) for r in records
        ]
        if lines:
            _emit(lines, cfg["output"])
        return 0

    raise UsageError(f"unknown command {args.command!r}")  # pragma: no cover


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        return run(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64
    except Exception as exc:  # runtime failures: constraint violations, IO, ...
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
