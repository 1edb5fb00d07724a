"""Command-line front end: solve system descriptions from JSON configs,
sweep parameters to plot-ready CSV, and run randomized verification.

Exit codes: 0 success, 2 parse/usage error, 3 validation error,
1 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import asymptotics
from .core import Component, MatrixPair, MultilinearPoly, ReliabilityError, TransferSystem, single_pass
from .kofn import FAMILY_G, FAMILY_LINCON_F, KofnSpec, build_kofn_g, build_lincon_f, identical_components
from .ladder import (
    LadderCell,
    LadderIdenticalParams,
    LadderSpec,
    TERMINAL_S,
    TERMINAL_T,
    build_ladder,
    entry_cell,
    identical_ladder_spec,
)
from .scalars import APPROX, EXACT, parse_scalar
from .verify import MAX_VERIFY_COMPONENTS, run_equivalence_trials

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3


class ConfigError(ValueError):
    """Malformed config: wrong structure or unparseable field."""


def _require(cfg: dict, key: str, where: str = "config"):
    if key not in cfg:
        raise ConfigError(f"{where}: missing required field {key!r}")
    return cfg[key]


def _parse_component(entry: dict, convention: str, where: str) -> Component:
    if not isinstance(entry, dict):
        raise ConfigError(f"{where}: component entry must be an object")
    cid = _require(entry, "id", where)
    try:
        p = parse_scalar(str(_require(entry, "p", where)))
    except ValueError as exc:
        raise ConfigError(f"{where}: bad p for {cid!r}: {exc}") from exc
    mu = parse_scalar(str(entry["mu"])) if "mu" in entry else None
    try:
        if convention == "steady-state-mu":
            return Component.steady_state(cid, p, mu if mu is not None else 1)
        lam = parse_scalar(str(entry.get("lambda", "0")))
        return Component(cid, p, lam, mu)
    except ReliabilityError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{where}: bad rate for {cid!r}: {exc}") from exc


def _parse_poly(entry, where: str) -> MultilinearPoly:
    """Entry format: list of [coeff_string, [id, ...]] terms."""
    poly = MultilinearPoly.zero()
    if not isinstance(entry, list):
        raise ConfigError(f"{where}: matrix entry must be a list of terms")
    for term in entry:
        coeff = parse_scalar(str(term[0]))
        ids = term[1] if len(term) > 1 else []
        mono = MultilinearPoly.constant(coeff)
        for cid in ids:
            mono = mono * MultilinearPoly.variable(str(cid))
        poly = poly + mono
    return poly


def build_from_config(cfg: dict) -> TransferSystem:
    family = _require(cfg, "family")
    convention = cfg.get("rate_convention", "explicit")
    if convention not in ("explicit", "steady-state-mu"):
        raise ConfigError(f"unknown rate_convention {convention!r}")
    rate_unit = "mu" if convention == "steady-state-mu" else "absolute"

    if family in ("kofn-g", "lincon-f"):
        raw = _require(cfg, "components")
        if not isinstance(raw, list) or not raw:
            raise ReliabilityError("component list must be non-empty")
        comps = tuple(
            _parse_component(e, convention, f"components[{i}]") for i, e in enumerate(raw)
        )
        k = int(_require(cfg, "k"))
        fam = FAMILY_G if family == "kofn-g" else FAMILY_LINCON_F
        spec = KofnSpec(k, comps, family=fam, rate_unit=rate_unit)
        return build_kofn_g(spec) if fam == FAMILY_G else build_lincon_f(spec)

    if family == "ladder":
        terminal = cfg.get("terminal", TERMINAL_T)
        if "cells" in cfg:
            cells = []
            for i, cell_cfg in enumerate(cfg["cells"]):
                where = f"cells[{i}]"
                parts = {
                    key: _parse_component(_require(cell_cfg, key, where), convention, where)
                    for key in (("b", "S", "T") if i == 0 else ("a", "b", "c", "S", "T"))
                }
                if i == 0:
                    cells.append(entry_cell(parts["b"], parts["S"], parts["T"]))
                else:
                    cells.append(LadderCell(index=i, **parts))
            return build_ladder(LadderSpec(tuple(cells), terminal))
        params = LadderIdenticalParams(
            p=parse_scalar(str(_require(cfg, "p"))),
            rho=parse_scalar(str(cfg.get("rho", "1"))),
            lam=parse_scalar(str(cfg.get("lambda", "0"))),
            xi=parse_scalar(str(cfg.get("xi", "0"))),
            n=int(_require(cfg, "n")),
        )
        return build_ladder(identical_ladder_spec(params, terminal))

    if family == "custom-matrices":
        raw = _require(cfg, "components")
        comps = tuple(
            _parse_component(e, convention, f"components[{i}]") for i, e in enumerate(raw)
        )
        rates = {c.id: c.lam for c in comps}
        pairs = tuple(
            MatrixPair.from_matrix(
                tuple(
                    tuple(_parse_poly(e, f"matrices[{i}]") for e in row) for row in m
                ),
                rates,
            )
            for i, m in enumerate(_require(cfg, "matrices"))
        )
        return TransferSystem(
            v_left=tuple(parse_scalar(str(x)) for x in _require(cfg, "v_left")),
            pairs=pairs,
            v_right=tuple(parse_scalar(str(x)) for x in _require(cfg, "v_right")),
            offset=parse_scalar(str(cfg.get("offset", "0"))),
            sign=int(cfg.get("sign", 1)),
            components=comps,
            rate_unit=rate_unit,
            family="custom-matrices",
        )

    raise ConfigError(f"unknown family {family!r}")


def _default_mode() -> str:
    return os.environ.get("RELFREQ_MODE", EXACT)


def cmd_solve(args) -> int:
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except json.JSONDecodeError as exc:
        print(f"error: config is not valid JSON (line {exc.lineno}, col {exc.colno}): {exc.msg}",
              file=sys.stderr)
        return EXIT_PARSE
    try:
        system = build_from_config(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ReliabilityError, ValueError, TypeError, KeyError) as exc:
        print(f"error: invalid system description: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        report = single_pass(system, mode=args.mode)
    except ReliabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    payload = json.dumps(report.as_dict(), indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return EXIT_OK


def _parse_range(text: str, integral: bool):
    try:
        a, b, step = text.split(":")
        if integral:
            a, b, step = int(a), int(b), int(step)
        else:
            a, b, step = float(a), float(b), float(step)
    except ValueError as exc:
        raise ConfigError(f"bad range {text!r}, expected a:b:step") from exc
    if step <= 0 or b < a:
        raise ConfigError(f"bad range {text!r}: need step > 0 and b >= a")
    values = []
    x = a
    eps = step * 1e-9
    while x <= b + eps:
        values.append(x)
        x += step
    return values


def _sweep_point(args, param: str, value):
    """One sweep row: (A, nu_bar, lambda_bar, d_ln_zeta, d_ln_alpha)."""
    fixed = {
        "p": args.p, "rho": args.rho, "n": args.n,
        "lam": args.lam, "xi": args.xi,
    }
    fixed[param] = value
    n = int(fixed["n"])
    if args.family == "kofn-g":
        comps = identical_components(n, _frac(fixed["p"]), lam=_frac(fixed["lam"]))
        system = build_kofn_g(KofnSpec(args.k, comps))
    elif args.family == "lincon-f":
        comps = identical_components(n, _frac(fixed["p"]), lam=_frac(fixed["lam"]))
        system = build_lincon_f(KofnSpec(args.k, comps, family=FAMILY_LINCON_F))
    else:
        params = LadderIdenticalParams(
            float(fixed["p"]), float(fixed["rho"]), float(fixed["lam"]),
            float(fixed["xi"]), n,
        )
        system = build_ladder(identical_ladder_spec(params, args.terminal))
    report = single_pass(system, mode=APPROX)
    row = {
        param: value,
        "A": report.availability,
        "nu_bar": report.frequency,
        "lambda_bar": report.failure_rate if report.failure_rate is not None else "",
    }
    if args.family == "ladder":
        p_val = float(fixed["p"])
        if 0 < p_val < 1 and float(fixed["rho"]) == 1.0:
            d_zeta, d_alpha = asymptotics.log_derivatives(p_val)
            row["dLnZeta"], row["dLnAlpha"] = d_zeta, d_alpha
        else:
            row["dLnZeta"] = row["dLnAlpha"] = ""
    return row


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


def cmd_sweep(args) -> int:
    try:
        values = _parse_range(args.range, integral=(args.param == "n"))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.param == "rho" and args.family != "ladder":
        print("error: rho only applies to the ladder family", file=sys.stderr)
        return EXIT_PARSE
    fieldnames = [args.param, "A", "nu_bar", "lambda_bar"]
    if args.family == "ladder":
        fieldnames += ["dLnZeta", "dLnAlpha"]
    rows = []
    try:
        for v in values:
            rows.append(_sweep_point(args, args.param, v))
    except (ReliabilityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_components > MAX_VERIFY_COMPONENTS:
        print(
            f"error: max-components {args.max_components} exceeds cap {MAX_VERIFY_COMPONENTS}",
            file=sys.stderr,
        )
        return EXIT_PARSE
    result = run_equivalence_trials(
        trials=args.trials,
        max_components=args.max_components,
        seed=args.seed,
        corrupt=args.corrupt,
    )
    if result.ok:
        print(f"verify: {result.trials} randomized instances, all exact matches")
        return EXIT_OK
    m = result.mismatches[0]
    print("verify: MISMATCH")
    print(f"  instance: {m.description}")
    print(f"  quantity: {m.quantity}")
    print(f"  transfer-matrix: {m.matrix_value}")
    print(f"  oracle:          {m.oracle_value}")
    return EXIT_MISMATCH


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relfreq",
        description="Exact availability and failure frequency via transfer matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a JSON system description")
    p_solve.add_argument("config", help="path to JSON config")
    p_solve.add_argument("--mode", choices=[EXACT, APPROX], default=_default_mode())
    p_solve.add_argument("--out", help="write the JSON report here (default stdout)")
    p_solve.set_defaults(func=cmd_solve)

    p_sweep = sub.add_parser("sweep", help="sweep a parameter to CSV")
    p_sweep.add_argument("--family", choices=["kofn-g", "lincon-f", "ladder"], required=True)
    p_sweep.add_argument("--param", choices=["p", "rho", "n"], required=True)
    p_sweep.add_argument("--range", required=True, help="a:b:step")
    p_sweep.add_argument("--out", help="CSV output path (default stdout)")
    p_sweep.add_argument("--k", type=int, default=2)
    p_sweep.add_argument("--n", type=int, default=5)
    p_sweep.add_argument("--p", default="0.9")
    p_sweep.add_argument("--rho", default="1")
    p_sweep.add_argument("--lam", default="1")
    p_sweep.add_argument("--xi", default="0")
    p_sweep.add_argument("--terminal", choices=[TERMINAL_S, TERMINAL_T], default=TERMINAL_T)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="randomized oracle-equivalence check")
    p_verify.add_argument("--max-components", type=int, default=12)
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list] = None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
