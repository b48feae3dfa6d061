"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 input or parse error,
3 dimension error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import comb, filters, monotones, qstate, slocc
from .errors import DimensionError, InvalidStateError, TangleError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DIM = 0, 1, 2, 3


@dataclass
class RunConfig:
    tol: float = 1e-10
    trials: int = 500
    seed: int = 0
    output_format: str = "text"
    sl_tol: float = 1e-8
    states: int = 5

    def __post_init__(self):
        if not self.tol > 0 or not self.sl_tol > 0:
            raise ValueError("tolerances must be positive")
        if self.trials < 1 or self.states < 1:
            raise ValueError("trials and states must be >= 1")


def _fmt(x: float) -> str:
    return f"{x:.9f}"


def _fmt_c(z: complex) -> str:
    return f"{z.real:.9f}{z.imag:+.9f}j"


def _emit(record: dict, lines: list[str], cfg: RunConfig, out) -> None:
    if cfg.output_format == "json":
        print(json.dumps(record), file=out)
    else:
        print("\n".join(lines), file=out)


def _load(args) -> tuple[qstate.PureState, str]:
    if args.catalog:
        return qstate.catalog_state(args.catalog), args.catalog.upper()
    if not args.state_file:
        raise InvalidStateError("give a state file or --catalog NAME")
    return qstate.load_state(args.state_file), str(args.state_file)


def _load_filter(name_or_file: str) -> filters.FilterSpec:
    if name_or_file.upper() in filters.BUILTIN_NAMES:
        return filters.builtin(name_or_file)
    path = Path(name_or_file)
    if not path.exists():
        raise filters.FilterSpecError(
            f"{name_or_file!r} is neither a built-in ({', '.join(filters.BUILTIN_NAMES)}) nor a file"
        )
    return filters.load_filter(path)


def cmd_eval(args, cfg: RunConfig, out) -> int:
    state, label = _load(args)
    f = _load_filter(args.filter)
    fv = filters.evaluate(f, state)
    record = {"command": "eval", "filter": f.name, "state": label, **fv.to_dict()}
    lines = [
        f"filter   {f.name}  {filters.format_filter(f)}",
        f"state    {label}",
        f"value    {_fmt_c(fv.complex_value)}",
        f"modulus  {_fmt(fv.modulus)}",
        f"phase    {_fmt(fv.phase)}",
    ]
    _emit(record, lines, cfg, out)
    return EXIT_OK


def cmd_monotone(args, cfg: RunConfig, out) -> int:
    state, label = _load(args)
    res = monotones.compute(args.measure, state)
    record = {"command": "monotone", "state": label, **res.to_dict()}
    lines = [f"{res.measure}  {_fmt(res.value)}"]
    if res.terms is not None:
        t = res.terms
        lines += [
            f"d1  {_fmt_c(t.d1)}",
            f"d2  {_fmt_c(t.d2)}",
            f"d3  {_fmt_c(t.d3)}",
            f"|d1 - 2 d2 + 4 d3|  {_fmt(t.raw_modulus)}",
        ]
    _emit(record, lines, cfg, out)
    return EXIT_OK


def _suite_combs(cfg: RunConfig) -> list[dict]:
    checks = []
    r = comb.verify_comb_order1("Y", cfg.trials, cfg.seed, cfg.tol)
    checks.append({"check": "comb order1 Y", "max": r.max_abs, "passed": r.passed, "tol": cfg.tol})
    r = comb.verify_comb_order2(cfg.trials, cfg.seed, cfg.tol)
    checks.append({"check": "comb order2 metric", "max": r.max_abs, "passed": r.passed, "tol": cfg.tol})
    reports = comb.verify_parity_theorem(3, cfg.trials, cfg.seed, cfg.tol)
    bad = [r.pauli_string for r in reports if not r.consistent]
    checks.append(
        {
            "check": f"parity rule, {len(reports)} strings up to 3 qubits",
            "max": float(len(bad)),
            "passed": not bad,
            "disagreements": bad,
        }
    )
    return checks


def _suite_filters(cfg: RunConfig) -> list[dict]:
    checks = []
    for name in filters.BUILTIN_NAMES:
        r = filters.nullity_suite(filters.builtin(name), cfg.trials, cfg.seed, cfg.tol)
        checks.append(
            {
                "check": f"product nullity {name}",
                "max": r.max_modulus,
                "passed": r.passed,
                "tol": cfg.tol,
                "per_partition": r.per_partition,
            }
        )
    return checks


def _suite_invariance(cfg: RunConfig) -> list[dict]:
    checks = []
    rng = qstate.make_rng(cfg.seed)
    for name in filters.BUILTIN_NAMES:
        f = filters.builtin(name)
        for mode, tol in (("SL", cfg.sl_tol), ("SU", cfg.tol)):
            worst = 0.0
            for _ in range(cfg.states):
                state = qstate.random_haar_state(f.n_qubits, rng)
                r = slocc.invariance_check(f, state, mode, cfg.trials, rng, tol)
                worst = max(worst, r.max_deviation)
            checks.append(
                {"check": f"{mode} invariance {name}", "max": worst, "passed": worst < tol, "tol": tol}
            )
    return checks


SUITES = {"combs": _suite_combs, "filters": _suite_filters, "invariance": _suite_invariance}


def cmd_verify(args, cfg: RunConfig, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = []
    for name in names:
        for c in SUITES[name](cfg):
            checks.append({"suite": name, **c})
    passed = all(c["passed"] for c in checks)
    record = {
        "command": "verify",
        "suite": args.suite,
        "tol": cfg.tol,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "passed": passed,
        "checks": checks,
    }
    lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['check']:<40s} max {c['max']:.3e}" for c in checks]
    lines.append(f"{'ALL PASS' if passed else 'FAILED'} ({sum(c['passed'] for c in checks)}/{len(checks)})")
    _emit(record, lines, cfg, out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_classify(args, cfg: RunConfig, out) -> int:
    state, label = _load(args)
    sig = slocc.classify4(state, args.zero_tol)
    record = {"command": "classify", "state": label, **sig.to_dict()}
    lines = [
        "F4_1 F4_2 F4_3  " + " ".join(_fmt(v) for v in sig.values),
        "zero flags      " + " ".join(str(z) for z in sig.zero_flags),
        f"label           {sig.label}",
    ]
    _emit(record, lines, cfg, out)
    return EXIT_OK


def cmd_reduce(args, cfg: RunConfig, out) -> int:
    state, label = _load(args)
    rho = qstate.partial_trace(qstate.density_matrix(state), args.keep)
    m = rho.matrix
    record = {
        "command": "reduce",
        "state": label,
        "keep": sorted(set(args.keep)),
        "matrix": [[[z.real, z.imag] for z in row] for row in m],
    }
    lines = [f"reduced density matrix on qubits {sorted(set(args.keep))}:"]
    lines += ["  " + "  ".join(_fmt_c(z) for z in row) for row in m]
    if rho.n_qubits == 2:
        c = monotones.wootters_concurrence(rho)
        record["wootters_concurrence"] = c
        lines.append(f"wootters_concurrence  {_fmt(c)}")
    _emit(record, lines, cfg, out)
    return EXIT_OK


def _default_seed() -> int:
    env = os.environ.get("TANGLEKIT_SEED")
    return int(env) if env else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10, help="nullity / SU tolerance (default 1e-10)")
    common.add_argument("--sl-tol", type=float, default=1e-8, help="SL invariance tolerance (default 1e-8)")
    common.add_argument("--trials", type=int, default=500)
    common.add_argument("--states", type=int, default=5, help="random states per filter in the invariance suite")
    common.add_argument("--seed", type=int, default=_default_seed())
    common.add_argument("--format", choices=("text", "json"), default="text", dest="output_format")

    state_args = argparse.ArgumentParser(add_help=False)
    state_args.add_argument("--catalog", metavar="NAME", help="use a built-in state: " + ", ".join(qstate.catalog_names()))

    p = argparse.ArgumentParser(prog="tanglekit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common, state_args], help="evaluate a filter on a state")
    e.add_argument("filter", help="built-in name or filter file")
    e.add_argument("state_file", nargs="?")
    e.set_defaults(func=cmd_eval)

    m = sub.add_parser("monotone", parents=[common, state_args], help="concurrence or 3-tangle")
    m.add_argument("measure", choices=monotones.MEASURES)
    m.add_argument("state_file", nargs="?")
    m.set_defaults(func=cmd_monotone)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", choices=("combs", "filters", "invariance", "all"))
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", parents=[common, state_args], help="four-qubit filter signature")
    c.add_argument("state_file", nargs="?")
    c.add_argument("--zero-tol", type=float, default=slocc.ZERO_TOL)
    c.set_defaults(func=cmd_classify)

    r = sub.add_parser("reduce", parents=[common, state_args], help="reduced density matrix")
    r.add_argument("state_file", nargs="?")
    r.add_argument("--keep", type=int, nargs="+", required=True)
    r.set_defaults(func=cmd_reduce)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.tol, args.trials, args.seed, args.output_format, args.sl_tol, args.states)
        return args.func(args, cfg, out)
    except DimensionError as exc:
        print(f"tanglekit: dimension error: {exc}", file=sys.stderr)
        return EXIT_DIM
    except (TangleError, KeyError, ValueError, OSError) as exc:
        print(f"tanglekit: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
