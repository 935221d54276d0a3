"""Command line front end.

Usage::

    wstar analyze --input a.json [--c0-override "2"] [--epsilon 0.1]
    wstar pairing --lambdas "0.5,0.25,0.125,0.0625" --epsilon 0.6
    wstar ideals --shape "2,2,1" --ideal-i "1" --ideal-j "1,2" [--exhaustive]
    wstar oracle --input a.json [--c "3"] [--samples 1000] [--seed 42]

Block indices on the command line and in reports are 1-based.

Exit codes:
    0 - every check verified
    1 - a mathematical check failed
    2 - bad input or usage
"""

import argparse
import itertools
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .algebra import DEFAULT_TOL, AlgebraShape, make_central
from .builder import build_pairing_unitary, build_u0, oracle_best_permutation
from .central import c0_compute, median_interval, p0_certificate
from .derivations import BlockIdealSpec, calkin_check, epsilon_bound_check, hoffman_check, sakai_check
from .errors import PairingInfeasible, WStarError
from .io import central_from_json, element_to_json, load_element

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
COMMANDS = ("analyze", "pairing", "ideals", "oracle")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Optional[str] = None
    tol: float = DEFAULT_TOL
    epsilon: float = 0.1
    seed: int = 42
    samples: int = 1000
    output_path: Optional[str] = None
    format: str = "json"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise UsageError("tol must be positive")
        if not 0 <= self.epsilon < 1:
            raise UsageError("epsilon must lie in [0, 1)")
        if self.samples < 1:
            raise UsageError("samples must be >= 1")
        if self.format not in ("json", "text"):
            raise UsageError("format must be json or text")

    def to_json(self) -> dict:
        # output_path is left out so reports do not depend on where they are written.
        return {"command": self.command, "input_path": self.input_path, "tol": self.tol,
                "epsilon": self.epsilon, "seed": self.seed, "samples": self.samples,
                "format": self.format}


def _default_tol():
    env = os.environ.get("WSTAR_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError:
        raise UsageError(f"WSTAR_TOL is not a number: {env!r}")


def _parse_floats(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}")


def _parse_indices(text, n_blocks):
    if text is None:
        raise UsageError("missing ideal specification")
    try:
        idx = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated block indices, got {text!r}")
    bad = [k for k in idx if not 1 <= k <= n_blocks]
    if bad:
        raise UsageError(f"block indices {bad} out of range 1..{n_blocks}")
    return frozenset(k - 1 for k in idx)


def _parse_central(text, shape):
    if text is None:
        return None
    path = Path(text)
    if text.endswith(".json") and path.exists():
        with path.open() as fh:
            return central_from_json(json.load(fh), shape)
    values = _parse_floats(text)
    if len(values) == 1:
        values = values * shape.n_blocks
    if len(values) != shape.n_blocks:
        raise UsageError(f"need {shape.n_blocks} central scalars, got {len(values)}")
    return make_central(shape, values)


def _reals(c):
    return [0.0 + float(v) for v in c.scalars.real]


def _report(config, results, residuals, passed):
    return {"command": config.command, "config": config.to_json(), "results": results,
            "residuals": residuals, "passed": bool(passed), "version": __version__}


def run_analyze(config, c_override=None):
    a = load_element(config.input_path, config.tol)
    c0 = c0_compute(a, config.tol)
    cert = p0_certificate(a, config.tol)
    c = _parse_central(c_override, a.shape) or c0
    rep = build_u0(a, c, config.tol, epsilon=config.epsilon)
    eps = epsilon_bound_check(a, config.epsilon, config.tol)
    residuals = {"equality": rep.equality_residual,
                 "involution": rep.involution_residual,
                 "unitarity": rep.unitarity_residual}
    results = {
        "c0": _reals(c0),
        "c_used": _reals(c),
        "median_interval": [list(iv) for iv in median_interval(a, config.tol)],
        "p0_certificate": {"q_rank": list(cert.q_rank), "r_rank": list(cert.r_rank),
                           "counts": [list(t) for t in cert.counts]},
        "unitary": element_to_json(rep.unitary),
        "lhs": element_to_json(rep.lhs),
        "epsilon_bound": {"epsilon": eps.epsilon, "passed": eps.passed, "margin": eps.margin},
    }
    passed = all(v <= config.tol for v in residuals.values()) and eps.passed
    return _report(config, results, residuals, passed)


def run_pairing(config, lambdas_text):
    lambdas = _parse_floats(lambdas_text)
    if not 0 < config.epsilon < 1:
        raise UsageError("pairing needs epsilon in (0, 1)")
    try:
        res = build_pairing_unitary(lambdas, config.epsilon, config.tol)
        infeasible = False
    except PairingInfeasible as exc:
        res = exc.result
        infeasible = True
    margin = res.report.epsilon_bound_margin
    results = {
        "lambdas": list(res.lambdas),
        "pairs": [[i + 1, m + 1] for i, m in res.pairs],
        "unpaired": [i + 1 for i in res.unpaired],
        "infeasible": infeasible,
        "lhs_diagonal": [0.0 + float(v) for v in np.diag(res.report.lhs.blocks[0]).real],
    }
    passed = not infeasible and margin is not None and margin >= -config.tol
    return _report(config, results, {"epsilon_margin": margin}, passed)


def run_ideals(config, shape_text, ideal_i, ideal_j, exhaustive):
    dims = [int(v) for v in _parse_floats(shape_text)]
    try:
        shape = AlgebraShape(tuple(dims))
    except WStarError as exc:
        raise UsageError(str(exc))
    k = shape.n_blocks
    if exhaustive:
        subsets = [frozenset(s) for r in range(k + 1) for s in itertools.combinations(range(k), r)]
        pairs = list(itertools.product(subsets, subsets))
        ideals = subsets
    else:
        i, j = _parse_indices(ideal_i, k), _parse_indices(ideal_j, k)
        pairs, ideals = [(i, j)], [i]
    hoffman = []
    for i, j in pairs:
        ok, _ = hoffman_check(BlockIdealSpec(shape, i), BlockIdealSpec(shape, j))
        hoffman.append({"I": sorted(x + 1 for x in i), "J": sorted(x + 1 for x in j),
                        "passed": ok})
    calkin = [{"I": sorted(x + 1 for x in i), "passed": calkin_check(BlockIdealSpec(shape, i))}
              for i in ideals]
    passed = all(h["passed"] for h in hoffman) and all(c["passed"] for c in calkin)
    results = {"shape": dims, "hoffman": hoffman, "calkin": calkin,
               "hoffman_pairs": len(hoffman), "calkin_ideals": len(calkin)}
    failures = sum(not h["passed"] for h in hoffman) + sum(not c["passed"] for c in calkin)
    return _report(config, results, {"failures": failures}, passed)


def run_oracle(config, c_text=None):
    a = load_element(config.input_path, config.tol)
    c = _parse_central(c_text, a.shape) or c0_compute(a, config.tol)
    oracle = oracle_best_permutation(a, c, config.tol)
    sakai = sakai_check(a, config.samples, config.seed, config.tol)
    results = {
        "c": _reals(c),
        "best_perms": [[p + 1 for p in perm] for perm in oracle.best_perms],
        "exists": list(oracle.exists),
        "achieved": oracle.achieved,
        "sakai": {"delta_norm_lower": sakai.delta_norm_lower, "dist": sakai.dist,
                  "passed": sakai.passed},
    }
    residuals = {"oracle": list(oracle.residuals),
                 "sakai_gap": sakai.delta_norm_lower - sakai.dist}
    return _report(config, results, residuals, oracle.achieved and sakai.passed)


def render_text(report) -> str:
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict) and not ("blocks" in value and "shape" in value):
            for key, sub in value.items():
                walk(f"{prefix}.{key}" if prefix else key, sub)
        elif isinstance(value, dict):
            lines.append(f"{prefix}: <element shape={value['shape']}>")
        else:
            lines.append(f"{prefix}: {value}")

    walk("", report)
    lines.append("PASSED" if report["passed"] else "FAILED")
    return "\n".join(lines) + "\n"


def dump_report(report, fmt="json") -> str:
    if fmt == "text":
        return render_text(report)
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="absolute tolerance (default 1e-9 or $WSTAR_TOL)")
    common.add_argument("--epsilon", type=float, default=0.1)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="wstar", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="c0, median interval and u0 for an element")
    p.add_argument("--input", required=True)
    p.add_argument("--c0-override", default=None,
                   help="central scalars (comma list, one value broadcast) or a JSON file")

    p = sub.add_parser("pairing", parents=[common], help="epsilon pairing of a decreasing sequence")
    p.add_argument("--lambdas", required=True)

    p = sub.add_parser("ideals", parents=[common], help="Hoffman and Calkin identities for ideals")
    p.add_argument("--shape", required=True)
    p.add_argument("--ideal-i", default=None)
    p.add_argument("--ideal-j", default=None)
    p.add_argument("--exhaustive", action="store_true")

    p = sub.add_parser("oracle", parents=[common], help="brute-force permutations and Sakai bounds")
    p.add_argument("--input", required=True)
    p.add_argument("--c", default=None, help="center to test (default c0)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = args.tol if args.tol is not None else _default_tol()
        config = RunConfig(command=args.command, input_path=getattr(args, "input", None),
                           tol=tol, epsilon=args.epsilon, seed=args.seed,
                           samples=args.samples, output_path=args.output, format=args.format)
        if args.command == "analyze":
            report = run_analyze(config, args.c0_override)
        elif args.command == "pairing":
            report = run_pairing(config, args.lambdas)
        elif args.command == "ideals":
            report = run_ideals(config, args.shape, args.ideal_i, args.ideal_j, args.exhaustive)
        else:
            report = run_oracle(config, args.c)
    except (UsageError, WStarError, OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = dump_report(report, config.format)
    if config.output_path:
        Path(config.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["passed"] else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
