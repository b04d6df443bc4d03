"""Command-line front end.

Results go to stdout as canonical JSON (or CSV for ``sweep``); logs and
progress bars go to stderr. Exit codes: 0 verified / answered, 1 violation or
infeasible, 2 invalid input.
"""

import argparse
import json
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any

import numpy as np

from .annulus import decay_bound_check, hadamard_check, lyapunov_scan
from .audit import Auditor, ConsoleReporter, HTMLReporter, JSONReporter, default_suite
from .classifier import OperatorKind, ProblemInstance, classify
from .config import DEFAULT_CONFIG, ToolkitConfig
from .counterexamples import drift_witness, h1_witness, h2_witness, singular_h2_witness, zero_order_witness
from .errors import InvalidInputError, WitnessVerificationError
from .logs import configure_logging, log_event
from .profiles import (
    H1,
    H2,
    H3,
    Asymptotic,
    DriftSpec,
    HamiltonianSpec,
    ScaledRadial,
    Zero,
    ZeroOrder,
    default_grid,
    grid_for,
    residual_grid,
)
from .pucci import Ellipticity
from .schema import load_problem, parse_profile_argument
from .sweep import parse_range, run_sweep, write_csv
from .transforms import (
    euclidean_exp_transform_check,
    hopf_cole,
    hopf_cole_chain_check,
    hopf_cole_inv,
    lcp_inequality_check,
    mixquad_chain_check,
    mixquad_limit,
    mixquad_transform,
    power_transform,
    region_transfer_check,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# Canonical output
# ---------------------------------------------------------------------------


def _canonical(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_canonical(v) for v in value]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, float | np.floating):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


def canonical_json(data: Any) -> str:
    """Sorted keys, two-space indent, shortest round-trip floats, non-finite floats as strings."""
    return json.dumps(_canonical(data), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _emit(data: Any) -> None:
    sys.stdout.write(canonical_json(data))


# ---------------------------------------------------------------------------
# Flag decoding
# ---------------------------------------------------------------------------


def _need(value: Any, flag: str) -> Any:
    if value is None:
        raise InvalidInputError(f"{flag} is required here")
    return value


def _required(args: argparse.Namespace, name: str, flag: str) -> Any:
    return _need(getattr(args, name, None), flag)


def _ellipticity(args: argparse.Namespace) -> Ellipticity:
    return Ellipticity(_required(args, "lambda_", "--lambda"), _required(args, "Lambda_", "--Lambda"))


def _drift(args: argparse.Namespace) -> DriftSpec:
    if args.drift_scaled_c is not None:
        return ScaledRadial(args.drift_scaled_c)
    if args.drift_limsup is not None:
        return Asymptotic(args.drift_limsup)
    if args.drift_zero:
        return Zero()
    raise InvalidInputError("h3 needs one of --drift-scaled-c, --drift-limsup or --drift-zero")


def _hamiltonian(args: argparse.Namespace, q: float | None = None, gamma: float | None = None) -> HamiltonianSpec:
    q = args.q if q is None else q
    gamma = args.gamma if gamma is None else gamma
    sigma = args.sigma
    if sigma != 0 and args.ham not in ("h0", "h1"):
        raise InvalidInputError("--sigma weights the reaction of h0 and h1 only")
    if args.ham == "h0":
        return ZeroOrder(_need(q, "--q"), sigma)
    if args.ham == "h3":
        return H3(_need(gamma, "--gamma"), args.A, _drift(args))
    if q is None or gamma is None:
        raise InvalidInputError(f"{args.ham} needs --q and --gamma")
    return H1(q, gamma, sigma) if args.ham == "h1" else H2(q, gamma)


def _instance(args: argparse.Namespace, ham: HamiltonianSpec) -> ProblemInstance:
    N = _required(args, "N", "--N")
    operator = OperatorKind(args.operator)
    if operator is OperatorKind.P_LAPLACIAN:
        return ProblemInstance(N, operator, ham, p=_required(args, "p", "--p"))
    return ProblemInstance(N, operator, ham, _ellipticity(args))


def _drift_choice(kind: str, value: float | None) -> DriftSpec:
    if kind == "zero":
        return Zero()
    if value is None:
        raise InvalidInputError(f"--drift {kind} needs --drift-value")
    return ScaledRadial(value) if kind == "scaled" else Asymptotic(value)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_classify(args: argparse.Namespace, config: ToolkitConfig) -> int:
    verdict = classify(_instance(args, _hamiltonian(args)))
    _emit(verdict.to_dict())
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, config: ToolkitConfig) -> int:
    q_values = parse_range(args.q_range)
    gamma_values = parse_range(args.gamma_range)

    def make_instance(q: float, gamma: float) -> ProblemInstance:
        return _instance(args, _hamiltonian(args, q, gamma))

    rows = run_sweep(make_instance, q_values, gamma_values, verify_witnesses=args.verify_witnesses, config=config)
    if args.output:
        with Path(args.output).open("w", encoding="utf-8", newline="") as f:
            write_csv(rows, f)
    else:
        write_csv(rows, sys.stdout)
    log_event(logger, config, "info", "sweep_finished", f"[Sweep] wrote {len(rows)} rows", rows=len(rows))
    return EXIT_OK


def cmd_counterexample(args: argparse.Namespace, config: ToolkitConfig) -> int:
    ell = _ellipticity(args)
    N = _required(args, "N", "--N")
    if args.sigma != 0 and args.ham not in ("h0", "h1"):
        raise InvalidInputError("--sigma weights the reaction of h0 and h1 only")
    if args.ham == "h0":
        result = zero_order_witness(_required(args, "q", "--q"), ell, N, sigma=args.sigma, config=config)
    elif args.ham == "h1":
        q, gamma = _required(args, "q", "--q"), _required(args, "gamma", "--gamma")
        result = h1_witness(q, gamma, ell, N, sigma=args.sigma, config=config)
    elif args.ham == "h2":
        result = h2_witness(_required(args, "q", "--q"), _required(args, "gamma", "--gamma"), ell, N, config=config)
    elif args.ham == "h2-singular":
        result = singular_h2_witness(_required(args, "gamma", "--gamma"), ell, N, config=config)
    else:
        result = drift_witness(ell, N, _required(args, "delta", "--delta"), config=config)
    _emit(result.to_dict())
    return EXIT_OK if result.feasible else EXIT_VIOLATION


def cmd_verify(args: argparse.Namespace, config: ToolkitConfig) -> int:
    problem = load_problem(args.problem)
    profile = problem.profile.build()
    grid = np.asarray(problem.grid, dtype=float) if problem.grid is not None else grid_for(profile, config)
    report = residual_grid(
        profile, problem.hamiltonian.build(), problem.ellipticity.build(), problem.N, problem.sign, grid
    )
    passed = report.passed(args.tolerance)
    _emit({"passed": passed, "tolerance": args.tolerance, **report.to_dict(include_values=args.values)})
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_monotonic(args: argparse.Namespace, config: ToolkitConfig) -> int:
    profile = parse_profile_argument(args.profile)
    grid = default_grid(config, origin=False)
    report = hadamard_check(profile, args.exponent, grid, config=config)
    data: dict[str, Any] = {"monotonicity": report.to_dict(include_values=args.values)}
    ok = report.nondecreasing
    if args.q is not None:
        bound = decay_bound_check(profile, args.q, grid, config=config)
        data["decay_bound"] = bound.to_dict()
        ok = ok and bound.bounded
    _emit(data)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_lyapunov(args: argparse.Namespace, config: ToolkitConfig) -> int:
    drift = _drift_choice(args.drift, args.drift_value)
    report = lyapunov_scan(drift, _ellipticity(args), _required(args, "N", "--N"), args.r_max, args.sign)
    _emit(report.to_dict())
    return EXIT_OK if report.admissible else EXIT_VIOLATION


def cmd_transform(args: argparse.Namespace, config: ToolkitConfig) -> int:
    kind = args.transform
    if kind == "hopf-cole":
        lam = _required(args, "lambda_", "--lambda")
        if args.inverse:
            v = _required(args, "v", "--v")
            _emit({"v": v, "u": hopf_cole_inv(v, lam), "lambda": lam})
        else:
            u = _required(args, "u", "--u")
            _emit({"u": u, "v": hopf_cole(u, lam), "lambda": lam})
        return EXIT_OK

    if kind == "power":
        triple = power_transform(args.q, args.gamma, args.b)
        data = triple.to_dict()
        if args.lambda_ is not None:
            data["reduced_constant"] = triple.reduced_constant(args.gamma, args.lambda_)
        _emit(data)
        return EXIT_OK

    if kind == "region":
        N = _required(args, "N", "--N")
        result = region_transfer_check(args.q, args.gamma, _ellipticity(args), N, config=config)
        _emit(result.to_dict())
        return EXIT_OK

    if kind == "mixquad":
        lam = _required(args, "lambda_", "--lambda")
        v = mixquad_transform(args.u, args.q, lam)
        _emit({"u": args.u, "q": args.q, "v": v, "limit": mixquad_limit(args.q, lam)})
        return EXIT_OK

    if kind == "lcp":
        holds = lcp_inequality_check(args.u, args.v, args.q)
        _emit({"u": args.u, "v": args.v, "q": args.q, "holds": holds})
        return EXIT_OK if holds else EXIT_VIOLATION

    profile = parse_profile_argument(args.profile)
    drift = _drift_choice(args.drift, args.drift_value)
    grid = grid_for(profile, config)
    N = _required(args, "N", "--N")
    if kind == "chain":
        ell = _ellipticity(args)
        if args.kind == "mixquad":
            report = mixquad_chain_check(profile, drift, ell, N, _required(args, "q", "--q"), grid, args.sign)
        else:
            report = hopf_cole_chain_check(profile, drift, ell, N, grid, args.sign)
        passed = report.passed(config.chain_tolerance)
    else:
        report = euclidean_exp_transform_check(profile, drift, args.f, N, grid)
        passed = report.max_abs <= config.chain_tolerance
    _emit({"passed": passed, "tolerance": config.chain_tolerance, **report.to_dict()})
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_audit(args: argparse.Namespace, config: ToolkitConfig) -> int:
    if args.format == "html" and not args.output:
        raise InvalidInputError("--format html needs --output")
    auditor = Auditor(config)
    results = auditor.run_cases(default_suite(), stop_on_failure=args.stop_on_failure)

    if args.format == "console":
        ConsoleReporter().generate(results)
    elif args.format == "json":
        if args.output:
            JSONReporter().generate(results, args.output)
        else:
            sys.stdout.write(JSONReporter().render(results))
    else:
        HTMLReporter().generate(results, args.output)

    summary = auditor.get_summary(results)
    log_event(
        logger,
        config,
        "info",
        "audit_finished",
        f"[Audit] {summary['passed']}/{summary['total']} cases passed",
        **summary,
    )
    return EXIT_OK if summary["failed"] == 0 else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_ellipticity(p: argparse.ArgumentParser) -> None:
    p.add_argument("--N", type=int, help="Space dimension")
    p.add_argument("--lambda", dest="lambda_", type=float, help="Lower ellipticity constant")
    p.add_argument("--Lambda", dest="Lambda_", type=float, help="Upper ellipticity constant")


def _add_problem(p: argparse.ArgumentParser) -> None:
    _add_ellipticity(p)
    p.add_argument("--p", type=float, help="Exponent of the normalized p-Laplacian (operator plap)")
    p.add_argument("--operator", choices=[k.value for k in OperatorKind], default="plus")
    p.add_argument(
        "--ham",
        choices=["h0", "h1", "h2", "h3"],
        required=True,
        help="h0: u^q, h1: u^q + |Du|^gamma, h2: u^q |Du|^gamma, h3: drift with A |Du|^gamma",
    )
    p.add_argument("--q", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--sigma", type=float, default=0.0, help="Reaction weight (1 + |x|^2)^(sigma/2) for h0 and h1")
    p.add_argument("--A", type=float, default=0.0)
    drift = p.add_mutually_exclusive_group()
    drift.add_argument("--drift-limsup", type=float, help="Only limsup b(x).x is known")
    drift.add_argument("--drift-scaled-c", type=float, help="b(x) = c x / (1 + |x|^2)")
    drift.add_argument("--drift-zero", action="store_true", help="b = 0")


def _add_drift_choice(p: argparse.ArgumentParser) -> None:
    p.add_argument("--drift", choices=["zero", "scaled", "asymptotic"], default="zero")
    p.add_argument("--drift-value", type=float, help="c for scaled, limsup b(x).x for asymptotic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pucci-liouville",
        description="Liouville properties of Pucci extremal operators: classify, build witnesses, verify.",
    )
    parser.add_argument(
        "--log-level", default="WARNING", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
    )
    parser.add_argument("--log-format", default="text", choices=["text", "json", "yaml"])
    parser.add_argument("--log-file", default=None, help="Rotating log file (default: stderr)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="Classify one problem")
    _add_problem(p)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("sweep", help="Classify a (q, gamma) lattice, CSV output")
    _add_problem(p)
    p.add_argument("--q-range", required=True, help="a:b:n")
    p.add_argument("--gamma-range", required=True, help="a:b:n")
    p.add_argument("--verify-witnesses", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--progress", action="store_true", help="Progress bar on stderr")
    p.add_argument("--output", help="CSV path (default: stdout)")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("counterexample", help="Synthesize a verified witness")
    _add_ellipticity(p)
    p.add_argument("--ham", choices=["h0", "h1", "h2", "h2-singular", "drift"], required=True)
    p.add_argument("--q", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--sigma", type=float, default=0.0, help="Reaction weight exponent for h0 and h1")
    p.add_argument("--delta", type=float, help="Decay rate of the drift witness")
    p.set_defaults(handler=cmd_counterexample)

    p = sub.add_parser("verify", help="Residual of a JSON problem file")
    p.add_argument("problem", help="Problem file")
    p.add_argument("--tolerance", type=float, default=DEFAULT_CONFIG.witness_tolerance)
    p.add_argument("--values", action="store_true", help="Include per-radius residuals")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("monotonic", help="Monotonicity of m(R) R^exponent")
    p.add_argument("--profile", required=True, help="Profile JSON, inline or a path")
    p.add_argument("--exponent", type=float, required=True)
    p.add_argument("--q", type=float, help="Also fit m(R) <= C R^(-2/(q-1))")
    p.add_argument("--values", action="store_true")
    p.set_defaults(handler=cmd_monotonic)

    p = sub.add_parser("lyapunov", help="Lyapunov scan for w = -log|x|")
    _add_ellipticity(p)
    _add_drift_choice(p)
    p.add_argument("--r-max", type=float, default=1e6)
    p.add_argument("--sign", choices=["plus", "minus"], default="plus")
    p.set_defaults(handler=cmd_lyapunov)

    p = sub.add_parser("transform", help="Change-of-variable tools")
    tsub = p.add_subparsers(dest="transform", required=True)
    t = tsub.add_parser("hopf-cole")
    t.add_argument("--u", type=float)
    t.add_argument("--v", type=float)
    t.add_argument("--lambda", dest="lambda_", type=float)
    t.add_argument("--inverse", action="store_true")
    t = tsub.add_parser("power")
    t.add_argument("--q", type=float, required=True)
    t.add_argument("--gamma", type=float, required=True)
    t.add_argument("--b", type=float, required=True)
    t.add_argument("--lambda", dest="lambda_", type=float, help="Also report the reduced constant")
    t = tsub.add_parser("region")
    _add_ellipticity(t)
    t.add_argument("--q", type=float, required=True)
    t.add_argument("--gamma", type=float, required=True)
    t = tsub.add_parser("mixquad")
    t.add_argument("--u", type=float, required=True)
    t.add_argument("--q", type=float, required=True)
    t.add_argument("--lambda", dest="lambda_", type=float)
    t = tsub.add_parser("lcp")
    t.add_argument("--u", type=float, required=True)
    t.add_argument("--v", type=float, required=True)
    t.add_argument("--q", type=float, required=True)
    t = tsub.add_parser("chain")
    _add_ellipticity(t)
    _add_drift_choice(t)
    t.add_argument("--profile", required=True)
    t.add_argument("--kind", choices=["hopf-cole", "mixquad"], default="hopf-cole")
    t.add_argument("--q", type=float)
    t.add_argument("--sign", choices=["plus", "minus"], default="plus")
    t = tsub.add_parser("exp")
    _add_drift_choice(t)
    t.add_argument("--profile", required=True)
    t.add_argument("--N", type=int, required=True)
    t.add_argument("--f", type=float, default=0.0, help="Constant zero-order coefficient")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("audit", help="Run the built-in property audit")
    p.add_argument("--format", choices=["console", "json", "html"], default="console")
    p.add_argument("--output")
    p.add_argument("--stop-on-failure", action="store_true")
    p.set_defaults(handler=cmd_audit)

    return parser


def _one_line(error: BaseException) -> str:
    text = str(error).strip().splitlines()
    return text[0] if text else type(error).__name__


def main(argv: list[str] | None = None) -> int:
    """Run the CLI and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 after --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = replace(
            DEFAULT_CONFIG,
            log_level=args.log_level,
            log_format=args.log_format,
            log_file=args.log_file,
            sweep_workers=getattr(args, "workers", 1),
            show_progress=getattr(args, "progress", False),
        )
        configure_logging(config)
        logger.debug(f"[CLI] {args.command}")
        return args.handler(args, config)
    except WitnessVerificationError as e:
        print(f"error: {_one_line(e)}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, OSError) as e:
        # InvalidInputError, DomainError, pydantic ValidationError and JSONDecodeError are ValueErrors
        print(f"error: {_one_line(e)}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
