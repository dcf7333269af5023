"""Command-line front end.

Reads system-spec JSON files, dispatches the analyses, and prints a
deterministic report in either human-readable text or machine JSON form.
Exit codes are documented in --help and distinguish the failure classes
so scripts can branch on them.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import feedback as fb
from .errors import (
    DegenerateNetworkError,
    ExactnessError,
    HiddenModeConditionError,
    LqsysError,
    NumericalError,
    ParameterError,
    PoleEvaluationError,
    RealizabilityError,
    SpecFileError,
    SubspaceToleranceError,
    SynthesisError,
    UnsolvableError,
)
from .invertibility import classify_left_invertibility, inversion_witness
from .kalman import check_imaginary_hidden_modes, invariant_zeros_via_kalman, kalman_decompose
from .model import check_physical_realizability
from .smith import smith_mcmillan, transfer_matrix_exact, zeros_poles_from_smf
from .spectra import multiset_match
from .specio import load_feedback_spec, load_system_spec
from .zeros import (
    invariant_zeros_flat,
    invariant_zeros_pencil,
    poles,
    transmission_zeros,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_SPEC = 3
EXIT_EXACTNESS = 4
EXIT_REFUSED = 5
EXIT_NUMERICAL = 6
EXIT_DEGENERATE = 7

EXIT_TABLE = f"""\
exit codes:
  {EXIT_OK}  success (report produced; all requested checks passed)
  {EXIT_CHECK_FAILED}  a verification-style check failed (e.g. realizability residuals
     exceed tolerance)
  {EXIT_USAGE}  command-line usage error
  {EXIT_SPEC}  spec file failed to parse or validate
  {EXIT_EXACTNESS}  exact arithmetic requested (or required) but the input has
     floating entries
  {EXIT_REFUSED}  classification refused: the purely-imaginary hidden-mode
     condition does not hold, so the requested criterion is invalid
  {EXIT_NUMERICAL}  numerical failure (evaluation at a pole, unstable rank decision)
  {EXIT_DEGENERATE}  degenerate network, unsolvable or singular synthesis
"""

_SPECTRUM_ENTRY = {"value", "multiplicity"}


def _render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in obj:
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar_text(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                if isinstance(v, dict) and set(v) == _SPECTRUM_ENTRY:
                    lines.append(f"{pad}- {v['value']} (x{v['multiplicity']})")
                else:
                    lines.append(f"{pad}-")
                    lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(v)}")
    else:
        lines.append(f"{pad}{_scalar_text(obj)}")
    return lines if indent else "\n".join(lines)


def _scalar_text(v):
    if isinstance(v, bool) or v is None:
        return {True: "yes", False: "no", None: "none"}[v]
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        from .spectra import format_complex

        return format_complex(obj, 17)
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, float, str)):
        return obj
    return str(obj)


def emit(report, fmt):
    if fmt == "json":
        print(json.dumps(_jsonable(report), sort_keys=True, indent=2))
    else:
        print(_render_text(report))


def _echo(raw):
    """Compact canonical JSON of the parsed input, sufficient to rebuild it."""
    return json.dumps(raw, sort_keys=True, separators=(",", ":"))


def _base_report(command, loaded, tol):
    return {
        "command": command,
        "spec": _echo(loaded.raw),
        "spec_path": str(loaded.path),
        "exact_input": loaded.exact,
        "tol": tol,
        "warnings": [],
    }


def cmd_check(args):
    loaded = load_system_spec(args.spec)
    ss = loaded.state_space()
    rep = check_physical_realizability(ss, args.tol)
    report = _base_report("check", loaded, args.tol)
    report["result"] = rep.to_dict()
    emit(report, args.format)
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


def _zero_method(ss, method, kind, tol):
    if kind == "invariant":
        if method == "pencil":
            return invariant_zeros_pencil(ss, tol)
        if method == "flat":
            return invariant_zeros_flat(ss, tol)
        if method == "theorem":
            return invariant_zeros_via_kalman(ss, tol)
    else:
        if method == "pencil":
            return transmission_zeros(ss, tol)
        if method == "smf":
            zeros_rep, _ = zeros_poles_from_smf(
                smith_mcmillan(transfer_matrix_exact(ss)), tol
            )
            return zeros_rep
    raise ParameterError(f"method {method!r} does not apply to {kind} zeros")


def cmd_zeros(args):
    loaded = load_system_spec(args.spec)
    ss = loaded.state_space()
    report = _base_report("zeros", loaded, args.tol)
    report["kind"] = args.kind
    methods = (
        [args.method]
        if args.method != "all"
        else (["pencil", "flat", "theorem"] if args.kind == "invariant" else ["pencil", "smf"])
    )
    results = {}
    spectra = {}
    for method in methods:
        if method == "smf" and not ss.is_exact:
            if args.method == "all":
                report["warnings"].append(
                    "smf method skipped: input has floating entries"
                )
                continue
            raise ExactnessError("smf method needs exact input entries")
        try:
            rep = _zero_method(ss, method, args.kind, args.tol)
        except (HiddenModeConditionError, RealizabilityError) as e:
            if args.method == "all":
                report["warnings"].append(f"{method} method refused: {e}")
                continue
            raise
        spectra[method] = rep
        results[method] = rep.to_dict()
    report["results"] = results
    if len(spectra) > 1:
        names = sorted(spectra)
        disc = 0.0
        agree = True
        base = spectra[names[0]]
        for other_name in names[1:]:
            pairs = multiset_match(
                base.expand(), spectra[other_name].expand(), max(args.tol * 100, 1e-7)
            )
            if pairs is None:
                agree = False
            else:
                disc = max([disc] + [abs(a - b) for a, b in pairs])
        report["cross_check"] = {"agree": agree, "max_discrepancy": disc}
        emit(report, args.format)
        return EXIT_OK if agree else EXIT_CHECK_FAILED
    emit(report, args.format)
    return EXIT_OK


def cmd_poles(args):
    loaded = load_system_spec(args.spec)
    ss = loaded.state_space()
    report = _base_report("poles", loaded, args.tol)
    if args.exact:
        if not ss.is_exact:
            raise ExactnessError("--exact requires exact input entries")
        _, pole_rep = zeros_poles_from_smf(
            smith_mcmillan(transfer_matrix_exact(ss)), args.tol
        )
    else:
        pole_rep = poles(ss, args.tol)
    report["result"] = pole_rep.to_dict()
    emit(report, args.format)
    return EXIT_OK


def cmd_smf(args):
    loaded = load_system_spec(args.spec)
    ss = loaded.state_space()
    if not ss.is_exact:
        raise ExactnessError(
            "Smith-McMillan form needs exact input entries (use '3/4'-style "
            "strings or integers in the spec file)"
        )
    g = transfer_matrix_exact(ss)
    smf = smith_mcmillan(g)
    zeros_rep, poles_rep = zeros_poles_from_smf(smf, args.tol)
    report = _base_report("smf", loaded, args.tol)
    report["transfer_matrix"] = [[str(e) for e in row] for row in g.entries]
    report["result"] = smf.to_dict()
    report["transmission_zeros"] = zeros_rep.to_dict()
    report["poles"] = poles_rep.to_dict()
    emit(report, args.format)
    return EXIT_OK


def cmd_kalman(args):
    loaded = load_system_spec(args.spec)
    ss = loaded.state_space()
    kal = kalman_decompose(ss, args.tol)
    hm = check_imaginary_hidden_modes(kal, args.tol, args.real_part_tol)
    report = _base_report("kalman", loaded, args.tol)
    report["result"] = kal.to_dict()
    report["hidden_modes"] = hm.to_dict()
    emit(report, args.format)
    return EXIT_OK


def cmd_invert(args):
    loaded = load_system_spec(args.spec)
    ss = loaded.state_space()
    rep = classify_left_invertibility(ss, args.tol)
    samples = [0.3 + 0.7j, 1.1 - 0.4j, 2.2 + 0.1j]
    witness = inversion_witness(ss, samples, max(args.tol, 1e-8))
    report = _base_report("invert", loaded, args.tol)
    report["result"] = rep.to_dict()
    report["inversion_witness"] = witness.to_dict()
    emit(report, args.format)
    return EXIT_OK


def _parse_sweep(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ParameterError("--sweep wants from:to:points")
    try:
        lo, hi, pts = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise ParameterError(f"bad --sweep value: {e}") from e
    return lo, hi, pts


def cmd_feedback(args):
    plant, plant_raw = load_feedback_spec(args.plant)
    controller, controller_raw = load_feedback_spec(args.controller)
    report = {
        "command": "feedback",
        "plant": _echo(plant_raw),
        "controller": _echo(controller_raw),
        "warnings": [],
    }
    g_q, g_p = fb.quadrature_transfer(plant)
    k_q, k_p = fb.quadrature_transfer(controller)
    report["plant_transfer"] = {"G_q": str(g_q), "G_p": str(g_p)}
    report["controller_transfer"] = {"K_q": str(k_q), "K_p": str(k_p)}
    report["duality"] = {
        "plant": fb.check_quadrature_duality(g_q, g_p),
        "controller": fb.check_quadrature_duality(k_q, k_p),
    }

    alpha = None
    if args.solve_alpha:
        sol = fb.solve_alpha_for_squeezing(plant, controller, args.solve_alpha)
        report["alpha_solution"] = sol.to_dict()
        report["alpha_solution"]["quadrature"] = args.solve_alpha
        if sol.physical:
            alpha = sol.alpha
        else:
            report["warnings"].append(
                f"solved alpha {sol.raw} is not a physical beamsplitter "
                "(|alpha| > 1); no closed loop computed"
            )
    elif args.alpha is not None:
        alpha = Fraction(args.alpha)

    if args.synthesize:
        if alpha is None:
            raise ParameterError("--synthesize needs --alpha (or a physical --solve-alpha)")
        sign = "-" if args.synthesize in ("-", "minus") else "+"
        controller = fb.matched_controller(plant, alpha, sign)
        report["synthesized_controller"] = {
            "omega_plus": str(controller.omega_plus),
            "c_q": str(controller.c_q),
            "c_p": str(controller.c_p),
            "sign": sign,
        }

    if alpha is not None:
        net = fb.FeedbackNetwork(plant, controller, fb.Beamsplitter.create(alpha))
        t_q, t_p = fb.closed_loop(net)
        if t_q.is_one() and t_p.is_one():
            report["warnings"].append(
                "degenerate mirror: closed loop is identically 1 at both quadratures"
            )
        report["alpha"] = str(Fraction(alpha))
        report["closed_loop"] = {
            "T_q": str(t_q),
            "T_p": str(t_p),
            "duality": fb.check_quadrature_duality(t_q, t_p),
        }
        report["squeezing_residuals"] = {
            "q": str(fb.squeezing_residual(net, "q")),
            "p": str(fb.squeezing_residual(net, "p")),
        }
        if args.sweep:
            lo, hi, pts = _parse_sweep(args.sweep)
            rows = fb.frequency_sweep(net, lo, hi, pts)
            out = args.sweep_out or "-"
            if out == "-":
                fb.write_sweep_csv(rows, sys.stdout)
            else:
                with open(out, "w") as fh:
                    fb.write_sweep_csv(rows, fh)
                report["sweep_csv"] = out
    elif args.sweep:
        raise ParameterError("--sweep needs a closed loop; give --alpha or --solve-alpha")

    emit(report, args.format)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lqsys",
        description=(
            "Analyze linear quantum systems: physical realizability, "
            "invariant/transmission zeros, poles, Smith-McMillan forms, "
            "Kalman decompositions, left invertibility, and SISO coherent "
            "feedback networks."
        ),
        epilog=EXIT_TABLE,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, exact_flag=False):
        p.add_argument("--tol", type=float, default=1e-9, help="tolerance (default 1e-9)")
        p.add_argument(
            "--format", choices=("text", "json"), default="text",
            help="report format (json is the machine format)",
        )
        if exact_flag:
            p.add_argument(
                "--exact", action="store_true",
                help="require exact arithmetic; error on floating input",
            )

    p = sub.add_parser("check", help="physical-realizability residuals")
    p.add_argument("spec")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("zeros", help="invariant or transmission zeros")
    p.add_argument("spec")
    p.add_argument("--kind", choices=("invariant", "transmission"), default="invariant")
    p.add_argument(
        "--method",
        choices=("pencil", "flat", "smf", "theorem", "all"),
        default="pencil",
        help=(
            "pencil: Rosenbrock pencil eigenvalues; flat: eigenvalues of the "
            "negated flat/sharp adjoint (realizable systems only); smf: exact "
            "Smith-McMillan numerators (transmission, exact input); theorem: "
            "Kalman observable/unobservable split (needs purely imaginary "
            "hidden modes); all: cross-check every applicable method"
        ),
    )
    common(p)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("poles", help="pole multiset of the transfer matrix")
    p.add_argument("spec")
    common(p, exact_flag=True)
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("smf", help="exact Smith-McMillan form (exact input only)")
    p.add_argument("spec")
    common(p)
    p.set_defaults(func=cmd_smf)

    p = sub.add_parser("kalman", help="four-block Kalman decomposition")
    p.add_argument("spec")
    p.add_argument(
        "--real-part-tol", type=float, default=1e-8,
        help="|Re| threshold for 'purely imaginary' hidden modes (default 1e-8)",
    )
    common(p)
    p.set_defaults(func=cmd_kalman)

    p = sub.add_parser("invert", help="left-invertibility classification")
    p.add_argument("spec")
    common(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("feedback", help="SISO coherent feedback analysis")
    p.add_argument("plant", help="plant feedback-spec JSON")
    p.add_argument("controller", help="controller feedback-spec JSON")
    p.add_argument("--alpha", help="beamsplitter parameter (rational, e.g. 1/4)")
    p.add_argument(
        "--solve-alpha", choices=("q", "p"), default=None,
        help="solve the ideal-squeezing condition for alpha at this quadrature",
    )
    p.add_argument(
        "--synthesize", choices=("+", "-", "plus", "minus"), default=None,
        help="synthesize a matched controller ('-' targets q, '+' targets p)",
    )
    p.add_argument("--sweep", help="frequency sweep from:to:points (log spaced)")
    p.add_argument("--sweep-out", help="CSV output path ('-' for stdout)")
    common(p)
    p.set_defaults(func=cmd_feedback)

    return parser


_ERROR_EXITS = (
    (SpecFileError, EXIT_SPEC),
    (ExactnessError, EXIT_EXACTNESS),
    (HiddenModeConditionError, EXIT_REFUSED),
    (RealizabilityError, EXIT_REFUSED),
    ((PoleEvaluationError, SubspaceToleranceError, NumericalError), EXIT_NUMERICAL),
    (
        (DegenerateNetworkError, UnsolvableError, SynthesisError),
        EXIT_DEGENERATE,
    ),
    (ParameterError, EXIT_USAGE),
)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LqsysError as e:
        for klass, code in _ERROR_EXITS:
            if isinstance(e, klass):
                print(f"error: {e}", file=sys.stderr)
                return code
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
