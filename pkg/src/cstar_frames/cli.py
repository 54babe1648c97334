"""Command-line front end: analyze, construct, perturb, weave, dual.

Exit codes are fixed so scripts can branch on them:

    0  success
    2  file parse or validation error
    3  dimension mismatch between operands
    4  invalid flags
    5  partition enumeration cap exceeded
    6  input is not a frame

Reports are printed as plain text or canonical JSON (sorted keys,
two-space indent); apart from the "timing" field, identical inputs give
byte-identical JSON.  The worker count for weaving enumeration is taken
from the CSTAR_FRAMES_THREADS environment variable (default 1).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .constructors import (
    CompactTightCert,
    ScalarProfile,
    profile_frame,
    repetition_frame,
)
from .decomposition import (
    bessel_bound,
    deviation_certificate,
    decomposition_diagnostics,
    dual_decomposition,
    frame_lower_bound,
    perturbed_frame_bounds,
    shift_decompose,
)
from .errors import (
    FrameFileError,
    InconsistentDecompositionError,
    LengthMismatchError,
    NotAFrameError,
    ShapeMismatchError,
    SingularMatrixError,
    TooManyPartitionsError,
)
from .frame_io import (
    load_frame,
    save_frame,
    save_partition,
)
from .frames import dual_frame, optimal_bounds, perturbation_distance
from .linalg import hermitian_eigen
from .module_space import ModuleOperator, ModuleShape
from .weaving import (
    DEFAULT_PARTITION_CAP,
    adversarial_scenario,
    universal_bounds,
    weaving_operator,
)

THREADS_ENV = "CSTAR_FRAMES_THREADS"


class UsageError(Exception):
    """Flag-level misuse; mapped to exit code 4."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _workers_from_env() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    if value < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def _parse_profile_spec(spec: str, xi: float = 0.0) -> ScalarProfile:
    """Parse 'kind:c', 'geometric:c:r', or 'power:c:p' with a fixed limit."""
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind in ("gaussian",) and len(parts) == 2:
            return ScalarProfile(kind=kind, xi=xi, c=float(parts[1]))
        if kind == "geometric" and len(parts) == 3:
            return ScalarProfile(kind=kind, xi=xi, c=float(parts[1]), r=float(parts[2]))
        if kind == "power" and len(parts) == 3:
            return ScalarProfile(kind=kind, xi=xi, c=float(parts[1]), p=float(parts[2]))
    except ValueError as exc:
        raise UsageError(f"bad profile spec {spec!r}: {exc}")
    raise UsageError(
        f"bad profile spec {spec!r}; expected gaussian:c, geometric:c:r, or power:c:p"
    )


def _bounds_dict(bounds) -> dict:
    return {
        "lower": bounds.lower,
        "upper": bounds.upper,
        "tight": bounds.tight,
        "isFrame": bounds.is_frame,
        "isBessel": bounds.is_bessel,
    }


def _part_dict(part) -> dict:
    out = {"applicable": part.applicable, "holds": part.holds}
    if part.slack is not None:
        out["slack"] = part.slack
    return out


def cmd_analyze(args) -> dict:
    started = time.perf_counter()
    loaded = load_frame(args.file)
    system = loaded.system
    bounds = optimal_bounds(system, args.tol)
    report = {
        "file": str(args.file),
        "shape": {"d": system.shape.d, "n": system.shape.n},
        "vectors": len(system),
        "bounds": _bounds_dict(bounds),
    }
    if loaded.certificate is not None:
        cert = loaded.certificate
        report["certificate"] = {
            "valid": True,
            "xi": cert.xi,
            "kind": cert.profile.kind if cert.profile is not None else "explicit",
            "declaredLimit": cert.declared_limit,
        }
    if args.xi is not None:
        dec = shift_decompose(system, args.xi)
        diag = decomposition_diagnostics(system, args.xi, args.tol)
        decomposition = {
            "xi": args.xi,
            "besselBound": bessel_bound(dec),
            "parts": {
                "positiveShiftImpliesFrame": _part_dict(diag.frame_from_positivity),
                "selfAdjoint": _part_dict(diag.self_adjointness),
                "lowerBoundImpliesPositive": _part_dict(
                    diag.positivity_from_lower_bound
                ),
            },
            "allPartsHold": diag.all_hold,
        }
        if args.eta is not None:
            est = frame_lower_bound(dec, args.eta)
            decomposition["lowerBound"] = {
                "eta": args.eta,
                "value": est.value,
                "rho": est.rho,
                "formulaOnly": est.formula_only,
            }
            if args.alpha is not None:
                dev = deviation_certificate(dec.remainder, args.alpha, args.eta)
                decomposition["deviation"] = {
                    "alpha": dev.alpha,
                    "eta": dev.eta,
                    "holds": dev.holds,
                    "slack": dev.slack,
                }
        report["decomposition"] = decomposition
    report["timing"] = {"seconds": time.perf_counter() - started}
    return report


def _reanalyze_guard(path, claimed_lower: float, claimed_upper: float) -> None:
    again = optimal_bounds(load_frame(path).system)
    if abs(again.lower - claimed_lower) > 1e-9 or abs(again.upper - claimed_upper) > 1e-9:
        raise RuntimeError(
            f"round-trip of {path} drifted: ({again.lower}, {again.upper}) vs "
            f"({claimed_lower}, {claimed_upper})"
        )


def cmd_construct_t4(args) -> dict:
    try:
        profile = ScalarProfile(
            kind=args.kind, xi=args.xi, c=args.c, r=args.r, p=args.p
        )
        shape = ModuleShape(d=args.d, n=args.n)
        count = args.count if args.count is not None else args.n
        system, cert = profile_frame(profile, shape, count)
    except ValueError as exc:
        raise UsageError(str(exc))
    # A truncated certificate only covers the spanned submodule; embed it
    # only when it validates against the whole-module frame operator.
    embedded = cert if count == shape.n else None
    save_frame(args.out, system, embedded)
    bounds = optimal_bounds(system)
    _reanalyze_guard(args.out, bounds.lower, bounds.upper)
    return {
        "out": str(args.out),
        "kind": args.kind,
        "vectors": len(system),
        "bounds": _bounds_dict(bounds),
        "certificateEmbedded": embedded is not None,
    }


def _parse_repeats(raw_items) -> dict[int, int]:
    table: dict[int, int] = {}
    for raw in raw_items:
        for piece in raw.split(","):
            piece = piece.strip()
            if not piece:
                continue
            try:
                index_text, count_text = piece.split(":")
                index, count = int(index_text), int(count_text)
            except ValueError:
                raise UsageError(
                    f"bad repeat spec {piece!r}; expected index:count"
                )
            table[index] = count
    if not table:
        raise UsageError("at least one --repeat index:count is required")
    return table


def cmd_construct_repetition(args) -> dict:
    table = _parse_repeats(args.repeat)
    try:
        shape = ModuleShape(d=args.d, n=args.n)
        system, cert = repetition_frame(shape, table)
    except ValueError as exc:
        raise UsageError(str(exc))
    save_frame(args.out, system, cert)
    bounds = optimal_bounds(system)
    _reanalyze_guard(args.out, bounds.lower, bounds.upper)
    return {
        "out": str(args.out),
        "repeats": {str(k): v for k, v in sorted(table.items())},
        "vectors": len(system),
        "bounds": _bounds_dict(bounds),
        "certificateEmbedded": True,
    }


def cmd_construct_t49(args) -> dict:
    profile_a = _parse_profile_spec(args.profile1)
    profile_b = _parse_profile_spec(args.profile2)
    try:
        scenario = adversarial_scenario(args.n, profile_a, profile_b, d=args.d)
    except ValueError as exc:
        raise UsageError(str(exc))
    meta = {
        "size": args.n,
        "sigma": list(scenario.sigma),
        "profile_a": {"kind": profile_a.kind, "xi": profile_a.xi, "c": profile_a.c,
                      **({"r": profile_a.r} if profile_a.r is not None else {}),
                      **({"p": profile_a.p} if profile_a.p is not None else {})},
        "profile_b": {"kind": profile_b.kind, "xi": profile_b.xi, "c": profile_b.c,
                      **({"r": profile_b.r} if profile_b.r is not None else {}),
                      **({"p": profile_b.p} if profile_b.p is not None else {})},
    }
    cert_a = CompactTightCert(
        xi=1.0, profile=None, permutation=(), compact_part=scenario.compact_a
    )
    cert_b = CompactTightCert(
        xi=1.0, profile=None, permutation=(), compact_part=scenario.compact_b
    )
    path_a = f"{args.out}-a.json"
    path_b = f"{args.out}-b.json"
    path_partition = f"{args.out}-partition.json"
    save_frame(path_a, scenario.frame_a, cert_a, {**meta, "role": "a"})
    save_frame(path_b, scenario.frame_b, cert_b, {**meta, "role": "b"})
    save_partition(
        path_partition, scenario.adversarial, families=2, sigma=list(scenario.sigma)
    )
    bounds_a = optimal_bounds(scenario.frame_a)
    bounds_b = optimal_bounds(scenario.frame_b)
    _reanalyze_guard(path_a, bounds_a.lower, bounds_a.upper)
    _reanalyze_guard(path_b, bounds_b.lower, bounds_b.upper)
    return {
        "files": {"a": path_a, "b": path_b, "partition": path_partition},
        "size": args.n,
        "boundsA": _bounds_dict(bounds_a),
        "boundsB": _bounds_dict(bounds_b),
    }


def cmd_perturb(args) -> dict:
    started = time.perf_counter()
    base = load_frame(args.file_f).system
    other = load_frame(args.file_g).system
    mu = perturbation_distance(base, other)
    dec = shift_decompose(base, args.xi)
    est = frame_lower_bound(dec, args.eta)
    predicted = perturbed_frame_bounds(dec, args.eta, mu)
    actual = optimal_bounds(other, args.tol)
    report = {
        "mu": mu,
        "xi": args.xi,
        "eta": args.eta,
        "lowerBound": {"value": est.value, "rho": est.rho, "formulaOnly": est.formula_only},
        "besselBound": bessel_bound(dec),
        "actual": _bounds_dict(actual),
    }
    if predicted is None:
        report["predicted"] = "NotApplicable"
        report["sandwich"] = {"applicable": False, "holds": None}
    else:
        low, high = predicted
        holds = (low - 1e-9 <= actual.lower) and (actual.upper <= high + 1e-9)
        report["predicted"] = {
            "low": low,
            "high": high,
            # Value of the flattened display form (L - mu)^2, reported alongside.
            "lowAlternate": (est.value - mu) ** 2,
        }
        report["sandwich"] = {"applicable": True, "holds": holds}
    report["timing"] = {"seconds": time.perf_counter() - started}
    return report


def _sweep_table(loaded_a, loaded_b, sizes) -> list[dict]:
    meta_a = loaded_a.scenario
    meta_b = loaded_b.scenario
    if meta_a is None or meta_b is None:
        raise UsageError(
            "--sweep needs scenario metadata in both files (written by 'construct t49')"
        )
    if meta_a["profile_a"] != meta_b["profile_a"] or meta_a["profile_b"] != meta_b["profile_b"]:
        raise UsageError("--sweep: the two files carry different scenario profiles")
    profile_a = ScalarProfile(**{k: v for k, v in meta_a["profile_a"].items()})
    profile_b = ScalarProfile(**{k: v for k, v in meta_a["profile_b"].items()})
    d = loaded_a.system.shape.d
    rows = []
    for size in sizes:
        scenario = adversarial_scenario(size, profile_a, profile_b, d=d)
        mixed = weaving_operator(
            [scenario.frame_a, scenario.frame_b], scenario.adversarial
        )
        smallest = float(hermitian_eigen(mixed.mat).eigenvalues[0])
        envelope = 2.0 * (profile_a.eval(size - 1) + profile_b.eval(size - 1))
        rows.append({
            "size": size,
            "adversarialMin": smallest,
            "envelope": envelope,
        })
    return rows


def cmd_weave(args) -> dict:
    started = time.perf_counter()
    workers = _workers_from_env()
    loaded_a = load_frame(args.file_f)
    loaded_b = load_frame(args.file_g)
    families = [loaded_a.system, loaded_b.system]
    report_obj = universal_bounds(
        families, tol=args.tol, max_partitions=args.max_partitions, workers=workers
    )
    report = {
        "universalLower": report_obj.universal_lower,
        "universalUpper": report_obj.universal_upper,
        "isWoven": report_obj.is_woven,
        "partitionsChecked": report_obj.partitions_checked,
        "worstPartition": list(report_obj.worst_partition.assignment),
        "workers": workers,
    }
    if args.sweep:
        sizes = _parse_sweep(args.sweep)
        report["sweep"] = _sweep_table(loaded_a, loaded_b, sizes)
    report["timing"] = {"seconds": time.perf_counter() - started}
    return report


def _parse_sweep(raw: str) -> list[int]:
    try:
        sizes = [int(piece) for piece in raw.split(",") if piece.strip()]
    except ValueError:
        raise UsageError(f"bad --sweep value {raw!r}; expected comma-separated integers")
    if not sizes or any(size < 2 or size % 2 for size in sizes):
        raise UsageError("--sweep sizes must be even integers >= 2")
    return sizes


def cmd_dual(args) -> dict:
    loaded = load_frame(args.file)
    system = loaded.system
    bounds = optimal_bounds(system, args.tol)
    dual = dual_frame(system, args.tol)
    dual_cert = None
    if loaded.certificate is not None and loaded.certificate.xi != 0:
        cert = loaded.certificate
        source = ModuleOperator(system.shape, cert.operator_matrix())
        # A certificate that barely clears the file tolerance can still be
        # numerically singular; in that case write the dual without one.
        try:
            remainder = dual_decomposition(cert.xi, cert.compact_part, source, args.tol)
            dual_cert = CompactTightCert(
                xi=1.0 / cert.xi,
                profile=None,
                permutation=cert.permutation,
                compact_part=remainder,
            )
        except (SingularMatrixError, InconsistentDecompositionError, ValueError):
            dual_cert = None
    save_frame(args.out, dual, dual_cert)
    dual_bounds = optimal_bounds(dual, args.tol)
    return {
        "out": str(args.out),
        "original": _bounds_dict(bounds),
        "dual": _bounds_dict(dual_bounds),
        "certificateEmbedded": dual_cert is not None,
    }


def build_parser() -> _Parser:
    parser = _Parser(prog="cstar-frames", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="optimal bounds and decomposition diagnostics")
    analyze.add_argument("file")
    analyze.add_argument("--xi", type=float, default=None)
    analyze.add_argument("--eta", type=float, default=None)
    analyze.add_argument("--alpha", type=float, default=None)
    analyze.add_argument("--tol", type=float, default=1e-9)
    analyze.add_argument("--format", choices=("text", "json"), default="text")
    analyze.set_defaults(handler=cmd_analyze)

    construct = sub.add_parser("construct", help="build and serialize reference frames")
    kinds = construct.add_subparsers(dest="constructor", required=True)

    t4 = kinds.add_parser("t4", help="profile-scaled orthonormal basis frame")
    t4.add_argument("--kind", choices=("constant", "gaussian", "geometric", "power"),
                    required=True)
    t4.add_argument("--xi", type=float, required=True)
    t4.add_argument("--c", type=float, default=0.0)
    t4.add_argument("--r", type=float, default=None)
    t4.add_argument("--p", type=float, default=None)
    t4.add_argument("--d", type=int, default=1)
    t4.add_argument("--n", type=int, required=True)
    t4.add_argument("--count", type=int, default=None,
                    help="truncation size (default: n)")
    t4.add_argument("--out", required=True)
    t4.add_argument("--format", choices=("text", "json"), default="text")
    t4.set_defaults(handler=cmd_construct_t4)

    repetition = kinds.add_parser("repetition", help="basis with repeated directions")
    repetition.add_argument("--n", type=int, required=True)
    repetition.add_argument("--d", type=int, default=1)
    repetition.add_argument("--repeat", action="append", required=True,
                            metavar="INDEX:COUNT")
    repetition.add_argument("--out", required=True)
    repetition.add_argument("--format", choices=("text", "json"), default="text")
    repetition.set_defaults(handler=cmd_construct_repetition)

    t49 = kinds.add_parser("t49", help="adversarial interleaved pair")
    t49.add_argument("--n", type=int, required=True, help="index set size (even)")
    t49.add_argument("--d", type=int, default=1)
    t49.add_argument("--profile1", required=True, metavar="KIND:C[:EXTRA]")
    t49.add_argument("--profile2", required=True, metavar="KIND:C[:EXTRA]")
    t49.add_argument("--out", required=True, help="output path prefix")
    t49.add_argument("--format", choices=("text", "json"), default="text")
    t49.set_defaults(handler=cmd_construct_t49)

    perturb = sub.add_parser("perturb", help="perturbation distance and predicted sandwich")
    perturb.add_argument("file_f")
    perturb.add_argument("file_g")
    perturb.add_argument("--xi", type=float, required=True)
    perturb.add_argument("--eta", type=float, default=0.0)
    perturb.add_argument("--tol", type=float, default=1e-9)
    perturb.add_argument("--format", choices=("text", "json"), default="text")
    perturb.set_defaults(handler=cmd_perturb)

    weave = sub.add_parser("weave", help="exhaustive universal weaving bounds")
    weave.add_argument("file_f")
    weave.add_argument("file_g")
    weave.add_argument("--tol", type=float, default=1e-9)
    weave.add_argument("--max-partitions", type=int, default=DEFAULT_PARTITION_CAP)
    weave.add_argument("--sweep", default=None, metavar="N1,N2,...")
    weave.add_argument("--format", choices=("text", "json"), default="text")
    weave.set_defaults(handler=cmd_weave)

    dual = sub.add_parser("dual", help="write the canonical dual frame")
    dual.add_argument("file")
    dual.add_argument("--out", required=True)
    dual.add_argument("--tol", type=float, default=1e-9)
    dual.add_argument("--format", choices=("text", "json"), default="text")
    dual.set_defaults(handler=cmd_dual)

    return parser


def _render_text(report: dict, indent: int = 0) -> list[str]:
    lines = []
    pad = "  " * indent
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render_text(value, indent + 1))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {json.dumps(value)}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except FrameFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ShapeMismatchError, LengthMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TooManyPartitionsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except NotAFrameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 6
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(_render_text(report)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
