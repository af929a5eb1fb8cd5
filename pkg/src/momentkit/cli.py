"""Batch command-line frontend.

Subcommands wrap the library operations one-to-one, read subspaces and
hermitian matrices from JSON files (complex entries are always [re, im]
pairs), and emit plot-ready CSV/JSON plus a RunReport sidecar describing the
invocation.  Data outputs are byte-identical across repeated invocations with
the same inputs, seed and tolerances; the sidecar additionally records wall
time.

Exit codes: 0 success; for ``minimal-check`` and ``intersect`` the code maps
the verdict (0 MINIMAL/INTERSECT, 1 NOT_MINIMAL/DISJOINT, 2 INDETERMINATE);
3 signals invalid input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .directions import fibonacci_directions
from .feasibility import IntersectionStatus, moments_intersect
from .jnr import jnr_boundary, jnr_support
from .linalg import NonHermitianError, require_hermitian
from .minimality import Verdict, check_minimal, hausdorff_moments
from .moment import (
    DegenerateCurve,
    curve_frame,
    curve_point,
    ellipse_projection,
    sample_moment,
    support_moment,
)
from .subspace import NotGenericAtCoordinate, Subspace, centroid, subspace_from_spanning

EXIT_OK = 0
EXIT_INPUT = 3


class InputError(Exception):
    """Invalid or malformed input file / flag value."""


# ---------------------------------------------------------------------------
# File formats.

def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _complex_entry(value, where: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(p, (int, float)) for p in value)
    ):
        raise InputError(f"{where}: complex entries must be [re, im] pairs, got {value!r}")
    return complex(value[0], value[1])


def _pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def load_subspace(path: str) -> Subspace:
    data = _load_json(path)
    if not isinstance(data, dict) or "n" not in data or "vectors" not in data:
        raise InputError(f"{path}: expected an object with keys 'n' and 'vectors'")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise InputError(f"{path}: 'n' must be a positive integer")
    vectors = data["vectors"]
    if not isinstance(vectors, list) or not vectors:
        raise InputError(f"{path}: 'vectors' must be a non-empty list")
    rows = []
    for i, vec in enumerate(vectors):
        if not isinstance(vec, list) or len(vec) != n:
            raise InputError(f"{path}: vectors[{i}] must have {n} entries")
        rows.append(
            [_complex_entry(z, f"{path}: vectors[{i}][{j}]") for j, z in enumerate(vec)]
        )
    try:
        return subspace_from_spanning(np.array(rows, dtype=np.complex128))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_hermitian(path: str) -> np.ndarray:
    data = _load_json(path)
    if not isinstance(data, dict) or "n" not in data or "entries" not in data:
        raise InputError(f"{path}: expected an object with keys 'n' and 'entries'")
    n = data["n"]
    entries = data["entries"]
    if not isinstance(n, int) or n < 1:
        raise InputError(f"{path}: 'n' must be a positive integer")
    if not isinstance(entries, list) or len(entries) != n:
        raise InputError(f"{path}: 'entries' must be an {n} x {n} nested list")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"{path}: entries[{i}] must have {n} entries")
        rows.append(
            [_complex_entry(z, f"{path}: entries[{i}][{j}]") for j, z in enumerate(row)]
        )
    try:
        return require_hermitian(np.array(rows, dtype=np.complex128))
    except NonHermitianError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _parse_direction(text: str, n: int) -> np.ndarray:
    try:
        c = np.array([float(part) for part in text.split(",")])
    except ValueError as exc:
        raise InputError(f"--direction must be comma-separated numbers: {exc}") from exc
    if c.size != n:
        raise InputError(f"--direction has {c.size} entries, expected {n}")
    return c


def _parse_directions(schedule: str, n: int) -> np.ndarray:
    if schedule.startswith("fibonacci:"):
        try:
            count = int(schedule.split(":", 1)[1])
        except ValueError as exc:
            raise InputError(f"bad direction schedule {schedule!r}") from exc
        if count < 1:
            raise InputError("fibonacci:<k> needs k >= 1")
        return fibonacci_directions(n, count)
    data = _load_json(schedule)
    if isinstance(data, dict) and "directions" in data:
        data = data["directions"]
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != n:
        raise InputError(f"{schedule}: directions must be a list of {n}-vectors")
    if not np.all(np.isfinite(arr)) or np.any(np.all(arr == 0.0, axis=1)):
        raise InputError(f"{schedule}: directions must be finite and nonzero")
    return arr


# ---------------------------------------------------------------------------
# Output helpers.

def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    path.write_text("\n".join(lines) + "\n")


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _emit_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text)


def _write_report(
    command: str,
    args: argparse.Namespace,
    inputs: list[str],
    outputs: list[str],
    started: float,
    seed: int | None = None,
    tolerances: dict | None = None,
) -> None:
    if not outputs:
        return
    report = {
        "command": command,
        "invocation": _namespace_argv(args),
        "inputs": {path: _digest(path) for path in inputs},
        "seed": seed,
        "tolerances": tolerances or {},
        "outputs": outputs,
        "version": __version__,
        "wall_time_s": time.perf_counter() - started,
    }
    path = Path(outputs[0] + ".report.json")
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")


def _namespace_argv(args: argparse.Namespace) -> list[str]:
    return [f"{key}={value}" for key, value in sorted(vars(args).items()) if key != "func"]


# ---------------------------------------------------------------------------
# Commands.

def _cmd_moment_sample(args) -> int:
    started = time.perf_counter()
    s = load_subspace(args.subspace)
    points = sample_moment(s, args.count, args.seed)
    out = Path(args.out)
    _write_csv(out, [f"x{i + 1}" for i in range(s.n)], points)
    _write_report(
        "moment-sample",
        args,
        [args.subspace],
        [str(out)],
        started,
        seed=args.seed,
    )
    return EXIT_OK


def _cmd_curve(args) -> int:
    started = time.perf_counter()
    s = load_subspace(args.subspace)
    j, k = _indices(args, s.n)
    frame = curve_frame(s, j, k)
    ell = ellipse_projection(s, j, k, frame=frame)
    ts = np.linspace(0.0, np.pi / 2.0, args.steps + 1)
    rows = []
    for t in ts:
        sample = curve_point(s, j, k, float(t), frame=frame)
        rows.append([t, *sample.m, abs(sample.v[j]), abs(sample.v[k])])
    out = Path(args.out)
    header = ["t", *[f"m{i + 1}" for i in range(s.n)], f"mod_{j + 1}", f"mod_{k + 1}"]
    _write_csv(out, header, rows)
    sidecar = Path(args.out + ".ellipse.json")
    sidecar.write_text(
        json.dumps(
            {
                "j": j + 1,
                "k": k + 1,
                "a": [float(x) for x in ell.a],
                "b": [float(x) for x in ell.b],
                "t_end": float(ell.t_end),
                "segment": ell.segment,
            },
            indent=2,
            sort_keys=True,
        )
        + "\n"
    )
    _write_report(
        "curve",
        args,
        [args.subspace],
        [str(out), str(sidecar)],
        started,
    )
    return EXIT_OK


def _indices(args, n: int) -> tuple[int, int]:
    j, k = args.j, args.k
    if not (1 <= j <= n and 1 <= k <= n):
        raise InputError(f"coordinates must lie in 1..{n} (got j={j}, k={k})")
    if j == k:
        raise InputError("coordinates j and k must differ")
    return j - 1, k - 1


def _certificate_payload(cert) -> dict:
    payload = {
        "status": cert.status.value,
        "gap": cert.gap,
        "iterations": cert.iterations,
    }
    if cert.common is not None:
        payload["common"] = [float(x) for x in cert.common]
    if cert.direction is not None:
        payload["direction"] = [float(x) for x in cert.direction]
        payload["margin"] = cert.margin
    if cert.witness_y is not None:
        payload["witness_y"] = [[_pair(z) for z in row] for row in cert.witness_y]
        payload["witness_x"] = [[_pair(z) for z in row] for row in cert.witness_x]
    return payload


def _cmd_minimal_check(args) -> int:
    started = time.perf_counter()
    m = load_hermitian(args.matrix)
    report = check_minimal(m, eig_tol=args.eig_tol, feas_tol=args.tol, max_iter=args.max_iter)
    payload = {
        "norm": report.norm,
        "symmetric": report.symmetric,
        "verdict": report.verdict.value,
        "boundary_ambiguous": report.boundary_ambiguous,
        "eigenspace_pos": [[_pair(z) for z in row] for row in report.space_pos.basis],
        "eigenspace_neg": [[_pair(z) for z in row] for row in report.space_neg.basis],
        "certificate": _certificate_payload(report.certificate)
        if report.certificate is not None
        else None,
    }
    _emit_json(payload, args.out)
    if args.out:
        _write_report(
            "minimal-check",
            args,
            [args.matrix],
            [args.out],
            started,
            tolerances={"eig_tol": args.eig_tol, "tol": args.tol, "max_iter": args.max_iter},
        )
    return {
        Verdict.MINIMAL: 0,
        Verdict.NOT_MINIMAL: 1,
        Verdict.INDETERMINATE: 2,
    }[report.verdict]


def _cmd_intersect(args) -> int:
    started = time.perf_counter()
    v = load_subspace(args.subspace_v)
    w = load_subspace(args.subspace_w)
    cert = moments_intersect(v, w, tol=args.tol, max_iter=args.max_iter)
    _emit_json(_certificate_payload(cert), args.out)
    if args.out:
        _write_report(
            "intersect",
            args,
            [args.subspace_v, args.subspace_w],
            [args.out],
            started,
            tolerances={"tol": args.tol, "max_iter": args.max_iter},
        )
    return {
        IntersectionStatus.INTERSECT: 0,
        IntersectionStatus.DISJOINT: 1,
        IntersectionStatus.INDETERMINATE: 2,
    }[cert.status]


def _cmd_support(args) -> int:
    started = time.perf_counter()
    s = load_subspace(args.subspace)
    c = _parse_direction(args.direction, s.n)
    moment_side = support_moment(s, c)
    jnr_side = jnr_support(s, c)
    payload = {
        "direction": [float(x) for x in c],
        "moment_support": moment_side.value,
        "moment_maximizer": [_pair(z) for z in moment_side.maximizer],
        "jnr_support": jnr_side.value,
    }
    _emit_json(payload, args.out)
    if args.out:
        _write_report("support", args, [args.subspace], [args.out], started)
    return EXIT_OK


def _cmd_jnr_boundary(args) -> int:
    started = time.perf_counter()
    s = load_subspace(args.subspace)
    directions = _parse_directions(args.directions, s.n)
    points = jnr_boundary(s, directions)
    rows = [
        [*direction, *point.x] for direction, point in zip(directions, points)
    ]
    out = Path(args.out)
    header = [f"u{i + 1}" for i in range(s.n)] + [f"x{i + 1}" for i in range(s.n)]
    _write_csv(out, header, rows)
    inputs = [args.subspace]
    if not args.directions.startswith("fibonacci:"):
        inputs.append(args.directions)
    _write_report("jnr-boundary", args, inputs, [str(out)], started)
    return EXIT_OK


def _cmd_centroid(args) -> int:
    started = time.perf_counter()
    s = load_subspace(args.subspace)
    payload = {
        "n": s.n,
        "r": s.r,
        "centroid": [float(x) for x in centroid(s)],
    }
    _emit_json(payload, args.out)
    if args.out:
        _write_report("centroid", args, [args.subspace], [args.out], started)
    return EXIT_OK


def _cmd_hausdorff(args) -> int:
    started = time.perf_counter()
    v = load_subspace(args.subspace_v)
    w = load_subspace(args.subspace_w)
    directions = _parse_directions(args.directions, v.n)
    result = hausdorff_moments(v, w, directions)
    payload = {
        "estimate": result.estimate,
        "spectral_distance": result.spectral_distance,
        "frobenius_distance": result.frobenius_distance,
        "hypothesis_holds": result.hypothesis_holds,
        "bound": result.bound,
        "bound_ok": result.bound_ok,
        "direction_count": int(directions.shape[0]),
    }
    _emit_json(payload, args.out)
    if args.out:
        inputs = [args.subspace_v, args.subspace_w]
        if not args.directions.startswith("fibonacci:"):
            inputs.append(args.directions)
        _write_report("hausdorff", args, inputs, [args.out], started)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser.

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momentkit",
        description="Moment sets of complex subspaces, joint numerical ranges, "
        "and minimal hermitian matrix certificates.",
    )
    parser.add_argument("--version", action="version", version=f"momentkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moment-sample", help="sample moment points to CSV")
    p.add_argument("--subspace", required=True, help="subspace JSON file")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_moment_sample)

    p = sub.add_parser("curve", help="trace an extreme-point curve to CSV")
    p.add_argument("--subspace", required=True)
    p.add_argument("-j", type=int, required=True, help="first coordinate (1-based)")
    p.add_argument("-k", type=int, required=True, help="second coordinate (1-based)")
    p.add_argument("--steps", type=int, default=64)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("minimal-check", help="certify minimality of a hermitian matrix")
    p.add_argument("--matrix", required=True, help="hermitian matrix JSON file")
    p.add_argument("--eig-tol", type=float, default=1e-8, dest="eig_tol")
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--max-iter", type=int, default=50_000, dest="max_iter")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_minimal_check)

    p = sub.add_parser("intersect", help="decide whether two moment sets intersect")
    p.add_argument("--subspace-v", required=True, dest="subspace_v")
    p.add_argument("--subspace-w", required=True, dest="subspace_w")
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--max-iter", type=int, default=50_000, dest="max_iter")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_intersect)

    p = sub.add_parser("support", help="exact support function in one direction")
    p.add_argument("--subspace", required=True)
    p.add_argument("--direction", required=True, help="comma-separated reals")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_support)

    p = sub.add_parser("jnr-boundary", help="boundary sweep of the joint numerical range")
    p.add_argument("--subspace", required=True)
    p.add_argument(
        "--directions",
        required=True,
        help="JSON file of direction vectors or 'fibonacci:<k>'",
    )
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_jnr_boundary)

    p = sub.add_parser("centroid", help="centroid of the moment set")
    p.add_argument("--subspace", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_centroid)

    p = sub.add_parser("hausdorff", help="support-based Hausdorff estimate")
    p.add_argument("--subspace-v", required=True, dest="subspace_v")
    p.add_argument("--subspace-w", required=True, dest="subspace_w")
    p.add_argument("--directions", default="fibonacci:500")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_hausdorff)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, NonHermitianError, NotGenericAtCoordinate, DegenerateCurve, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
