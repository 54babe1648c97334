"""JSON frame files: parsing, validation, and serialization.

A frame file is human-diffable JSON.  Complex numbers are [re, im]
pairs; Python's shortest-repr float serialization round-trips doubles
bit-exactly, so parse(serialize(F)) reproduces F to the bit.

Layout::

    {
      "schema": "cstar-frames/1",
      "algebra": {"d": 1},
      "module":  {"n": 8},
      "vectors": [ [block, ...n blocks...], ...N vectors... ],
      "certificate": {                    # optional
        "xi": 1.0,
        "profile": {"kind": "gaussian", "xi": 1.0, "c": 1.0},   # or null
        "permutation": [1, 2, ...],
        "alphas": [0.5, 0.1, ...]         # compact-part eigenvalue per direction
      },
      "scenario": {                       # optional, written by the adversarial builder
        "size": 8, "role": "a", "sigma": [1, 3, 5, 7],
        "profile_a": {...}, "profile_b": {...}
      }
    }

where each block is a d x d row-major array of [re, im] pairs.  The
"alphas" list makes certificates self-contained even when the
eigenvalue sequence has no closed-form profile (repetition frames,
canonical duals).  A present certificate is validated against the
vectors on load: the frame operator must match alphas + xi * I within
CERT_MATCH_TOL.

Partition files are a small companion format::

    {"schema": "cstar-frames-partition/1", "families": 2,
     "assignment": [2, 1, ...], "sigma": [1, 3, ...]}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .constructors import CompactTightCert, ScalarProfile, eigenprofile_operator
from .errors import FrameFileError
from .frames import FrameSystem, frame_operator
from .linalg import frobenius
from .module_space import ModuleShape, ModuleVector
from .weaving import Partition

FRAME_SCHEMA = "cstar-frames/1"
PARTITION_SCHEMA = "cstar-frames-partition/1"

#: Tolerance for a certificate to validate against the file's vectors.
CERT_MATCH_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class LoadedFrame:
    """A parsed frame file: the system plus any validated metadata."""

    system: FrameSystem
    certificate: CompactTightCert | None
    scenario: dict | None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise FrameFileError(message)


def _as_finite_float(value, where: str) -> float:
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             f"{where}: expected a number, got {value!r}")
    value = float(value)
    _require(math.isfinite(value), f"{where}: number must be finite")
    return value


def _decode_block(block, d: int, where: str) -> np.ndarray:
    _require(isinstance(block, list) and len(block) == d,
             f"{where}: expected {d} rows")
    out = np.zeros((d, d), dtype=complex)
    for i, row in enumerate(block):
        _require(isinstance(row, list) and len(row) == d,
                 f"{where}, row {i + 1}: expected {d} entries")
        for j, entry in enumerate(row):
            _require(isinstance(entry, list) and len(entry) == 2,
                     f"{where}, row {i + 1}, column {j + 1}: expected an [re, im] pair")
            re = _as_finite_float(entry[0], f"{where}, row {i + 1}, column {j + 1} (re)")
            im = _as_finite_float(entry[1], f"{where}, row {i + 1}, column {j + 1} (im)")
            out[i, j] = complex(re, im)
    return out


def _encode_block(block: np.ndarray) -> list:
    return [
        [[float(z.real), float(z.imag)] for z in row]
        for row in np.asarray(block, dtype=complex)
    ]


def _decode_profile(payload, where: str) -> ScalarProfile:
    _require(isinstance(payload, dict), f"{where}: expected an object")
    _require("kind" in payload and "xi" in payload, f"{where}: needs 'kind' and 'xi'")
    kwargs = {
        "kind": payload["kind"],
        "xi": _as_finite_float(payload["xi"], f"{where}.xi"),
        "c": _as_finite_float(payload.get("c", 0.0), f"{where}.c"),
    }
    if "r" in payload and payload["r"] is not None:
        kwargs["r"] = _as_finite_float(payload["r"], f"{where}.r")
    if "p" in payload and payload["p"] is not None:
        kwargs["p"] = _as_finite_float(payload["p"], f"{where}.p")
    try:
        return ScalarProfile(**kwargs)
    except ValueError as exc:
        raise FrameFileError(f"{where}: {exc}") from exc


def _encode_profile(profile: ScalarProfile) -> dict:
    out = {"kind": profile.kind, "xi": profile.xi, "c": profile.c}
    if profile.r is not None:
        out["r"] = profile.r
    if profile.p is not None:
        out["p"] = profile.p
    return out


def frame_to_payload(
    system: FrameSystem,
    certificate: CompactTightCert | None = None,
    scenario: dict | None = None,
) -> dict:
    """Serialize a frame system (and optional metadata) to the file schema."""
    shape = system.shape
    d = shape.d
    payload = {
        "schema": FRAME_SCHEMA,
        "algebra": {"d": d},
        "module": {"n": shape.n},
        "vectors": [
            [_encode_block(vec.block(i)) for i in range(1, shape.n + 1)]
            for vec in system.vectors
        ],
    }
    if certificate is not None:
        payload["certificate"] = {
            "xi": certificate.xi,
            "profile": (
                _encode_profile(certificate.profile)
                if certificate.profile is not None
                else None
            ),
            "permutation": list(certificate.permutation),
            "alphas": [float(a) for a in certificate.direction_eigenvalues()],
        }
    if scenario is not None:
        payload["scenario"] = scenario
    return payload


def payload_to_frame(payload) -> LoadedFrame:
    """Parse and validate a frame payload (see the module docstring)."""
    _require(isinstance(payload, dict), "top level: expected an object")
    _require(payload.get("schema") == FRAME_SCHEMA,
             f"unsupported schema {payload.get('schema')!r}; expected {FRAME_SCHEMA!r}")
    algebra = payload.get("algebra")
    module = payload.get("module")
    _require(isinstance(algebra, dict) and isinstance(algebra.get("d"), int)
             and algebra["d"] >= 1, "algebra.d must be an integer >= 1")
    _require(isinstance(module, dict) and isinstance(module.get("n"), int)
             and module["n"] >= 1, "module.n must be an integer >= 1")
    d = algebra["d"]
    n = module["n"]
    shape = ModuleShape(d=d, n=n)

    raw_vectors = payload.get("vectors")
    _require(isinstance(raw_vectors, list) and len(raw_vectors) >= 1,
             "vectors: expected a nonempty list")
    vectors = []
    for vi, raw in enumerate(raw_vectors, start=1):
        _require(isinstance(raw, list) and len(raw) == n,
                 f"vector {vi}: expected {n} blocks")
        rep = np.hstack([
            _decode_block(raw[bi], d, f"vector {vi}, block {bi + 1}")
            for bi in range(n)
        ])
        vectors.append(ModuleVector(shape, rep))
    system = FrameSystem(vectors)

    certificate = None
    if payload.get("certificate") is not None:
        certificate = _decode_certificate(payload["certificate"], system)

    scenario = None
    if payload.get("scenario") is not None:
        scenario = _decode_scenario(payload["scenario"])

    return LoadedFrame(system=system, certificate=certificate, scenario=scenario)


def _decode_certificate(raw, system: FrameSystem) -> CompactTightCert:
    where = "certificate"
    _require(isinstance(raw, dict), f"{where}: expected an object")
    _require("xi" in raw, f"{where}: needs 'xi'")
    xi = _as_finite_float(raw["xi"], f"{where}.xi")
    profile = None
    if raw.get("profile") is not None:
        profile = _decode_profile(raw["profile"], f"{where}.profile")
    permutation = raw.get("permutation", [])
    _require(isinstance(permutation, list)
             and all(isinstance(i, int) for i in permutation),
             f"{where}.permutation: expected a list of integers")
    shape = system.shape
    alphas = raw.get("alphas")
    if alphas is None:
        _require(profile is not None,
                 f"{where}: needs 'alphas' when no profile is given")
        alphas = [0.0] * shape.n
        for k, direction in enumerate(permutation, start=1):
            _require(1 <= direction <= shape.n,
                     f"{where}.permutation: direction {direction} outside 1..{shape.n}")
            alphas[direction - 1] = profile.eval(k) - xi
    else:
        _require(isinstance(alphas, list) and len(alphas) == shape.n,
                 f"{where}.alphas: expected {shape.n} numbers")
        alphas = [_as_finite_float(a, f"{where}.alphas[{i}]")
                  for i, a in enumerate(alphas)]
    compact = eigenprofile_operator(alphas, shape)
    try:
        cert = CompactTightCert(
            xi=xi,
            profile=profile,
            permutation=tuple(permutation),
            compact_part=compact,
        )
    except ValueError as exc:
        raise FrameFileError(f"{where}: {exc}") from exc
    claimed = cert.operator_matrix()
    actual = frame_operator(system).mat
    drift = frobenius(actual - claimed)
    if drift > CERT_MATCH_TOL * max(1.0, frobenius(actual)):
        raise FrameFileError(
            f"{where}: does not validate against the vectors; "
            f"frame operator drift {drift:.3e} exceeds {CERT_MATCH_TOL:.0e}"
        )
    return cert


def _decode_scenario(raw) -> dict:
    where = "scenario"
    _require(isinstance(raw, dict), f"{where}: expected an object")
    _require(isinstance(raw.get("size"), int) and raw["size"] >= 2,
             f"{where}.size: expected an integer >= 2")
    _require(raw.get("role") in ("a", "b"), f"{where}.role: expected 'a' or 'b'")
    sigma = raw.get("sigma")
    _require(isinstance(sigma, list) and all(isinstance(i, int) for i in sigma),
             f"{where}.sigma: expected a list of integers")
    profile_a = _decode_profile(raw.get("profile_a"), f"{where}.profile_a")
    profile_b = _decode_profile(raw.get("profile_b"), f"{where}.profile_b")
    return {
        "size": raw["size"],
        "role": raw["role"],
        "sigma": list(sigma),
        "profile_a": _encode_profile(profile_a),
        "profile_b": _encode_profile(profile_b),
    }


def dumps_payload(payload: dict) -> str:
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def save_frame(
    path,
    system: FrameSystem,
    certificate: CompactTightCert | None = None,
    scenario: dict | None = None,
) -> None:
    Path(path).write_text(dumps_payload(frame_to_payload(system, certificate, scenario)))


def load_frame(path) -> LoadedFrame:
    """Read and validate a frame file; parse errors carry line and column."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FrameFileError(f"{path}: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameFileError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    try:
        return payload_to_frame(payload)
    except FrameFileError as exc:
        raise FrameFileError(f"{path}: {exc}") from exc


def partition_to_payload(partition: Partition, families: int,
                         sigma: list[int] | None = None) -> dict:
    payload = {
        "schema": PARTITION_SCHEMA,
        "families": families,
        "assignment": list(partition.assignment),
    }
    if sigma is not None:
        payload["sigma"] = list(sigma)
    return payload


def save_partition(path, partition: Partition, families: int,
                   sigma: list[int] | None = None) -> None:
    Path(path).write_text(dumps_payload(partition_to_payload(partition, families, sigma)))


def load_partition(path) -> tuple[Partition, int]:
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FrameFileError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    except OSError as exc:
        raise FrameFileError(f"{path}: {exc}") from exc
    _require(isinstance(payload, dict) and payload.get("schema") == PARTITION_SCHEMA,
             f"{path}: unsupported partition schema")
    families = payload.get("families")
    _require(isinstance(families, int) and families >= 1,
             f"{path}: families must be an integer >= 1")
    assignment = payload.get("assignment")
    _require(isinstance(assignment, list) and len(assignment) >= 1
             and all(isinstance(a, int) and 1 <= a <= families for a in assignment),
             f"{path}: assignment must list family numbers in 1..{families}")
    return Partition(tuple(assignment)), families
