"""Concrete compact-tight frames from closed-form eigenvalue profiles.

A scalar profile is a strictly decreasing sequence l_1 > l_2 > ... with
a declared limit xi; scaling an orthonormal basis by sqrt(l_k) yields a
frame whose operator is xi*I plus a "compact part" K carrying the
eigenvalues l_k - xi.  Finite truncations cannot distinguish compact
from merely bounded perturbations, so compactness lives in the profile
metadata: the certificate records the profile and its declared limit,
and uniqueness of the representation S = K + xi*I is decided at that
profile level (two valid certificates for the same operator must agree
on the shift, because their difference would be a nonzero constant
multiple of the identity, whose eigenvalue sequence cannot tend to 0).

Four profile kinds are built in, all with known closed forms for the
supremum, prefix minimum, and limit, so every constructed frame has
exact expected bounds to test against:

    constant    l_k = xi
    gaussian    l_k = xi + c * exp(-(k-1)^2 / 2)
    geometric   l_k = xi + c * r^k,        0 < r < 1
    power       l_k = xi + c * k^(-p),     p > 0

Indexing starts at k = 1 and the amplitude is taken at the first index
for the gaussian and power kinds, so a gaussian profile with xi = c = 1
yields the reference bounds (1, 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import LengthMismatchError, NotSameOperatorError
from .frames import FrameSystem, frame_operator
from .linalg import DEFAULT_TOL, frobenius
from .module_space import ModuleOperator, ModuleShape, standard_basis

PROFILE_KINDS = ("constant", "gaussian", "geometric", "power")


@dataclass(frozen=True)
class ScalarProfile:
    """Closed-form decreasing sequence k -> l_k with declared limit xi."""

    kind: str
    xi: float
    c: float = 0.0
    r: float | None = None
    p: float | None = None

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}; expected one of {PROFILE_KINDS}")
        if not math.isfinite(self.xi):
            raise ValueError("profile limit xi must be finite")
        if not (math.isfinite(self.c) and self.c >= 0):
            raise ValueError("amplitude c must be finite and >= 0")
        if self.kind == "constant" and self.c != 0:
            raise ValueError("constant profiles take no amplitude; set c = 0")
        if self.kind == "geometric":
            if self.r is None or not (0 < self.r < 1):
                raise ValueError("geometric profiles need a ratio r in (0, 1)")
        elif self.r is not None:
            raise ValueError(f"ratio r only applies to geometric profiles, not {self.kind!r}")
        if self.kind == "power":
            if self.p is None or not (self.p > 0):
                raise ValueError("power profiles need an exponent p > 0")
        elif self.p is not None:
            raise ValueError(f"exponent p only applies to power profiles, not {self.kind!r}")

    def eval(self, k: int) -> float:
        """l_k for a 1-based index k."""
        if k < 1:
            raise ValueError(f"profile index must be >= 1, got {k}")
        if self.kind == "constant":
            return self.xi
        if self.kind == "gaussian":
            return self.xi + self.c * math.exp(-((k - 1) ** 2) / 2.0)
        if self.kind == "geometric":
            return self.xi + self.c * self.r**k
        return self.xi + self.c * k ** (-self.p)

    def values(self, count: int) -> np.ndarray:
        """l_1 .. l_count as a float array."""
        return np.array([self.eval(k) for k in range(1, count + 1)])

    @property
    def limit(self) -> float:
        """The declared limit of l_k as k grows."""
        return self.xi

    @property
    def sup(self) -> float:
        """sup over all k, attained at k = 1 for the decreasing kinds."""
        if self.kind == "constant" or self.c == 0:
            return self.xi
        return self.eval(1)

    def prefix_min(self, count: int) -> float:
        """min over k = 1..count, attained at the last index."""
        if count < 1:
            raise ValueError("count must be >= 1")
        if self.kind == "constant" or self.c == 0:
            return self.xi
        return self.eval(count)


def eigenprofile_operator(alphas: Sequence[float], shape: ModuleShape) -> ModuleOperator:
    """Operator diagonal in the standard basis with prescribed direction eigenvalues.

    Each basis direction contributes its alpha with multiplicity d in the
    representation, so the matrix spectrum is the multiset of alphas
    repeated d times.
    """
    values = [float(a) for a in alphas]
    if len(values) != shape.n:
        raise LengthMismatchError(
            f"expected {shape.n} eigenvalues for shape {shape}, got {len(values)}"
        )
    mat = np.kron(np.diag(values), np.eye(shape.d)).astype(complex)
    return ModuleOperator(shape, mat)


def _direction_eigenvalues(op: ModuleOperator, tol: float = 1e-9) -> np.ndarray:
    """Per-direction scalars of a block-diagonal operator alpha_j * I_d.

    Raises if the matrix carries mass outside that structure.
    """
    d = op.shape.d
    n = op.shape.n
    alphas = np.empty(n)
    rebuilt = np.zeros_like(op.mat)
    for j in range(n):
        block = op.mat[j * d : (j + 1) * d, j * d : (j + 1) * d]
        alphas[j] = float(np.trace(block).real) / d
        rebuilt[j * d : (j + 1) * d, j * d : (j + 1) * d] = alphas[j] * np.eye(d)
    drift = frobenius(op.mat - rebuilt)
    if drift > tol * max(1.0, frobenius(op.mat)):
        raise ValueError(
            f"operator is not scalar-block-diagonal in the standard basis; "
            f"off-structure mass {drift:.3e}"
        )
    return alphas


@dataclass(frozen=True, eq=False)
class CompactTightCert:
    """Certificate that a frame operator equals compact_part + xi * I.

    `permutation` lists (1-based) which basis direction carries the k-th
    profile value.  `profile` may be None for parts whose eigenvalue
    sequence has no closed form (finite-rank repetitions, duals); the
    declared limit of the scaled-basis sequence then defaults to xi,
    consistent with an eigenvalue sequence that is eventually zero.
    """

    xi: float
    profile: ScalarProfile | None
    permutation: tuple[int, ...]
    compact_part: ModuleOperator

    def __post_init__(self):
        n = self.compact_part.shape.n
        perm = tuple(int(i) for i in self.permutation)
        if len(set(perm)) != len(perm):
            raise ValueError("permutation entries must be distinct")
        if perm and not all(1 <= i <= n for i in perm):
            raise ValueError(f"permutation entries must lie in 1..{n}")
        object.__setattr__(self, "permutation", perm)
        if self.profile is not None:
            alphas = _direction_eigenvalues(self.compact_part)
            expected = np.zeros(n)
            for k, direction in enumerate(perm, start=1):
                expected[direction - 1] = self.profile.eval(k) - self.xi
            drift = float(np.max(np.abs(alphas - expected)))
            if drift > 1e-9 * max(1.0, float(np.max(np.abs(expected)))):
                raise ValueError(
                    f"compact part eigenvalues disagree with the profile by {drift:.3e}"
                )

    @property
    def declared_limit(self) -> float:
        """Declared limit of the scaled-basis sequence l_k."""
        return self.profile.limit if self.profile is not None else self.xi

    def operator_matrix(self) -> np.ndarray:
        """The certified frame operator compact_part + xi * I."""
        dim = self.compact_part.shape.dim
        return self.compact_part.mat + self.xi * np.eye(dim)

    def direction_eigenvalues(self) -> np.ndarray:
        """Eigenvalue of the compact part at each basis direction, in order."""
        return _direction_eigenvalues(self.compact_part)


def profile_frame(
    profile: ScalarProfile, shape: ModuleShape, count: int | None = None
) -> tuple[FrameSystem, CompactTightCert]:
    """Frame {sqrt(l_k) e_k} for k = 1..count, with its certificate.

    Requires a positive limit xi and, for non-constant kinds, a positive
    amplitude.  With count = n the frame operator is exactly
    K + xi*I for K = sum_k (l_k - xi) <., e_k> e_k and the optimal
    bounds are (min_k l_k, max_k l_k); smaller truncations leave the
    remaining basis directions uncovered, so they only frame the
    spanned submodule and the certificate describes that truncation.
    """
    if count is None:
        count = shape.n
    if count < 1:
        raise ValueError("count must be >= 1")
    if count > shape.n:
        raise ValueError(
            f"truncation {count} exceeds the module rank {shape.n}"
        )
    if profile.xi <= 0:
        raise ValueError("profile limit xi must be positive")
    if profile.kind != "constant" and profile.c <= 0:
        raise ValueError("non-constant profiles need a positive amplitude")
    basis = standard_basis(shape)
    vectors = [math.sqrt(profile.eval(k)) * basis[k - 1] for k in range(1, count + 1)]
    alphas = [profile.eval(k) - profile.xi for k in range(1, count + 1)]
    alphas += [0.0] * (shape.n - count)
    compact = eigenprofile_operator(alphas, shape)
    cert = CompactTightCert(
        xi=profile.xi,
        profile=profile,
        permutation=tuple(range(1, count + 1)),
        compact_part=compact,
    )
    system = FrameSystem(vectors)
    if count == shape.n:
        drift = frobenius(frame_operator(system).mat - cert.operator_matrix())
        if drift > 1e-10 * max(1.0, frobenius(cert.operator_matrix())):
            raise AssertionError(
                f"constructed frame operator misses its certificate by {drift:.3e}"
            )
    return system, cert


def repetition_frame(
    shape: ModuleShape, multiplicities: Mapping[int, int]
) -> tuple[FrameSystem, CompactTightCert]:
    """Orthonormal basis with designated directions repeated, plus certificate.

    `multiplicities` maps 1-based basis indices to total counts >= 1.
    The frame lists every basis vector once and appends the extra
    copies, so the frame operator is exactly I + K with K of rank
    (number of repeated directions) * d and integer spectrum.
    """
    theta = {}
    for index, count in multiplicities.items():
        idx = int(index)
        cnt = int(count)
        if not 1 <= idx <= shape.n:
            raise ValueError(f"basis index {idx} outside 1..{shape.n}")
        if cnt < 1:
            raise ValueError(f"multiplicity for index {idx} must be >= 1, got {cnt}")
        theta[idx] = cnt
    basis = standard_basis(shape)
    vectors = list(basis)
    for idx in sorted(theta):
        vectors.extend([basis[idx - 1]] * (theta[idx] - 1))
    alphas = [float(theta.get(j, 1) - 1) for j in range(1, shape.n + 1)]
    compact = eigenprofile_operator(alphas, shape)
    cert = CompactTightCert(
        xi=1.0,
        profile=None,
        permutation=tuple(sorted(j for j, cnt in theta.items() if cnt > 1)),
        compact_part=compact,
    )
    return FrameSystem(vectors), cert


@dataclass(frozen=True)
class UniquenessVerdict:
    """Outcome of comparing two certificates for one operator."""

    equal: bool
    reason: str


def representation_unique(
    first: CompactTightCert, second: CompactTightCert, tol: float = DEFAULT_TOL
) -> UniquenessVerdict:
    """Decide whether two certificates for the same operator coincide.

    Both must describe the same operator matrix (precondition).  The
    decision is made at profile level: a valid compact part has an
    eigenvalue sequence with limit 0, i.e. declared limit equal to the
    shift.  If either certificate breaks that, or the shifts differ, the
    representations are distinct, because the difference of the two
    compact parts would be the constant (xi_1 - xi_2) * I.
    """
    op1 = first.operator_matrix()
    op2 = second.operator_matrix()
    drift = frobenius(op1 - op2)
    if drift > tol * max(1.0, frobenius(op1)):
        raise NotSameOperatorError(
            f"certificates describe different operators; drift {drift:.3e}"
        )
    tail1 = first.declared_limit - first.xi
    tail2 = second.declared_limit - second.xi
    if abs(tail1) > tol or abs(tail2) > tol:
        culprit = "first" if abs(tail1) > tol else "second"
        tail = tail1 if abs(tail1) > tol else tail2
        return UniquenessVerdict(
            equal=False,
            reason=(
                f"{culprit} certificate declares a part whose eigenvalue sequence "
                f"tends to {tail:g}, not 0, so it is not a compact perturbation of "
                f"its shift"
            ),
        )
    if abs(first.xi - second.xi) > tol:
        return UniquenessVerdict(
            equal=False,
            reason=(
                f"shifts {first.xi:g} and {second.xi:g} differ; the parts would "
                f"differ by the constant {first.xi - second.xi:g} * I, whose "
                f"eigenvalue sequence cannot tend to 0"
            ),
        )
    part_drift = frobenius(first.compact_part.mat - second.compact_part.mat)
    if part_drift > tol * max(1.0, frobenius(first.compact_part.mat)):
        return UniquenessVerdict(
            equal=False,
            reason=f"equal shifts but compact parts differ by {part_drift:.3e}",
        )
    return UniquenessVerdict(equal=True, reason="same shift and same compact part")
