"""Frame systems: synthesis/analysis machinery, optimal bounds, duals.

For a finite family F = {f_k} the frame operator matrix is the Gram
accumulation sum_k rep(f_k)* rep(f_k); it is Hermitian PSD, and the two
optimal constants squeezing sum_k <f, f_k><f_k, f> between multiples of
<f, f> are exactly its extreme eigenvalues (see the positivity argument
in :mod:`cstar_frames.module_space`).  A finite family is always a
Bessel system; it is a frame precisely when the smallest eigenvalue
clears the positivity tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import LengthMismatchError, NotAFrameError, ShapeMismatchError
from .linalg import DEFAULT_TOL, as_matrix, hermitian_eigen, hermitian_inverse, operator_norm, psd_sqrt
from .module_space import (
    ModuleOperator,
    ModuleShape,
    ModuleVector,
    require_same_shape,
)


class FrameSystem:
    """Finite ordered family of module vectors with a cached frame operator.

    Duplicate and zero vectors are allowed; the empty family is not.
    Instances are immutable, so they can be shared freely across threads.
    """

    def __init__(self, vectors: Sequence[ModuleVector]):
        vectors = tuple(vectors)
        if not vectors:
            raise ValueError("a frame system needs at least one vector")
        shape = vectors[0].shape
        for position, vec in enumerate(vectors[1:], start=2):
            if vec.shape != shape:
                raise ShapeMismatchError(
                    f"vector {position} has shape {vec.shape}, expected {shape}"
                )
        gram = np.zeros((shape.dim, shape.dim), dtype=complex)
        for vec in vectors:
            gram += vec.rep.conj().T @ vec.rep
        self._vectors = vectors
        self._shape = shape
        self._frame_op = ModuleOperator(shape, gram)

    @property
    def shape(self) -> ModuleShape:
        return self._shape

    @property
    def vectors(self) -> tuple[ModuleVector, ...]:
        return self._vectors

    @property
    def frame_op(self) -> ModuleOperator:
        return self._frame_op

    def __len__(self) -> int:
        return len(self._vectors)

    def __iter__(self) -> Iterator[ModuleVector]:
        return iter(self._vectors)


@dataclass(frozen=True)
class BoundsReport:
    """Optimal frame constants and the resulting classification."""

    lower: float
    upper: float
    is_frame: bool
    is_bessel: bool
    tight: bool


def frame_operator(system: FrameSystem) -> ModuleOperator:
    """The cached operator with matrix sum_k rep(f_k)* rep(f_k)."""
    return system.frame_op


def analysis(system: FrameSystem, f: ModuleVector) -> list[np.ndarray]:
    """Coefficient list {<f, f_k>}_k, one d x d algebra element per vector."""
    require_same_shape(system, f)
    return [f.rep @ vec.rep.conj().T for vec in system.vectors]


def synthesis(system: FrameSystem, coefficients: Sequence) -> ModuleVector:
    """sum_k a_k . f_k for algebra coefficients a_k (left action)."""
    coeffs = list(coefficients)
    if len(coeffs) != len(system):
        raise LengthMismatchError(
            f"expected {len(system)} coefficients, got {len(coeffs)}"
        )
    d = system.shape.d
    out = np.zeros((d, system.shape.dim), dtype=complex)
    for coeff, vec in zip(coeffs, system.vectors):
        block = as_matrix(coeff)
        if block.shape != (d, d):
            raise ShapeMismatchError(
                f"coefficients must be {d}x{d} algebra elements, got {block.shape}"
            )
        out += block @ vec.rep
    return ModuleVector(system.shape, out)


def synthesis_matrix(system: FrameSystem) -> np.ndarray:
    """Vertical stack of the vector representations, shape (N*d) x (n*d).

    Its Gram against itself is the frame operator matrix, and its largest
    singular value is the synthesis operator norm.
    """
    return np.vstack([vec.rep for vec in system.vectors])


def optimal_bounds(system: FrameSystem, tol: float = DEFAULT_TOL) -> BoundsReport:
    """Best constants in the two-sided frame inequality.

    lower = max(lambda_min(S), 0) and upper = lambda_max(S); the family
    is a frame iff lower clears `tol`, and tight when the two coincide.
    """
    eigenvalues = hermitian_eigen(system.frame_op.mat).eigenvalues
    lower = max(float(eigenvalues[0]), 0.0)
    upper = max(float(eigenvalues[-1]), 0.0)
    return BoundsReport(
        lower=lower,
        upper=upper,
        is_frame=lower > tol,
        is_bessel=True,
        tight=(upper - lower) <= tol * max(1.0, upper),
    )


def perturbation_distance(first: FrameSystem, second: FrameSystem) -> float:
    """Synthesis-operator distance ||T_F - T_G||.

    Computed as the largest singular value of the stacked difference of
    the vector representations (evaluated on the smaller Gram matrix).
    """
    require_same_shape(first, second)
    if len(first) != len(second):
        raise LengthMismatchError(
            f"families have different lengths: {len(first)} vs {len(second)}"
        )
    diff = synthesis_matrix(first) - synthesis_matrix(second)
    return operator_norm(diff)


def dual_frame(system: FrameSystem, tol: float = DEFAULT_TOL) -> FrameSystem:
    """Canonical dual {S^-1 f_k}; requires the optimal lower bound to clear tol.

    The dual's frame operator is S^-1, so its optimal bounds are the
    reciprocals of the original ones in swapped order, and
    sum_k <f, dual_k> f_k reconstructs f.
    """
    bounds = optimal_bounds(system, tol)
    if not bounds.is_frame:
        raise NotAFrameError(
            f"optimal lower bound {bounds.lower:.3e} is not above tolerance {tol:.3e}"
        )
    inverse = hermitian_inverse(system.frame_op.mat, tol)
    return FrameSystem(
        [ModuleVector(system.shape, vec.rep @ inverse) for vec in system.vectors]
    )


def frame_from_operator(matrix, shape: ModuleShape) -> FrameSystem:
    """A frame of n vectors whose frame operator equals the given PSD matrix.

    Chops the PSD square root R into n row blocks of d rows each; the
    vertical restack of those blocks is R itself, so the Gram recovers
    R* R = the input.  Handy for realizing prescribed frame operators in
    tests and demonstrations.
    """
    mat = as_matrix(matrix)
    dim = shape.dim
    if mat.shape != (dim, dim):
        raise ShapeMismatchError(
            f"operator matrix must be {dim}x{dim} for shape {shape}, got {mat.shape}"
        )
    root = psd_sqrt(mat)
    d = shape.d
    vectors = [
        ModuleVector(shape, root[i * d : (i + 1) * d, :]) for i in range(shape.n)
    ]
    return FrameSystem(vectors)
