"""Writing a frame operator as S = T + xi * I and what that buys.

The split isolates a real shift xi from a self-adjoint remainder
T = S - xi*I.  Three elementary consequences are checked numerically
(`decomposition_diagnostics`): a positive remainder with positive shift
certifies a frame with lower bound xi; the remainder is always bounded
and self-adjoint; and a shift at or below the optimal lower bound forces
the remainder positive.

The quantified inequality ||alpha f - T f|| <= eta/sqrt(1+eta^2) ||T f||
(over ALL f) compiles to a single matrix PSD test: with
c = eta/sqrt(1+eta^2) and M = mat(T), it holds exactly when

    c^2 M M* - (alpha I - M)(alpha I - M)*  is PSD.

Necessity comes from vectors whose representation has a single nonzero
row; sufficiency from the congruence X W X* of the PSD witness W.  No
sampling over f is involved.

From the split one also gets explicit frame-bound formulas: an upper
bound ||T|| + |xi|, a lower bound sigma_min(T)/sqrt(1+eta^2) - |xi|, and
a sandwich for any family within synthesis distance mu of the original.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentDecompositionError, SingularMatrixError
from .frames import FrameSystem, frame_operator, optimal_bounds
from .linalg import (
    DEFAULT_TOL,
    frobenius,
    hermitian_defect,
    hermitian_eigen,
    hermitian_inverse,
    operator_norm,
    psd_check,
    sigma_min,
)
from .module_space import (
    DEFAULT_SEED,
    ModuleOperator,
    ModuleVector,
    inner_product,
    module_norm,
    operator_positive,
    random_vector,
    require_same_shape,
)

#: Fixed threshold on the PSD witness eigenvalue for deviation certificates.
DEVIATION_SLACK_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ShiftDecomposition:
    """S = remainder + xi * I, with the source operator kept alongside."""

    xi: float
    remainder: ModuleOperator
    source: ModuleOperator

    def __post_init__(self):
        dim = self.source.shape.dim
        recombined = self.remainder.mat + self.xi * np.eye(dim)
        drift = frobenius(recombined - self.source.mat)
        if drift > 1e-12 * max(1.0, frobenius(self.source.mat)):
            raise InconsistentDecompositionError(
                f"remainder + xi*I misses the source operator by {drift:.3e}"
            )
        defect = hermitian_defect(self.remainder.mat)
        if defect > 1e-10 * max(1.0, frobenius(self.remainder.mat)):
            raise InconsistentDecompositionError(
                f"remainder must be self-adjoint; defect {defect:.3e}"
            )

    @classmethod
    def from_parts(cls, remainder: ModuleOperator, xi: float) -> "ShiftDecomposition":
        """Build the decomposition of S := remainder + xi*I."""
        dim = remainder.shape.dim
        source = ModuleOperator(remainder.shape, remainder.mat + xi * np.eye(dim))
        return cls(xi=float(xi), remainder=remainder, source=source)


def shift_decompose(system: FrameSystem, xi: float) -> ShiftDecomposition:
    """Split the frame operator of `system` as (S - xi*I) + xi*I."""
    source = frame_operator(system)
    dim = source.shape.dim
    remainder = ModuleOperator(source.shape, source.mat - xi * np.eye(dim))
    return ShiftDecomposition(xi=float(xi), remainder=remainder, source=source)


@dataclass(frozen=True)
class PartCheck:
    """One implication: whether its hypothesis applied, whether it held, margin."""

    applicable: bool
    holds: bool
    slack: float | None


@dataclass(frozen=True)
class DecompositionDiagnostics:
    """The three shift-decomposition consequences, each checked with slack."""

    frame_from_positivity: PartCheck
    self_adjointness: PartCheck
    positivity_from_lower_bound: PartCheck

    @property
    def all_hold(self) -> bool:
        return (
            self.frame_from_positivity.holds
            and self.self_adjointness.holds
            and self.positivity_from_lower_bound.holds
        )


def decomposition_diagnostics(
    system: FrameSystem, xi: float, tol: float = DEFAULT_TOL
) -> DecompositionDiagnostics:
    """Check the three consequences of S = T + xi*I on a concrete frame.

    1. If T is positive and xi > 0: the optimal lower bound must reach
       xi (within tol) and the optimal upper bound must stay below
       ||T|| + |xi|.
    2. T is self-adjoint with finite norm (always, by construction).
    3. If the optimal lower bound A satisfies xi <= A: T must be PSD.

    Inapplicable hypotheses yield vacuously-true parts with slack None.
    """
    dec = shift_decompose(system, xi)
    bounds = optimal_bounds(system, tol)
    tmat = dec.remainder.mat

    positive = operator_positive(dec.remainder, tol)
    upper_cap = bessel_bound(dec)
    if positive and xi > 0:
        lower_margin = bounds.lower - xi
        upper_margin = upper_cap - bounds.upper
        part1 = PartCheck(
            applicable=True,
            holds=(lower_margin >= -tol) and (upper_margin >= -tol),
            slack=min(lower_margin, upper_margin),
        )
    else:
        part1 = PartCheck(applicable=False, holds=True, slack=None)

    defect = hermitian_defect(tmat) / max(1.0, frobenius(tmat))
    norm_t = operator_norm(tmat)
    part2 = PartCheck(
        applicable=True,
        holds=(defect <= 1e-10) and math.isfinite(norm_t),
        slack=defect,
    )

    if bounds.lower >= xi:
        smallest = float(hermitian_eigen((tmat + tmat.conj().T) / 2.0).eigenvalues[0])
        part3 = PartCheck(
            applicable=True, holds=smallest >= -tol, slack=smallest
        )
    else:
        part3 = PartCheck(applicable=False, holds=True, slack=None)

    return DecompositionDiagnostics(
        frame_from_positivity=part1,
        self_adjointness=part2,
        positivity_from_lower_bound=part3,
    )


@dataclass(frozen=True)
class DeviationCertificate:
    """Outcome of the all-f relative deviation test at fixed (alpha, eta).

    `slack` is the smallest eigenvalue of the PSD witness
    c^2 M M* - (alpha I - M)(alpha I - M)*; the inequality holds iff the
    witness is PSD within the fixed threshold.
    """

    alpha: float
    eta: float
    holds: bool
    slack: float


def deviation_certificate(
    T: ModuleOperator, alpha: float, eta: float
) -> DeviationCertificate:
    """Decide ||alpha f - T f|| <= eta/sqrt(1+eta^2) * ||T f|| for all f."""
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    mat = T.mat
    dim = T.shape.dim
    csq = eta * eta / (1.0 + eta * eta)
    shifted = alpha * np.eye(dim) - mat
    witness = csq * (mat @ mat.conj().T) - shifted @ shifted.conj().T
    slack = float(hermitian_eigen((witness + witness.conj().T) / 2.0).eigenvalues[0])
    return DeviationCertificate(
        alpha=float(alpha),
        eta=float(eta),
        holds=slack >= -DEVIATION_SLACK_TOL,
        slack=slack,
    )


def alignment_predicates(
    f: ModuleVector, g: ModuleVector, alpha: float, eta: float
) -> tuple[bool, bool]:
    """Evaluate the two pointwise inequalities tying correlation to proximity.

    Left:  ||f|| ||g|| <= sqrt(1+eta^2) ||<f, g>||.
    Right: ||alpha f - g|| <= sqrt(eta^2/(1+eta^2)) ||g||.

    Comparisons carry a 1e-12 relative margin so boundary cases (f = g
    with eta = 0, say) are not decided by a single rounding.  Both
    verdicts are returned as-is; no equivalence between them is assumed,
    the pair exists for empirical probing.
    """
    require_same_shape(f, g)
    if eta < 0:
        raise ValueError("eta must be nonnegative")

    def leq(a: float, b: float) -> bool:
        return a <= b + 1e-12 * max(1.0, abs(a), abs(b))

    lhs = leq(
        module_norm(f) * module_norm(g),
        math.sqrt(1.0 + eta * eta) * operator_norm(inner_product(f, g)),
    )
    rhs = leq(
        module_norm(alpha * f - g),
        math.sqrt(eta * eta / (1.0 + eta * eta)) * module_norm(g),
    )
    return lhs, rhs


@dataclass(frozen=True)
class AgreementReport:
    """Empirical agreement rate between the two alignment predicates."""

    samples: int
    agreements: int

    @property
    def rate(self) -> float:
        return self.agreements / self.samples


def alignment_agreement_probe(
    shape,
    alphas,
    etas,
    sample_count: int,
    seed: int = DEFAULT_SEED,
) -> AgreementReport:
    """Sample random vector pairs over an (alpha, eta) grid and count agreement.

    Purely observational: reports how often the two predicates coincide,
    with no claim that they must.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    rng = np.random.default_rng(seed)
    samples = 0
    agreements = 0
    for _ in range(sample_count):
        f = random_vector(shape, rng)
        g = random_vector(shape, rng)
        for alpha in alphas:
            for eta in etas:
                lhs, rhs = alignment_predicates(f, g, alpha, eta)
                samples += 1
                agreements += int(lhs == rhs)
    return AgreementReport(samples=samples, agreements=agreements)


def bessel_bound(dec: ShiftDecomposition) -> float:
    """Upper frame bound ||T|| + |xi| implied by the decomposition."""
    return operator_norm(dec.remainder.mat) + abs(dec.xi)


@dataclass(frozen=True)
class LowerBoundEstimate:
    """Lower frame bound rho/sqrt(1+eta^2) - |xi| from the decomposition.

    `formula_only` flags remainders with negative spectrum, where
    sigma_min no longer witnesses boundedness from below and the value
    is reported without that reading.
    """

    value: float
    rho: float
    formula_only: bool


def frame_lower_bound(
    dec: ShiftDecomposition, eta: float, rho: float | None = None
) -> LowerBoundEstimate:
    """Evaluate the decomposition's lower-bound formula.

    rho defaults to sigma_min(mat(T)), the sharpest admissible constant;
    a user-supplied rho must not exceed it.
    """
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    sharpest = sigma_min(dec.remainder.mat)
    if rho is None:
        rho = sharpest
    else:
        if rho < 0:
            raise ValueError("rho must be nonnegative")
        if rho > sharpest + 1e-12:
            raise ValueError(
                f"rho={rho} exceeds the sharpest admissible value {sharpest}"
            )
    value = rho / math.sqrt(1.0 + eta * eta) - abs(dec.xi)
    formula_only = not psd_check(dec.remainder.mat, DEFAULT_TOL)
    return LowerBoundEstimate(value=value, rho=float(rho), formula_only=formula_only)


def perturbed_frame_bounds(
    dec: ShiftDecomposition,
    eta: float,
    mu: float,
    rho: float | None = None,
) -> tuple[float, float] | None:
    """Predicted bounds for any family within synthesis distance mu.

    With L the lower-bound estimate: applicable only when mu < sqrt(L),
    in which case the prediction is ((sqrt(L) - mu)^2,
    (mu + sqrt(||T|| + |xi|))^2).  Returns None when not applicable.
    """
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    lower = frame_lower_bound(dec, eta, rho).value
    if lower <= 0:
        return None
    root = math.sqrt(lower)
    if mu >= root:
        return None
    high = (mu + math.sqrt(bessel_bound(dec))) ** 2
    return ((root - mu) ** 2, high)


def dual_decomposition(
    xi: float,
    compact: ModuleOperator,
    source: ModuleOperator,
    tol: float = DEFAULT_TOL,
) -> ModuleOperator:
    """Compact part of the inverse: T with S^-1 = T + xi^-1 I.

    Requires S = compact + xi*I with xi nonzero and S invertible; then
    T := -xi^-1 * compact @ S^-1 satisfies (T + xi^-1 I) S = I and
    T S = -xi^-1 compact.
    """
    if xi == 0:
        raise ValueError("xi must be nonzero")
    require_same_shape(compact, source)
    dim = source.shape.dim
    drift = frobenius(source.mat - (compact.mat + xi * np.eye(dim)))
    if drift > 1e-10 * max(1.0, frobenius(source.mat)):
        raise InconsistentDecompositionError(
            f"source does not equal compact + xi*I; drift {drift:.3e}"
        )
    smallest = float(hermitian_eigen(source.mat).eigenvalues[0])
    if smallest <= tol:
        raise SingularMatrixError(
            f"source operator has smallest eigenvalue {smallest:.3e} <= {tol:.3e}"
        )
    inverse = hermitian_inverse(source.mat, tol)
    mat = -(1.0 / xi) * (compact.mat @ inverse)
    return ModuleOperator(source.shape, mat)
