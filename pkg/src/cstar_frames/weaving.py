"""Exhaustive weaving analysis and the adversarial interleaved pair.

Weaving asks whether every way of mixing several same-length families
(vector j taken from exactly one family) stays a frame with common
bounds.  At desk scale the quantifier over partitions is answered by
literal exhaustion: all m^N assignments are enumerated, capped, and the
extreme eigenvalues reduced with a deterministic tie-break, so results
do not depend on worker count or schedule.

`adversarial_scenario` builds the classic obstruction: two frames, each
an orthonormal basis on half the index set with a decaying scaled-basis
tail on the other half.  Mixing the two tails lets the basis parts
cancel, leaving exactly the sum of the two compact parts, whose smallest
eigenvalue decays with the scenario size.  At finite size this yields a
quantitative vanishing envelope rather than the infinite-dimensional
contradiction itself.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import LengthMismatchError, ShapeMismatchError, TooManyPartitionsError
from .constructors import ScalarProfile, eigenprofile_operator
from .frames import FrameSystem
from .linalg import DEFAULT_TOL, hermitian_eigen
from .module_space import ModuleOperator, ModuleShape, standard_basis

#: Hard default cap on exhaustive enumeration (2^20 assignments).
DEFAULT_PARTITION_CAP = 1 << 20


@dataclass(frozen=True)
class Partition:
    """Assignment of each index position to a 1-based family number."""

    assignment: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(a) for a in self.assignment)
        if not values:
            raise ValueError("a partition needs at least one position")
        if any(a < 1 for a in values):
            raise ValueError("family numbers are 1-based")
        object.__setattr__(self, "assignment", values)


@dataclass(frozen=True, eq=False)
class WeavingReport:
    """Universal constants over all partitions, with the worst offender."""

    universal_lower: float
    universal_upper: float
    worst_partition: Partition
    is_woven: bool
    partitions_checked: int


def _check_families(families: Sequence[FrameSystem]) -> tuple[ModuleShape, int]:
    if not families:
        raise ValueError("at least one family is required")
    shape = families[0].shape
    count = len(families[0])
    for pos, fam in enumerate(families[1:], start=2):
        if fam.shape != shape:
            raise ShapeMismatchError(
                f"family {pos} has shape {fam.shape}, expected {shape}"
            )
        if len(fam) != count:
            raise LengthMismatchError(
                f"family {pos} has {len(fam)} vectors, expected {count}"
            )
    return shape, count


def weaving_operator(
    families: Sequence[FrameSystem], partition: Partition
) -> ModuleOperator:
    """Frame operator of the mixed family selected by `partition`."""
    shape, count = _check_families(families)
    if len(partition.assignment) != count:
        raise LengthMismatchError(
            f"partition covers {len(partition.assignment)} positions, expected {count}"
        )
    m = len(families)
    gram = np.zeros((shape.dim, shape.dim), dtype=complex)
    for j, family_no in enumerate(partition.assignment):
        if family_no > m:
            raise ValueError(f"position {j + 1} assigned to family {family_no} > {m}")
        rep = families[family_no - 1].vectors[j].rep
        gram += rep.conj().T @ rep
    return ModuleOperator(shape, gram)


def _extreme_eigenvalues(contribs, assignment) -> tuple[float, float]:
    gram = contribs[assignment[0] - 1][0].copy()
    for j in range(1, len(assignment)):
        gram += contribs[assignment[j] - 1][j]
    eigenvalues = hermitian_eigen(gram).eigenvalues
    return float(eigenvalues[0]), float(eigenvalues[-1])


def universal_bounds(
    families: Sequence[FrameSystem],
    tol: float = DEFAULT_TOL,
    max_partitions: int = DEFAULT_PARTITION_CAP,
    workers: int | None = None,
) -> WeavingReport:
    """Exhaust all partitions and report the universal frame constants.

    universal_lower is the minimum over partitions of the smallest
    weaving eigenvalue (its argmin, lexicographically smallest on ties,
    is the worst partition); universal_upper the maximum of the largest.
    Enumeration may be spread over `workers` threads; the reduction is
    order-independent, so the report is identical for any worker count.
    """
    shape, count = _check_families(families)
    m = len(families)
    total = m**count
    if total > max_partitions:
        raise TooManyPartitionsError(
            f"{m}^{count} = {total} partitions exceed the cap {max_partitions}"
        )
    contribs = [
        [vec.rep.conj().T @ vec.rep for vec in fam.vectors] for fam in families
    ]
    assignments = list(itertools.product(range(1, m + 1), repeat=count))

    def reduce_block(block) -> tuple[float, tuple[int, ...], float]:
        best_low = np.inf
        best_assignment = None
        best_high = -np.inf
        for assignment in block:
            low, high = _extreme_eigenvalues(contribs, assignment)
            if low < best_low or (low == best_low and assignment < best_assignment):
                best_low = low
                best_assignment = assignment
            best_high = max(best_high, high)
        return best_low, best_assignment, best_high

    effective = max(1, int(workers or 1))
    if effective == 1 or len(assignments) <= effective:
        low, worst, high = reduce_block(assignments)
    else:
        chunk = (len(assignments) + effective - 1) // effective
        blocks = [
            assignments[i : i + chunk] for i in range(0, len(assignments), chunk)
        ]
        with ThreadPoolExecutor(max_workers=effective) as pool:
            partials = list(pool.map(reduce_block, blocks))
        low, worst, high = partials[0]
        for cand_low, cand_assignment, cand_high in partials[1:]:
            if cand_low < low or (cand_low == low and cand_assignment < worst):
                low = cand_low
                worst = cand_assignment
            high = max(high, cand_high)

    return WeavingReport(
        universal_lower=low,
        universal_upper=high,
        worst_partition=Partition(worst),
        is_woven=low > tol,
        partitions_checked=total,
    )


@dataclass(frozen=True, eq=False)
class AdversarialScenario:
    """Interleaved pair of compact-tight frames with its degenerate partition.

    Each family is a frame on its own (operator I + compact part), but
    the partition mixing the two decaying tails has weaving operator
    exactly compact_a + compact_b.
    """

    frame_a: FrameSystem
    frame_b: FrameSystem
    sigma: tuple[int, ...]
    adversarial: Partition
    compact_a: ModuleOperator
    compact_b: ModuleOperator


def adversarial_scenario(
    count: int,
    profile_a: ScalarProfile,
    profile_b: ScalarProfile,
    d: int = 1,
) -> AdversarialScenario:
    """Build the two interleaved families on an even index set of size `count`.

    The module rank is count/2.  Family A carries an orthonormal basis
    on the odd positions (sigma) and the decaying tail
    sqrt(profile_a(k)) e_(k/2) on the even ones; family B mirrors this
    with its basis on the even positions.  Both profiles must decay to
    limit 0 with positive amplitude.  The adversarial partition takes
    the tails of both families: A on the even positions, B on the odd
    ones, so the two basis halves drop out.
    """
    if count < 2 or count % 2 != 0:
        raise ValueError(f"scenario size must be an even count >= 2, got {count}")
    for label, profile in (("first", profile_a), ("second", profile_b)):
        if profile.limit != 0:
            raise ValueError(f"{label} profile must have limit 0, got {profile.limit}")
        if profile.kind == "constant" or profile.c <= 0:
            raise ValueError(f"{label} profile needs a positive decaying amplitude")
    half = count // 2
    shape = ModuleShape(d=d, n=half)
    basis = standard_basis(shape)

    vectors_a = []
    vectors_b = []
    for k in range(1, count + 1):
        if k % 2 == 1:
            direction = basis[(k + 1) // 2 - 1]
            vectors_a.append(direction)
            vectors_b.append(np.sqrt(profile_b.eval(k)) * direction)
        else:
            direction = basis[k // 2 - 1]
            vectors_a.append(np.sqrt(profile_a.eval(k)) * direction)
            vectors_b.append(direction)

    compact_a = eigenprofile_operator(
        [profile_a.eval(2 * i) for i in range(1, half + 1)], shape
    )
    compact_b = eigenprofile_operator(
        [profile_b.eval(2 * i - 1) for i in range(1, half + 1)], shape
    )
    sigma = tuple(range(1, count, 2))
    assignment = tuple(2 if k % 2 == 1 else 1 for k in range(1, count + 1))
    return AdversarialScenario(
        frame_a=FrameSystem(vectors_a),
        frame_b=FrameSystem(vectors_b),
        sigma=sigma,
        adversarial=Partition(assignment),
        compact_a=compact_a,
        compact_b=compact_b,
    )
