"""Frame systems: operators, optimal bounds, and canonical duals.

A finite family is always a Bessel system; whether it is a frame is read
off the smallest eigenvalue of its frame operator.  The optimal constants
are exactly the extreme eigenvalues, the canonical dual applies the
inverse operator to every vector, and reconstruction falls out.
"""

import numpy as np

from cstar_frames import (
    FrameSystem,
    ModuleShape,
    analysis,
    dual_frame,
    frame_operator,
    inner_product,
    left_mul,
    module_norm,
    optimal_bounds,
    perturbation_distance,
    random_vector,
    standard_basis,
    synthesis,
    zero_vector,
)

rng = np.random.default_rng(11)
shape = ModuleShape(d=1, n=3)
basis = standard_basis(shape)

print("== a tight frame: the standard basis ==")
onb = FrameSystem(basis)
report = optimal_bounds(onb)
print(f"bounds ({report.lower:g}, {report.upper:g}), tight={report.tight}")

print("\n== an untight frame: duplicate one direction ==")
lopsided = FrameSystem([basis[0], basis[0], basis[1], basis[2]])
report = optimal_bounds(lopsided)
print(f"frame operator diagonal: {np.real(np.diag(frame_operator(lopsided).mat))}")
print(f"bounds ({report.lower:g}, {report.upper:g})")

print("\n== analysis / synthesis factor the frame operator ==")
f = random_vector(shape, rng)
coeffs = analysis(lopsided, f)
resynth = synthesis(lopsided, coeffs)
print(f"||synthesis(analysis(f))|| = {module_norm(resynth):.6f} "
      f"(equals ||S f||, not ||f||, for an untight frame)")

print("\n== canonical dual and reconstruction ==")
dual = dual_frame(lopsided)
print("dual vector representations:")
for vec in dual:
    print("  ", np.round(np.real(vec.rep), 6))
rebuilt = zero_vector(shape)
for vec, dvec in zip(lopsided, dual):
    rebuilt = rebuilt + left_mul(inner_product(f, dvec), vec)
print(f"reconstruction error with dual coefficients: "
      f"{np.linalg.norm(rebuilt.rep - f.rep):.2e}")

dual_report = optimal_bounds(dual)
print(f"dual bounds ({dual_report.lower:g}, {dual_report.upper:g}) "
      f"= reciprocals of the original in swapped order")

print("\n== synthesis distance between nearby families ==")
for eps in (0.01, 0.1):
    bumped = FrameSystem([(1 + eps) * basis[0], basis[0], basis[1], basis[2]])
    print(f"scale the first vector by 1+{eps}: distance = "
          f"{perturbation_distance(lopsided, bumped):.6f}")
