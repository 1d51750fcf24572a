"""Momenta, Lorentz generators and quantum angles from one block matrix."""
from heisreal.opmatrix import ktilde, ktilde_power
from heisreal.presentations import extended_poincare_presentation
from heisreal.realize import realize_extended_poincare
from heisreal.verify import check_bracket, lambda_group_check

kt = ktilde(4)
print("A[1,2]     =", kt.A[1, 2])
print("C[(12),1]  =", kt.C[(1, 2), 1])
print("upper right block vanishes:", kt.upper_right.is_zero())

# block powers from the closed sum agree with repeated multiplication
print("K~^3 == K~^2 K~:", ktilde_power(kt, 3) == ktilde_power(kt, 2) @ kt)

r = realize_extended_poincare(4, 3)
print("\nP[1] =", r["P[1]"])
print("L[1,2] =", r["L[1,2]"])

report = check_bracket(r, extended_poincare_presentation(4), jobs=2)
print(f"\n{len(report.pairs)} pairs, pass = {report.passed},"
      f" largest residual = {report.max_residual_terms} terms")

# exp(d) keeps the Minkowski metric invariant order by order
print("L^T eta L = eta to degree 4:", lambda_group_check(4, "minkowski", 4))
