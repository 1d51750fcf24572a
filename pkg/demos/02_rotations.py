"""Symmetric realization of so(n) and its bracket check, order by order."""
import time

from heisreal.opmatrix import closed_form_k_power, k_matrix
from heisreal.presentations import so_presentation
from heisreal.realize import realize_so
from heisreal.verify import check_bracket

n = 3
K = k_matrix(n)
print("K[(12),(13)]   =", K[(1, 2), (1, 3)])
print("K^2[(12),(12)] =", K.power(2)[(1, 2), (1, 2)])
print("closed form    =", closed_form_k_power(n, "euclidean", 2)[(1, 2), (1, 2)])

for D in range(4):
    r = realize_so(n, D)
    print(f"\nD = {D}:  M[1,2] = {r['M[1,2]']}")

# brackets of series cut at D are exact only below D
r = realize_so(4, 4)
start = time.perf_counter()
report = check_bracket(r, so_presentation(4))
print(f"\nso(4), D = 4: {len(report.pairs)} pairs compared up to degree {report.cmp_degree},"
      f" pass = {report.passed} ({time.perf_counter() - start:.2f}s)")

# the third-order part is absent since odd Bernoulli numbers vanish
print("degree-3 part of M[1,2]:", r["M[1,2]"].part(3) or "0")
