"""kappa-Minkowski coordinates: closed form against the generic series."""
from gmpy2 import mpq

from heisreal.presentations import kappa_constants, kappa_presentation
from heisreal.realize import realize_kappa_closed, realize_weyl_series
from heisreal.verify import check_bracket

a = [mpq(0), mpq(0), mpq(1, 5)]

for D in (1, 2):
    r = realize_kappa_closed(3, a, D)
    print(f"D = {D}:")
    for lab in r.labels:
        print(f"  {lab} = {r[lab]}")

closed = realize_kappa_closed(3, a, 5)
series = realize_weyl_series(kappa_constants(a), 5, dim=3)
print("\nclosed form == generic series at D = 5:", closed.values == series.values)
print("brackets close:", check_bracket(closed, kappa_presentation(a)).passed)

# a timelike and a spacelike deformation at once
b = [mpq(1, 2), mpq(-1, 3), mpq(0)]
r = realize_kappa_closed(3, b, 4)
print("generic a-vector closes too:", check_bracket(r, kappa_presentation(b)).passed)
