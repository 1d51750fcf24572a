"""Normal ordering in the pair-indexed Heisenberg algebra.

Run with ``python demos/01_normal_ordering.py``.
"""
from heisreal.ncalgebra import MINKOWSKI, act, commutator, heisenberg

H = heisenberg(3)

# products are written in the order given and normal ordered on the fly
print("d12 x12      =", H.parse("d[1,2]*x[1,2]"))
print("d12^2 x12^2  =", H.parse("d[1,2]^2*x[1,2]^2"))

# swapped indices flip the sign, diagonal generators vanish
print("x21          =", H.parse("x[2,1]"))
print("x22          =", H.parse("x[2,2]"))

# the Minkowski version picks up eta_11 eta_22 = -1
Hm = heisenberg(4, MINKOWSKI)
print("[d12, x12] (minkowski) =", commutator(Hm.d(1, 2), Hm.x(1, 2)))
print("[d23, x23] (minkowski) =", commutator(Hm.d(2, 3), Hm.x(2, 3)))

# derivatives act on polynomials in the coordinates
f = H.parse("x[1,2]^3 + x[1,2]*x[1,3]")
print("d12 |> f     =", act(H.d(1, 2), f))
