"""Relabeling so(n) by a single index and transporting realizations back.

A coefficient table ``up[a][(m,n)]`` (antisymmetric in ``m, n``) defines
``M_a = 1/2 sum_{mn} up[a][mn] M_mn`` and, with ``x_a``, ``d_a`` defined the
same way, an embedding ``A_N -> H_n``.  Realizing ``M_a`` by the symmetric
Weyl series in ``A_N`` and pulling back reproduces the direct ``psi(K)``
realization, whatever table is chosen.
"""
from __future__ import annotations

from itertools import permutations

from .exactnum import ZERO, GaussianRational
from .ncalgebra import EUCLIDEAN, NCPoly, canonical_pairs, heisenberg, linear_combination
from .presentations import Label
from .realize import Realization, realize_weyl_series

HALF = GaussianRational(1) / 2


def _delta(a, b):
    return 1 if a == b else 0


class GammaCoeffs:
    """``up[(a, mu, nu)]`` for ``a = 1..N`` and all ordered ``mu, nu``.

    Both quadratic identities are checked on construction, then the lower
    coefficients are taken equal to the upper ones (they are forced to be).
    """

    def __init__(self, n: int, up: dict, name: str = "custom"):
        self.n = n
        self.N = n * (n - 1) // 2
        self.name = name
        self._images = None
        self.up = {}
        for (a, mu, nu), v in up.items():
            v = GaussianRational.coerce(v)
            if v:
                self.up[(a, mu, nu)] = v
        for (a, mu, nu), v in self.up.items():
            if self.get(a, nu, mu) != -v:
                raise ValueError("coefficients must be antisymmetric in the pair index")
        if not self.check_orthonormality():
            raise ValueError("coefficients violate 1/2 sum G_a G_b = delta_ab")
        if not self.check_completeness():
            raise ValueError("coefficients violate sum_a G_a G_a = dd - dd")

    def get(self, a, mu, nu) -> GaussianRational:
        return self.up.get((a, mu, nu), ZERO)

    def down(self, a, mu, nu) -> GaussianRational:
        """Coefficient of the inverse map ``M_mn = sum_a down(a,m,n) M_a``."""
        return self.get(a, mu, nu)

    def _ordered(self):
        rng = range(1, self.n + 1)
        return [(m, v) for m in rng for v in rng]

    def check_orthonormality(self) -> bool:
        for a in range(1, self.N + 1):
            for b in range(1, self.N + 1):
                acc = sum((self.get(a, m, v) * self.get(b, m, v) for m, v in self._ordered()), ZERO)
                if acc * HALF != _delta(a, b):
                    return False
        return True

    def check_completeness(self) -> bool:
        for mu, nu in self._ordered():
            for al, be in self._ordered():
                acc = sum((self.get(a, mu, nu) * self.get(a, al, be)
                           for a in range(1, self.N + 1)), ZERO)
                if acc != _delta(mu, al) * _delta(nu, be) - _delta(mu, be) * _delta(nu, al):
                    return False
        return True


def gamma_canonical(n: int) -> GammaCoeffs:
    """``a <-> (l < r)`` in lexicographic order, ``G_a^{mn} = d_lm d_rn - d_ln d_rm``."""
    if n < 2:
        raise ValueError("dimension n must be at least 2")
    up = {}
    for a, (l, r) in enumerate(canonical_pairs(n), start=1):
        up[(a, l, r)] = 1
        up[(a, r, l)] = -1
    return GammaCoeffs(n, up, "canonical")


def levi_civita(i, j, k) -> int:
    if len({i, j, k}) < 3:
        return 0
    perm = [i, j, k]
    inversions = sum(1 for x in range(3) for y in range(x + 1, 3) if perm[x] > perm[y])
    return -1 if inversions % 2 else 1


def gamma_epsilon() -> GammaCoeffs:
    """The so(3) choice ``G_a^{mn} = eps_{amn}``."""
    up = {(a, m, v): levi_civita(a, m, v) for a, m, v in permutations(range(1, 4), 3)}
    return GammaCoeffs(3, up, "epsilon")


def rotation_constants(n: int):
    """``C[(mn),(lr),(ab)]`` of so(n) on ordered pairs, as a function."""
    d = _delta

    def C(mu, nu, lam, rho, al, be):
        return (GaussianRational(d(mu, al) * d(rho, be) - d(mu, be) * d(rho, al)) * d(nu, lam)
                - GaussianRational(d(nu, al) * d(rho, be) - d(nu, be) * d(rho, al)) * d(mu, lam)
                + GaussianRational(d(lam, al) * d(mu, be) - d(lam, be) * d(mu, al)) * d(nu, rho)
                - GaussianRational(d(lam, al) * d(nu, be) - d(lam, be) * d(nu, al)) * d(mu, rho)) * HALF

    return C


def structure_constants_product(g: GammaCoeffs) -> dict:
    """``C_abc = 1/2 sum_{a b l} (G_a^{al} G_b^{lb} - G_b^{al} G_a^{lb}) G^c_{ab}``."""
    n, N = g.n, g.N
    rng = range(1, n + 1)
    table = {}
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            for c in range(1, N + 1):
                acc = ZERO
                for al in rng:
                    for be in rng:
                        gc = g.down(c, al, be)
                        if not gc:
                            continue
                        for lam in rng:
                            acc = acc + (g.get(a, al, lam) * g.get(b, lam, be)
                                         - g.get(b, al, lam) * g.get(a, lam, be)) * gc
                acc = acc * HALF
                if acc:
                    table[(a, b, c)] = acc
    return table


def structure_constants_full(g: GammaCoeffs) -> dict:
    """``C_abc = 1/4 sum G_a^{mn} G_b^{lr} G^c_{ab} C[(mn),(lr),(ab)]``."""
    C = rotation_constants(g.n)
    N = g.N
    sparse = {a: [(m, v, c) for (aa, m, v), c in g.up.items() if aa == a] for a in range(1, N + 1)}
    quarter = HALF * HALF
    table = {}
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            for c in range(1, N + 1):
                acc = ZERO
                for mu, nu, ga in sparse[a]:
                    for lam, rho, gb in sparse[b]:
                        for al, be, gc in sparse[c]:
                            v = C(mu, nu, lam, rho, al, be)
                            if v:
                                acc = acc + ga * gb * gc * v
                acc = acc * quarter
                if acc:
                    table[(a, b, c)] = acc
    return table


def gamma_images(g: GammaCoeffs):
    """Images of ``xa[a]``, ``da[a]`` in ``H_n``: ``x_a = 1/2 sum G_a^{mn} x_mn``."""
    H = heisenberg(g.n, EUCLIDEAN)
    xs, ds = [], []
    for a in range(1, g.N + 1):
        # the ordered-pair half-sum equals the canonical-pair sum
        xs.append(linear_combination(H, [(g.get(a, m, v), H.x(m, v)) for m, v in canonical_pairs(g.n)]))
        ds.append(linear_combination(H, [(g.get(a, m, v), H.d(m, v)) for m, v in canonical_pairs(g.n)]))
    return xs, ds


def pull_back(poly: NCPoly, g: GammaCoeffs) -> NCPoly:
    """Apply the algebra map ``A_N -> H_n`` to a normal-ordered polynomial."""
    if g._images is None:
        g._images = gamma_images(g)
    xs, ds = g._images
    H = xs[0].alg
    N = g.N
    cache: dict = {}

    def power(kind, i, e):
        key = (kind, i, e)
        if key not in cache:
            base = xs[i] if kind == "x" else ds[i]
            cache[key] = base ** e
        return cache[key]

    items = []
    for mono, c in poly.terms.items():
        img = H.one()
        for i in range(N):
            if mono[i]:
                img = img * power("x", i, mono[i])
        for i in range(N):
            if mono[N + i]:
                img = img * power("d", i, mono[N + i])
        items.append((c, img))
    return linear_combination(H, items)


def weyl_realization_of_rotations(g: GammaCoeffs, D: int) -> Realization:
    """``M_a`` realized by the symmetric Weyl series in ``A_N`` (labels ``Ma[a]``)."""
    return realize_weyl_series(structure_constants_product(g), D, "Ma", f"so-weyl-{g.name}")


def gamma_transport(g: GammaCoeffs, D: int) -> Realization:
    """Realization of ``M[m,n]`` in ``H_n`` obtained through ``A_N``."""
    ma = weyl_realization_of_rotations(g, D)
    A = ma.alg
    H = heisenberg(g.n, EUCLIDEAN)
    values = {}
    for mu, nu in canonical_pairs(g.n):
        in_a = linear_combination(A, [(g.down(a, mu, nu), ma[Label("Ma", (a,))])
                                      for a in range(1, g.N + 1)])
        values[Label("M", (mu, nu))] = pull_back(in_a, g)
    return Realization(f"gamma-{g.name}", H, D, values)
