"""Matrices over the commutative derivative subalgebra.

Rows and columns are indexed either by vectors ``1..n`` or by antisymmetric
index pairs.  Pair-indexed matrices are stored on canonical pairs ``lo < hi``
only; lookups with swapped indices pick up a sign and diagonal pairs are 0.

Products contract with the metric inserted, ``sum g(l,l') g(r,r')`` for pair
indices and ``sum g(l,l')`` for vector indices.  The sum over ordered pairs is
evaluated as twice the sum over canonical pairs, which is valid because every
matrix built here is antisymmetric in each index pair.
"""
from __future__ import annotations

import threading
from math import comb, factorial
from typing import NamedTuple

from gmpy2 import mpq

from .exactnum import ZERO, GaussianRational, psi_coeff, psi_inv_coeff
from .ncalgebra import (EUCLIDEAN, MINKOWSKI, Algebra, Metric, NCPoly, _algebra,
                        canonical_pairs, extended_heisenberg, heisenberg,
                        linear_combination, make_metric, mul, truncate)

VEC = "vec"
PAIR = "pair"
HALF = GaussianRational(mpq(1, 2))


class Space(NamedTuple):
    kind: str
    n: int

    def indices(self) -> list:
        if self.kind == VEC:
            return list(range(1, self.n + 1))
        return canonical_pairs(self.n)

    def canonical(self, idx):
        """``(sign, canonical index)``; sign 0 for a diagonal pair."""
        if self.kind == VEC:
            return 1, idx
        a, b = idx
        if a == b:
            return 0, None
        return (1, (a, b)) if a < b else (-1, (b, a))

    def weight(self, idx, metric: Metric) -> int:
        """Contraction weight of a canonical index (factor 2 for ordered pairs)."""
        if self.kind == VEC:
            return metric.sign(idx)
        return 2 * metric.sign(idx[0]) * metric.sign(idx[1])

    def __str__(self):
        return f"{self.kind}({self.n})"


def vec_space(n: int) -> Space:
    return Space(VEC, n)


def pair_space(n: int) -> Space:
    return Space(PAIR, n)


def _parse_space(text: str) -> Space:
    kind, _, rest = text.partition("(")
    return Space(kind, int(rest.rstrip(")")))


class OpMatrix:
    """Matrix of derivative-only polynomials, dense over canonical indices."""

    def __init__(self, row: Space, col: Space, metric: Metric, alg: Algebra,
                 entries: dict | None = None):
        self.row = row
        self.col = col
        self.metric = metric
        self.alg = alg
        zero = alg.zero()
        entries = entries or {}
        self.entries = {(r, c): entries.get((r, c), zero)
                        for r in row.indices() for c in col.indices()}
        self._powers = {}
        self._lock = threading.Lock()

    def __getitem__(self, key) -> NCPoly:
        r, c = key
        sr, r = self.row.canonical(r)
        sc, c = self.col.canonical(c)
        if not sr or not sc:
            return self.alg.zero()
        value = self.entries[(r, c)]
        return value if sr * sc == 1 else -value

    def _same_shape(self, other: "OpMatrix"):
        if (self.row, self.col, self.metric, self.alg) != (other.row, other.col,
                                                          other.metric, other.alg):
            raise ValueError("matrix shape/metric/algebra mismatch")

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        self._same_shape(other)
        return self._like({k: v + other.entries[k] for k, v in self.entries.items()})

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        self._same_shape(other)
        return self._like({k: v - other.entries[k] for k, v in self.entries.items()})

    def __neg__(self):
        return self._like({k: -v for k, v in self.entries.items()})

    def scale(self, c) -> "OpMatrix":
        return self._like({k: v.scale(c) for k, v in self.entries.items()})

    def __matmul__(self, other: "OpMatrix") -> "OpMatrix":
        return mat_mul(self, other)

    def __eq__(self, other):
        return (isinstance(other, OpMatrix) and self.row == other.row
                and self.col == other.col and self.metric == other.metric
                and self.entries == other.entries)

    def _like(self, entries) -> "OpMatrix":
        return OpMatrix(self.row, self.col, self.metric, self.alg, entries)

    def truncate(self, dmax: int) -> "OpMatrix":
        return self._like({k: truncate(v, dmax) for k, v in self.entries.items()})

    def transpose(self) -> "OpMatrix":
        return OpMatrix(self.col, self.row, self.metric, self.alg,
                        {(c, r): v for (r, c), v in self.entries.items()})

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.entries.values())

    def max_d_degree(self) -> int:
        return max((v.d_degree() for v in self.entries.values()), default=-1)

    def identity(self) -> "OpMatrix":
        if self.row != self.col:
            raise ValueError("identity needs a square matrix")
        return identity_matrix(self.row, self.metric, self.alg)

    def power(self, k: int) -> "OpMatrix":
        """Memoized ``self^k`` via ``M^k = M^(k-1) M``."""
        if k < 0:
            raise ValueError("negative power")
        with self._lock:
            if k not in self._powers:
                if not self._powers:
                    self._powers[0] = self.identity()
                    self._powers[1] = self
                for j in range(2, k + 1):
                    if j not in self._powers:
                        self._powers[j] = mat_mul(self._powers[j - 1], self)
            return self._powers[k]

    def to_json(self) -> dict:
        def idx(i):
            return list(i) if isinstance(i, tuple) else i
        return {
            "rowSpace": str(self.row),
            "colSpace": str(self.col),
            "metric": self.metric.kind,
            "mode": self.alg.mode,
            "n": self.alg.n,
            "entries": [{"row": idx(r), "col": idx(c), "poly": self.entries[(r, c)].to_terms()}
                        for r in self.row.indices() for c in self.col.indices()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "OpMatrix":
        alg = _algebra(data["mode"], data["n"], data["metric"] if data["mode"] != "A" else EUCLIDEAN)
        row, col = _parse_space(data["rowSpace"]), _parse_space(data["colSpace"])
        metric = make_metric(row.n, data["metric"])
        entries = {}
        for e in data["entries"]:
            r = tuple(e["row"]) if isinstance(e["row"], list) else e["row"]
            c = tuple(e["col"]) if isinstance(e["col"], list) else e["col"]
            entries[(r, c)] = NCPoly.from_terms(alg, e["poly"])
        return cls(row, col, metric, alg, entries)

    def __repr__(self):
        return f"OpMatrix({self.row} x {self.col}, {self.metric.kind})"


def mat_mul(a: OpMatrix, b: OpMatrix, dmax: int | None = None) -> OpMatrix:
    """Metric-contracted product over the shared index space."""
    if a.col != b.row:
        raise ValueError(f"cannot contract {a.col} with {b.row}")
    if a.metric != b.metric or a.alg != b.alg:
        raise ValueError("metric/algebra mismatch")
    inner = [(k, a.col.weight(k, a.metric)) for k in a.col.indices()]
    entries = {}
    for r in a.row.indices():
        for c in b.col.indices():
            acc: dict = {}
            for k, w in inner:
                left = a.entries[(r, k)]
                right = b.entries[(k, c)]
                if not left.terms or not right.terms:
                    continue
                for m, v in mul(left, right, dmax).terms.items():
                    acc[m] = acc.get(m, ZERO) + v * w
            entries[(r, c)] = NCPoly.from_raw(a.alg, acc)
    return OpMatrix(a.row, b.col, a.metric, a.alg, entries)


def naive_pair_mul(a: OpMatrix, b: OpMatrix) -> OpMatrix:
    """Pair contraction over all ordered pairs with explicit metric factors.

    Reference implementation for :func:`mat_mul`; no antisymmetry shortcut.
    """
    if a.col.kind != PAIR or a.col != b.row:
        raise ValueError("naive_pair_mul needs a pair-indexed contraction")
    g = a.metric
    n = a.col.n
    entries = {}
    for r in a.row.indices():
        for c in b.col.indices():
            items = []
            for lam in range(1, n + 1):
                for rho in range(1, n + 1):
                    for lam2 in range(1, n + 1):
                        for rho2 in range(1, n + 1):
                            w = g(lam, lam2) * g(rho, rho2)
                            if w:
                                items.append((w, mul(a[r, (lam, rho)], b[(lam2, rho2), c])))
            entries[(r, c)] = linear_combination(a.alg, items)
    return OpMatrix(a.row, b.col, a.metric, a.alg, entries)


def identity_matrix(space: Space, metric: Metric, alg: Algebra) -> OpMatrix:
    """Unit for :func:`mat_mul`: ``g`` on vectors, ``(g g - g g)/2`` on pairs."""
    entries = {}
    for i in space.indices():
        if space.kind == VEC:
            entries[(i, i)] = alg.scalar(metric.sign(i))
        else:
            entries[(i, i)] = alg.scalar(HALF * (metric.sign(i[0]) * metric.sign(i[1])))
    return OpMatrix(space, space, metric, alg, entries)


def _default_alg(n, metric: Metric, alg):
    if n < 2:
        raise ValueError("dimension n must be at least 2")
    return alg if alg is not None else heisenberg(n, metric.kind)


def k_matrix(n: int, metric: Metric | str = EUCLIDEAN, alg: Algebra | None = None) -> OpMatrix:
    """The pair-indexed matrix ``K`` of first-order derivative entries."""
    metric = _as_metric(n, metric)
    alg = _default_alg(n, metric, alg)
    g = metric
    entries = {}
    for mu, nu in canonical_pairs(n):
        for al, be in canonical_pairs(n):
            items = [(g(mu, al), alg.d(nu, be)), (-g(mu, be), alg.d(nu, al)),
                     (g(nu, be), alg.d(mu, al)), (-g(nu, al), alg.d(mu, be))]
            entries[((mu, nu), (al, be))] = linear_combination(alg, items).scale(HALF)
    space = pair_space(n)
    return OpMatrix(space, space, metric, alg, entries)


def partial_matrix(n: int, metric: Metric | str = EUCLIDEAN, alg: Algebra | None = None) -> OpMatrix:
    """Vector-indexed matrix with entries ``d[mu,nu]``."""
    metric = _as_metric(n, metric)
    alg = _default_alg(n, metric, alg)
    space = vec_space(n)
    entries = {(mu, nu): alg.d(mu, nu) for mu in space.indices() for nu in space.indices()}
    return OpMatrix(space, space, metric, alg, entries)


def _as_metric(n, metric) -> Metric:
    return make_metric(n, metric) if isinstance(metric, str) else metric


def _check_linear(m):
    for block in (m.blocks() if isinstance(m, BlockMatrix) else (m,)):
        for v in block.entries.values():
            if any(v.d_degree_of(mono) != 1 or v.x_degree_of(mono) for mono in v.terms):
                raise ValueError("series argument must have homogeneous first-order "
                                 "derivative entries")


def power_series_of(m, coeffs) -> "OpMatrix | BlockMatrix":
    """``sum_k coeffs[k] * m^k`` for a matrix with first-order entries."""
    _check_linear(m)
    result = None
    for k, c in enumerate(coeffs):
        if not c:
            continue
        term = m.power(k).scale(c)
        result = term if result is None else result + term
    if result is None:
        result = m.power(0).scale(0)
    return result


def psi_of(m, dmax: int):
    """Truncated ``psi(m) = m / (1 - exp(-m))``."""
    return power_series_of(m, [psi_coeff(k) for k in range(dmax + 1)])


def psi_inv_of(m, dmax: int):
    """Truncated ``(1 - exp(-m)) / m``."""
    return power_series_of(m, [psi_inv_coeff(k) for k in range(dmax + 1)])


def exp_partial(n: int, metric: Metric | str = EUCLIDEAN, dmax: int = 4,
                alg: Algebra | None = None) -> OpMatrix:
    """``sum_{m <= dmax} d^m / m!`` with ``(d^0) = g`` and ``d^m = d^(m-1) g d``."""
    metric = _as_metric(n, metric)
    dm = partial_matrix(n, metric, alg)
    return power_series_of(dm, [mpq(1, factorial(k)) for k in range(dmax + 1)])


def closed_form_k_power(n: int, metric: Metric | str = EUCLIDEAN, m: int = 1,
                        alg: Algebra | None = None) -> OpMatrix:
    """Binomial closed form of ``K^m`` in terms of powers of the matrix ``d``.

    ``(K^m)[(mu,nu),(a,b)] = 1/2 sum_k C(m,k) ((d^k)[mu,a] (d^(m-k))[nu,b]
    - (d^(m-k))[mu,b] (d^k)[nu,a])``.  Proven for the Euclidean metric; the
    Minkowski version (metric-contracted powers of ``d``) is an extension.
    """
    metric = _as_metric(n, metric)
    dm = partial_matrix(n, metric, alg)
    alg = dm.alg
    powers = [dm.power(k) for k in range(m + 1)]
    entries = {}
    for mu, nu in canonical_pairs(n):
        for a, b in canonical_pairs(n):
            items = []
            for k in range(m + 1):
                c = comb(m, k)
                items.append((c, mul(powers[k][mu, a], powers[m - k][nu, b])))
                items.append((-c, mul(powers[m - k][mu, b], powers[k][nu, a])))
            entries[((mu, nu), (a, b))] = linear_combination(alg, items).scale(HALF)
    space = pair_space(n)
    return OpMatrix(space, space, metric, alg, entries)


class BlockMatrix:
    """Lower block-triangular ``[[A, 0], [C, D]]`` on ``vec(n) + pair(n)``."""

    def __init__(self, A: OpMatrix, C: OpMatrix, D: OpMatrix):
        n = A.row.n
        if (A.row, A.col, C.row, C.col, D.row, D.col) != (
                vec_space(n), vec_space(n), pair_space(n), vec_space(n),
                pair_space(n), pair_space(n)):
            raise ValueError("inconsistent block spaces")
        self.A, self.C, self.D = A, C, D
        self.metric = A.metric
        self.alg = A.alg
        self.n = n
        self._powers = {}
        self._lock = threading.Lock()

    def blocks(self):
        return (self.A, self.C, self.D)

    @property
    def upper_right(self) -> OpMatrix:
        return OpMatrix(vec_space(self.n), pair_space(self.n), self.metric, self.alg)

    def __matmul__(self, other: "BlockMatrix") -> "BlockMatrix":
        return BlockMatrix(self.A @ other.A, self.C @ other.A + self.D @ other.C,
                           self.D @ other.D)

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        return BlockMatrix(self.A + other.A, self.C + other.C, self.D + other.D)

    def __eq__(self, other):
        return isinstance(other, BlockMatrix) and self.blocks() == other.blocks()

    def scale(self, c) -> "BlockMatrix":
        return BlockMatrix(self.A.scale(c), self.C.scale(c), self.D.scale(c))

    def truncate(self, dmax) -> "BlockMatrix":
        return BlockMatrix(*(b.truncate(dmax) for b in self.blocks()))

    def identity(self) -> "BlockMatrix":
        return BlockMatrix(self.A.identity(), OpMatrix(self.C.row, self.C.col, self.metric, self.alg),
                           self.D.identity())

    def power(self, m: int) -> "BlockMatrix":
        with self._lock:
            if m not in self._powers:
                self._powers[m] = ktilde_power(self, m)
            return self._powers[m]

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "C": self.C.to_json(), "D": self.D.to_json()}


def ktilde(n: int, metric: Metric | str = MINKOWSKI, alg: Algebra | None = None) -> BlockMatrix:
    """Blocks ``A = d[mu,nu]``, ``C[(mu,nu),a] = g(a,mu) dv[nu] - g(a,nu) dv[mu]``, ``D = K``."""
    metric = _as_metric(n, metric)
    if n < 2:
        raise ValueError("dimension n must be at least 2")
    alg = alg if alg is not None else extended_heisenberg(n, metric.kind)
    g = metric
    A = partial_matrix(n, metric, alg)
    C = OpMatrix(pair_space(n), vec_space(n), metric, alg, {
        ((mu, nu), a): linear_combination(alg, [(g(a, mu), alg.dv(nu)), (-g(a, nu), alg.dv(mu))])
        for mu, nu in canonical_pairs(n) for a in range(1, n + 1)})
    D = k_matrix(n, metric, alg)
    return BlockMatrix(A, C, D)


def ktilde_power(kt: BlockMatrix, m: int) -> BlockMatrix:
    """Blocks ``A^m``, ``sum_{k<m} D^k C A^(m-k-1)`` and ``D^m``."""
    if m < 0:
        raise ValueError("negative power")
    if m == 0:
        return kt.identity()
    lower = None
    for k in range(m):
        term = kt.D.power(k) @ kt.C @ kt.A.power(m - k - 1)
        lower = term if lower is None else lower + term
    return BlockMatrix(kt.A.power(m), lower, kt.D.power(m))
