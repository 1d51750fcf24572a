"""Truncated realizations of rotation, Lorentz and Poincare generators.

Every constructor returns a :class:`Realization`: a map from abstract labels
to normal-ordered polynomials whose d-degree does not exceed ``degree``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .exactnum import ONE, ZERO, GaussianRational, I, exp_coeffs, series_inverse, series_mul
from .ncalgebra import (EUCLIDEAN, MINKOWSKI, Algebra, NCPoly, _algebra, canonical_pairs,
                        extended_heisenberg, heisenberg, linear_combination, make_metric,
                        mul, truncate, weyl)
from .opmatrix import (OpMatrix, exp_partial, k_matrix, ktilde, psi_of, vec_space)
from .presentations import Label, Lam, P, as_constants, constants_presentation, parse_label


@dataclass
class Realization:
    algebra: str
    alg: Algebra
    degree: int
    values: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.alg.n

    @property
    def labels(self) -> list[Label]:
        return sorted(self.values, key=Label.sort_key)

    def __getitem__(self, label) -> NCPoly:
        if isinstance(label, str):
            label = parse_label(label)
        return self.values[label]

    def __contains__(self, label):
        return label in self.values

    def __eq__(self, other):
        return (isinstance(other, Realization) and self.alg == other.alg
                and self.degree == other.degree and self.values == other.values)

    def merged(self, other: "Realization", name: str) -> "Realization":
        if self.alg != other.alg or self.degree != other.degree:
            raise ValueError("cannot merge realizations over different algebras/degrees")
        return Realization(name, self.alg, self.degree, {**self.values, **other.values})

    def replace(self, label: Label, poly: NCPoly) -> "Realization":
        values = dict(self.values)
        values[label] = poly
        return Realization(self.algebra, self.alg, self.degree, values)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "metric": self.alg.metric.kind,
            "mode": self.alg.mode,
            "n": self.alg.n,
            "degree": self.degree,
            "generators": [{"label": str(lab), "poly": self.values[lab].to_terms()}
                           for lab in self.labels],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Realization":
        alg = _algebra(data["mode"], data["n"], data["metric"])
        values = {parse_label(g["label"]): NCPoly.from_terms(alg, g["poly"])
                  for g in data["generators"]}
        return cls(data["algebra"], alg, data["degree"], values)


def _check(n, D):
    if n < 2:
        raise ValueError("dimension n must be at least 2")
    if D < 0:
        raise ValueError("degree must be non-negative")


def _rotation_values(alg: Algebra, psi: OpMatrix, D: int) -> dict:
    """``M[P] = sum_{ordered ab} x_ab g_a g_b psi[P, ab]`` as twice the canonical sum."""
    g = alg.metric
    out = {}
    for P_ in canonical_pairs(alg.n):
        items = [(2 * g.sign(a) * g.sign(b), mul(alg.x(a, b), psi.entries[(P_, (a, b))]))
                 for a, b in canonical_pairs(alg.n)]
        out[Label("M", P_)] = truncate(linear_combination(alg, items), D)
    return out


def _rotations(n, kind, D, name) -> Realization:
    _check(n, D)
    alg = heisenberg(n, kind)
    psi = psi_of(k_matrix(n, make_metric(n, kind), alg), D)
    return Realization(name, alg, D, _rotation_values(alg, psi, D))


def realize_so(n: int, D: int) -> Realization:
    """Weyl realization of so(n) in the generalized Heisenberg algebra."""
    return _rotations(n, EUCLIDEAN, D, "so")


def realize_lorentz(n: int, D: int) -> Realization:
    """Weyl realization of so(1, n-1) in the Minkowski Heisenberg algebra."""
    return _rotations(n, MINKOWSKI, D, "lorentz")


def realize_lambda(n: int, metric: str = EUCLIDEAN, D: int = 4,
                   alg: Algebra | None = None) -> Realization:
    """Quantum angles ``L[m,n] = exp(d)[m,n]``."""
    _check(n, D)
    alg = alg if alg is not None else heisenberg(n, metric)
    if alg.metric.kind != metric:
        raise ValueError("metric does not match the algebra")
    e = exp_partial(n, alg.metric, D, alg)
    values = {Lam(a, b): e[a, b] for a in range(1, n + 1) for b in range(1, n + 1)}
    return Realization("lambda", alg, D, values)


def realize_extended(n: int, metric: str = EUCLIDEAN, D: int = 4) -> Realization:
    """Rotations (or Lorentz generators) together with the quantum angles."""
    rot = realize_so(n, D) if metric == EUCLIDEAN else realize_lorentz(n, D)
    name = "extended-so" if metric == EUCLIDEAN else "extended-lorentz"
    return rot.merged(realize_lambda(n, metric, D, rot.alg), name)


def realize_poincare(n: int, D: int, metric: str = MINKOWSKI) -> Realization:
    """Momenta and Lorentz generators from ``psi`` of the block matrix ``K~``."""
    _check(n, D)
    alg = extended_heisenberg(n, metric)
    g = alg.metric
    psi = psi_of(ktilde(n, g, alg), D)
    values = {}
    for mu in range(1, n + 1):
        items = [(g.sign(a), mul(alg.p(a), psi.A[mu, a])) for a in range(1, n + 1)]
        values[P(mu)] = truncate(linear_combination(alg, items), D)
    rot = _rotation_values(alg, psi.D, D)
    for lab, xpart in rot.items():
        items = [(g.sign(a), mul(alg.p(a), psi.C[lab.idx, a])) for a in range(1, n + 1)]
        values[lab] = xpart + truncate(linear_combination(alg, items), D)
    return Realization("poincare", alg, D, values)


def realize_extended_poincare(n: int, D: int, metric: str = MINKOWSKI) -> Realization:
    base = realize_poincare(n, D, metric)
    return base.merged(realize_lambda(n, metric, D, base.alg), "extended-poincare")


def structure_matrix(C, alg: Algebra) -> OpMatrix:
    """``C[m,n] = sum_a C_{m a n} da[a]`` as a vector-indexed matrix."""
    m, table = as_constants(C, alg.n)
    entries = {}
    for mu in range(1, m + 1):
        for nu in range(1, m + 1):
            items = [(table.get((mu, a, nu), ZERO), alg.da(a)) for a in range(1, m + 1)]
            entries[(mu, nu)] = linear_combination(alg, items)
    space = vec_space(m)
    return OpMatrix(space, space, alg.metric, alg, entries)


def realize_weyl_series(C, D: int, label_kind: str = "X", name: str = "weyl-generic",
                        dim: int | None = None) -> Realization:
    """Symmetric realization ``X[m] = sum_a xa[a] psi(C)[m,a]`` in ``A_m``.

    Raises ``ValueError`` if the constants are not antisymmetric or fail Jacobi.
    """
    if D < 0:
        raise ValueError("degree must be non-negative")
    m, table = as_constants(C, dim)
    constants_presentation(table, label_kind, dim=m)  # validates
    alg = weyl(m)
    psi = psi_of(structure_matrix(table, alg), D)
    values = {}
    for mu in range(1, m + 1):
        items = [(ONE, mul(alg.xa(a), psi[mu, a])) for a in range(1, m + 1)]
        values[Label(label_kind, (mu,))] = truncate(linear_combination(alg, items), D)
    return Realization(name, alg, D, values)


def kappa_series(D: int):
    """Taylor coefficients (to order D) of ``t/(e^t - 1)`` and
    ``(e^t - t - 1)/((e^t - 1) t)``, by exact series division."""
    e = exp_coeffs(D + 2)
    num1 = e[1:D + 2]           # (e^t - 1)/t
    num2 = e[2:D + 3]           # (e^t - t - 1)/t^2
    f1 = series_inverse(num1, D)
    f2 = series_mul(num2, series_inverse(num1, D), D)
    return f1, f2


def realize_kappa_closed(n: int, a, D: int) -> Realization:
    """Closed form ``X[m] = x_m A/(e^A - 1) + i a_m (x.d) (e^A - A - 1)/((e^A - 1) A)``,
    with ``A = i sum_k a_k da[k]``, expanded to d-degree ``D``."""
    if D < 0:
        raise ValueError("degree must be non-negative")
    a = [GaussianRational.coerce(v) for v in a]
    if len(a) != n:
        raise ValueError("kappa vector must have length n")
    alg = weyl(n)
    A = linear_combination(alg, [(I * a[k], alg.da(k + 1)) for k in range(n)])
    f1, f2 = kappa_series(D)
    powers = [alg.one()]
    for _ in range(D):
        powers.append(mul(powers[-1], A))
    F1 = linear_combination(alg, zip(f1, powers))
    F2 = linear_combination(alg, zip(f2[:D], powers[:D])) if D > 0 else alg.zero()
    xd = linear_combination(alg, [(ONE, mul(alg.xa(k), alg.da(k))) for k in range(1, n + 1)])
    xdF2 = mul(xd, F2)
    values = {}
    for mu in range(1, n + 1):
        val = mul(alg.xa(mu), F1) + xdF2.scale(I * a[mu - 1])
        values[Label("X", (mu,))] = truncate(val, D)
    return Realization("kappa", alg, D, values)
