"""Target Lie algebras as bracket evaluators on generator labels."""
from __future__ import annotations

import re
from itertools import combinations
from typing import Callable, NamedTuple

from .exactnum import ZERO, GaussianRational, I
from .ncalgebra import EUCLIDEAN, MINKOWSKI, Metric, canonical_pairs, make_metric

_KIND_ORDER = {"P": 0, "M": 1, "L": 2, "X": 3, "Ma": 4}


class Label(NamedTuple):
    """Abstract generator: ``M[m,n]`` (m < n), ``L[m,n]``, ``P[m]``, ``X[m]``, ``Ma[a]``."""

    kind: str
    idx: tuple

    def __str__(self):
        return f"{self.kind}[{','.join(map(str, self.idx))}]"

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.idx)


_LABEL_RE = re.compile(r"(Ma|M|L|P|X)\[(\d+)(?:,(\d+))?\]")


def parse_label(text: str) -> Label:
    m = _LABEL_RE.fullmatch(text.replace(" ", ""))
    if m is None:
        raise ValueError(f"bad label syntax: {text!r}")
    kind = m.group(1)
    idx = (int(m.group(2)),) if m.group(3) is None else (int(m.group(2)), int(m.group(3)))
    if (kind in ("M", "L")) != (len(idx) == 2):
        raise ValueError(f"wrong number of indices in {text!r}")
    if kind == "M" and idx[0] >= idx[1]:
        raise ValueError(f"M labels must have lo < hi: {text!r}")
    return Label(kind, idx)


def M(mu, nu):
    """``(sign, label)`` for the rotation generator ``M[mu,nu]``; sign 0 on the diagonal."""
    if mu == nu:
        return 0, None
    return (1, Label("M", (mu, nu))) if mu < nu else (-1, Label("M", (nu, mu)))


def Lam(mu, nu):
    return Label("L", (mu, nu))


def P(mu):
    return Label("P", (mu,))


def X(mu):
    return Label("X", (mu,))


Combo = list  # list of (GaussianRational, Label)


def _collect(items) -> Combo:
    acc: dict = {}
    for c, lab in items:
        if lab is None or not c:
            continue
        acc[lab] = acc.get(lab, ZERO) + GaussianRational.coerce(c)
    return [(c, lab) for lab, c in sorted(acc.items(), key=lambda kv: kv[0].sort_key()) if c]


def _m_term(c, mu, nu):
    s, lab = M(mu, nu)
    return (c * s, lab)


def spacetime_bracket(g: Metric) -> Callable[[Label, Label], Combo]:
    """Brackets among ``M``, ``L`` (quantum angles) and ``P`` for the metric ``g``."""

    def ordered(a: Label, b: Label) -> Combo | None:
        if a.kind == "M" and b.kind == "M":
            mu, nu = a.idx
            lam, rho = b.idx
            return _collect([
                _m_term(g(nu, lam), mu, rho), _m_term(-g(mu, lam), nu, rho),
                _m_term(-g(nu, rho), mu, lam), _m_term(g(mu, rho), nu, lam)])
        if a.kind == "M" and b.kind == "L":
            mu, nu = a.idx
            rho, sig = b.idx
            return _collect([(g(rho, nu), Lam(mu, sig)), (-g(rho, mu), Lam(nu, sig))])
        if a.kind == "M" and b.kind == "P":
            mu, nu = a.idx
            (lam,) = b.idx
            return _collect([(g(nu, lam), P(mu)), (-g(mu, lam), P(nu))])
        if a.kind in ("L", "P") and b.kind in ("L", "P"):
            return []
        return None

    def bracket(a: Label, b: Label) -> Combo:
        out = ordered(a, b)
        if out is not None:
            return out
        out = ordered(b, a)
        if out is None:
            raise KeyError(f"no bracket defined for {a}, {b}")
        return [(-c, lab) for c, lab in out]

    return bracket


class LiePresentation:
    """Finite set of labels with a bilinear bracket ``label x label -> combo``."""

    def __init__(self, variant: str, labels, bracket: Callable[[Label, Label], Combo],
                 metric: Metric | None = None):
        self.variant = variant
        self.labels = sorted(labels, key=Label.sort_key)
        self._bracket = bracket
        self.metric = metric
        self._label_set = set(self.labels)

    def bracket(self, a: Label, b: Label) -> Combo:
        if a not in self._label_set or b not in self._label_set:
            raise KeyError(f"label outside presentation {self.variant}: {a}, {b}")
        if a == b:
            return []
        return self._bracket(a, b)

    def bracket_combo(self, x: Combo, y: Combo) -> Combo:
        items = []
        for cx, a in x:
            for cy, b in y:
                for c, lab in self.bracket(a, b):
                    items.append((cx * cy * c, lab))
        return _collect(items)

    def pairs(self):
        return list(combinations(self.labels, 2))

    def structure_constants(self) -> dict:
        """Sparse ``{(a, b, c): C_abc}`` over label positions (1-based)."""
        pos = {lab: i + 1 for i, lab in enumerate(self.labels)}
        table = {}
        for a in self.labels:
            for b in self.labels:
                for c, lab in self.bracket(a, b):
                    table[(pos[a], pos[b], pos[lab])] = c
        return table

    def __repr__(self):
        return f"LiePresentation({self.variant!r}, {len(self.labels)} labels)"


def _rotation_labels(n):
    return [Label("M", pq) for pq in canonical_pairs(n)]


def _lambda_labels(n):
    return [Lam(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]


def so_presentation(n: int) -> LiePresentation:
    g = make_metric(n, EUCLIDEAN)
    return LiePresentation("so", _rotation_labels(n), spacetime_bracket(g), g)


def lorentz_presentation(n: int) -> LiePresentation:
    g = make_metric(n, MINKOWSKI)
    return LiePresentation("lorentz", _rotation_labels(n), spacetime_bracket(g), g)


def extended_presentation(n: int, kind: str = EUCLIDEAN) -> LiePresentation:
    """Rotations plus quantum angles ``L[m,n]`` (commuting among themselves)."""
    g = make_metric(n, kind)
    name = "extended-so" if kind == EUCLIDEAN else "extended-lorentz"
    return LiePresentation(name, _rotation_labels(n) + _lambda_labels(n), spacetime_bracket(g), g)


def poincare_presentation(n: int, kind: str = MINKOWSKI) -> LiePresentation:
    g = make_metric(n, kind)
    labels = [P(a) for a in range(1, n + 1)] + _rotation_labels(n)
    return LiePresentation("poincare", labels, spacetime_bracket(g), g)


def extended_poincare_presentation(n: int, kind: str = MINKOWSKI) -> LiePresentation:
    g = make_metric(n, kind)
    labels = [P(a) for a in range(1, n + 1)] + _rotation_labels(n) + _lambda_labels(n)
    return LiePresentation("extended-poincare", labels, spacetime_bracket(g), g)


# structure-constant tables ----------------------------------------------------

def as_constants(C, dim: int | None = None) -> tuple[int, dict]:
    """Normalize a dense ``C[mu][nu][alpha]`` (0-based lists) or a sparse
    1-based ``{(mu, nu, alpha): c}`` dict to ``(m, sparse dict)``.

    A sparse table cannot encode its own size when generators are central,
    so ``dim`` may be given explicitly.
    """
    if isinstance(C, dict):
        m = max((max(k) for k in C), default=0)
        if dim is not None:
            if dim < m:
                raise ValueError(f"table mentions index {m} > dim {dim}")
            m = dim
        if m < 1:
            raise ValueError("structure constants need at least one generator")
        return m, {k: GaussianRational.coerce(v) for k, v in C.items() if v}
    m = len(C)
    if dim is not None and dim != m:
        raise ValueError(f"dense table has size {m}, expected {dim}")
    table = {}
    for a in range(m):
        for b in range(m):
            for c in range(m):
                v = GaussianRational.coerce(C[a][b][c])
                if v:
                    table[(a + 1, b + 1, c + 1)] = v
    return m, table


def kappa_constants(a) -> dict:
    """``[X_m, X_n] = i (a_m X_n - a_n X_m)`` as a sparse constant table."""
    a = [GaussianRational.coerce(v) for v in a]
    n = len(a)
    table = {}
    for mu in range(1, n + 1):
        for nu in range(1, n + 1):
            for al in range(1, n + 1):
                v = I * (a[mu - 1] * (nu == al) - a[nu - 1] * (mu == al))
                if v:
                    table[(mu, nu, al)] = v
    return table


def is_antisymmetric(m: int, table: dict) -> bool:
    return all(table.get((b, a, c), ZERO) == -v for (a, b, c), v in table.items())


def jacobi_constants(m: int, table: dict) -> bool:
    """Index form of the Jacobi identity over every ``(mu, al, be, nu)``.

    ``sum_r C[mu,al,r] C[r,be,nu] + C[al,be,r] C[r,mu,nu] + C[be,mu,r] C[r,al,nu] = 0``
    """
    get = table.get
    rng = range(1, m + 1)
    for mu in rng:
        for al in rng:
            for be in rng:
                for nu in rng:
                    acc = ZERO
                    for r in rng:
                        for (x, y, z, w) in ((mu, al, be, nu), (al, be, mu, nu), (be, mu, al, nu)):
                            c1 = get((x, y, r))
                            if c1 is None:
                                continue
                            c2 = get((r, z, w))
                            if c2 is not None:
                                acc = acc + c1 * c2
                    if acc:
                        return False
    return True


def constants_presentation(C, label_kind: str = "X", variant: str = "custom",
                           dim: int | None = None) -> LiePresentation:
    """Presentation from a structure-constant table; antisymmetry and Jacobi are checked."""
    m, table = as_constants(C, dim)
    if not is_antisymmetric(m, table):
        raise ValueError("structure constants are not antisymmetric")
    if not jacobi_constants(m, table):
        raise ValueError("structure constants violate the Jacobi identity")
    labels = [Label(label_kind, (a,)) for a in range(1, m + 1)]

    def bracket(x: Label, y: Label) -> Combo:
        a, b = x.idx[0], y.idx[0]
        return _collect([(table.get((a, b, c), ZERO), Label(label_kind, (c,)))
                         for c in range(1, m + 1)])

    pres = LiePresentation(variant, labels, bracket)
    pres.constants = table
    return pres


def kappa_presentation(a) -> LiePresentation:
    return constants_presentation(kappa_constants(a), "X", "kappa", len(a))
