"""Order-by-order checks of realizations and of the matrix identities.

Brackets of two realizations truncated at d-degree ``D`` are exact up to
d-degree ``D - 1`` only: a term of degree ``d`` in ``[A, B]`` collects
contributions from series orders ``a + b = d + 1``.  All comparisons are
therefore made at ``D - 1``, except between two derivative-only values,
whose commutator is compared untruncated.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .exactnum import ONE, GaussianRational
from .gamma import GammaCoeffs, weyl_realization_of_rotations
from .ncalgebra import (EUCLIDEAN, NCPoly, act, commutator, heisenberg,
                        linear_combination, make_metric, mul, truncate)
from .opmatrix import (closed_form_k_power, exp_partial, identity_matrix, k_matrix, mat_mul,
                       partial_matrix)
from .presentations import Label, LiePresentation, _collect, is_antisymmetric, jacobi_constants
from .realize import Realization


@dataclass
class PairResult:
    g1: Label
    g2: Label
    residual: NCPoly
    exact: bool = False

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()


@dataclass
class BracketReport:
    suite: str
    n: int
    metric: str
    degree: int
    cmp_degree: int
    pairs: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(p.ok for p in self.pairs)

    @property
    def max_residual_terms(self) -> int:
        return max((len(p.residual) for p in self.pairs), default=0)

    def failures(self) -> list[PairResult]:
        return [p for p in self.pairs if not p.ok]

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "n": self.n,
            "metric": self.metric,
            "degree": self.degree,
            "cmpDegree": self.cmp_degree,
            "pairs": [{"g1": str(p.g1), "g2": str(p.g2), "residualTerms": len(p.residual),
                       **({"exact": True} if p.exact else {})} for p in self.pairs],
            "pass": self.passed,
            "maxResidualTerms": self.max_residual_terms,
        }
        if timing:
            out["elapsedMs"] = int(round(self.elapsed_ms))
        return out


def _pair_residual(r: Realization, g1: Label, g2: Label, rhs_combo, cmp_degree: int):
    a, b = r.values[g1], r.values[g2]
    exact = a.is_dpoly() and b.is_dpoly()
    if exact:
        lhs = commutator(a, b)
        rhs = linear_combination(r.alg, [(c, r.values[lab]) for c, lab in rhs_combo])
    else:
        lhs = commutator(a, b, dmax=cmp_degree)
        rhs = truncate(linear_combination(r.alg, [(c, r.values[lab]) for c, lab in rhs_combo]),
                       cmp_degree)
    return PairResult(g1, g2, lhs - rhs, exact)


def _chunk_worker(args):
    r, jobs, cmp_degree = args
    return [_pair_residual(r, g1, g2, combo, cmp_degree) for g1, g2, combo in jobs]


def check_bracket(r: Realization, p: LiePresentation, D: int | None = None,
                  jobs: int = 1, suite: str | None = None) -> BracketReport:
    """Residual ``[r(g1), r(g2)] - r([g1, g2])`` for every label pair, up to degree ``D - 1``."""
    D = r.degree if D is None else D
    if D < 1:
        raise ValueError("bracket checks need truncation degree D >= 1")
    if r.degree < D:
        raise ValueError(f"realization truncated at {r.degree} < requested degree {D}")
    missing = [lab for lab in p.labels if lab not in r.values]
    if missing:
        raise ValueError(f"realization lacks labels {', '.join(map(str, missing))}")
    cmp_degree = D - 1
    start = time.perf_counter()
    # bracket evaluators may be closures, so workers only receive their results
    pairs = [(g1, g2, p.bracket(g1, g2)) for g1, g2 in p.pairs()]
    if jobs > 1 and len(pairs) > 1:
        chunks = [pairs[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_chunk_worker, [(r, ch, cmp_degree) for ch in chunks]))
        order = {(g1, g2): i for i, (g1, g2, _) in enumerate(pairs)}
        results = sorted((res for part in parts for res in part),
                         key=lambda res: order[(res.g1, res.g2)])
    else:
        results = [_pair_residual(r, g1, g2, combo, cmp_degree) for g1, g2, combo in pairs]
    elapsed = (time.perf_counter() - start) * 1000
    metric = r.alg.metric.kind if r.alg.mode != "A" else "none"
    return BracketReport(suite or p.variant, r.n, metric, D, cmp_degree, results, elapsed)


def jacobi_check(p: LiePresentation) -> bool:
    """Antisymmetry of the bracket and the Jacobi identity over all label triples."""
    table = getattr(p, "constants", None)
    if table is not None:
        m = len(p.labels)
        if not (is_antisymmetric(m, table) and jacobi_constants(m, table)):
            return False
    labels = p.labels
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            ab = p.bracket(a, b)
            ba = p.bracket(b, a)
            if _collect(ab + [(-c, lab) for c, lab in ba]) != _collect([(2 * c, lab) for c, lab in ab]):
                return False
    cache = {}

    def br(x, y):
        if (x, y) not in cache:
            cache[(x, y)] = p.bracket(x, y)
        return cache[(x, y)]

    for i, a in enumerate(labels):
        for j in range(i + 1, len(labels)):
            b = labels[j]
            for c in labels[j + 1:]:
                items = []
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    for coef, lab in br(x, y):
                        items.extend((coef * c2, lab2) for c2, lab2 in br(lab, z))
                if _collect(items):
                    return False
    return True


def k_power_closed_form_check(n: int, m_max: int, metric: str = EUCLIDEAN) -> bool:
    """Recursive powers of ``K`` equal the binomial closed form for ``m <= m_max``."""
    K = k_matrix(n, metric)
    return all(K.power(m) == closed_form_k_power(n, metric, m, K.alg) for m in range(m_max + 1))


def partial_commutator_sides(n: int, m: int, al: int, be: int, rho: int, sig: int, _cache={}):
    """Three evaluations of ``[x[al,be], (d^m)[rho,sig]]``: normal ordering,
    the ``K``-power formula, and the alternating binomial-free sum."""
    key = n
    if key not in _cache:
        H = heisenberg(n, EUCLIDEAN)
        _cache[key] = (H, partial_matrix(n, EUCLIDEAN, H), k_matrix(n, EUCLIDEAN, H))
    H, dm, K = _cache[key]
    lhs = commutator(H.x(al, be), dm.power(m)[rho, sig])
    items = []
    for k in range(1, m + 1):
        sign = -1 if (k - 1) % 2 else 1
        Kk = K.power(k - 1)
        for mu in range(1, n + 1):
            items.append((2 * comb(m, k) * sign, mul(Kk[(al, be), (mu, rho)], dm.power(m - k)[mu, sig])))
    via_k = linear_combination(H, items)
    items = []
    for p in range(1, m + 1):
        sign = -1 if (p - 1) % 2 else 1
        items.append((sign, mul(dm.power(m - p)[al, sig], dm.power(p - 1)[be, rho])))
        items.append((-sign, mul(dm.power(p - 1)[al, rho], dm.power(m - p)[be, sig])))
    alternating = linear_combination(H, items)
    return lhs, via_k, alternating


def partial_commutator_check(n: int, m_max: int) -> bool:
    rng = range(1, n + 1)
    for m in range(1, m_max + 1):
        for al in rng:
            for be in rng:
                for rho in rng:
                    for sig in rng:
                        lhs, via_k, alt = partial_commutator_sides(n, m, al, be, rho, sig)
                        if not (lhs == via_k == alt):
                            return False
    return True


def weyl_property_check(g: GammaCoeffs, k, m_max: int) -> bool:
    """``(sum k_a M_a)^m |> 1 == (sum k_a x_a)^m`` in ``A_N`` for ``m <= m_max``."""
    r = weyl_realization_of_rotations(g, m_max)
    A = r.alg
    k = [GaussianRational.coerce(v) for v in k]
    if len(k) != g.N:
        raise ValueError(f"k must have {g.N} components")
    L = linear_combination(A, [(k[a], r[Label("Ma", (a + 1,))]) for a in range(g.N)])
    kx = linear_combination(A, [(k[a], A.xa(a + 1)) for a in range(g.N)])
    lhs, rhs = A.one(), A.one()
    for _ in range(m_max):
        lhs = act(L, lhs)
        rhs = mul(rhs, kx)
        if lhs != rhs:
            return False
    return True


def weyl_property_check_hn(r: Realization, k: dict, m_max: int) -> bool:
    """Same property for a rotation realization in ``H_n``; ``k`` maps
    canonical pairs to coefficients.  Reported, not asserted."""
    H = r.alg
    L = linear_combination(H, [(c, r[Label("M", pq)]) for pq, c in k.items()])
    kx = linear_combination(H, [(c, H.x(*pq)) for pq, c in k.items()])
    lhs, rhs = H.one(), H.one()
    for _ in range(m_max):
        lhs = act(L, lhs)
        rhs = mul(rhs, kx)
        if lhs != rhs:
            return False
    return True


def lambda_group_check(n: int, metric: str = EUCLIDEAN, D: int = 4) -> bool:
    """``L^T g L = g`` and ``L g L^T = g`` for ``L = exp(d)``, up to d-degree ``D``."""
    g = make_metric(n, metric)
    lam = exp_partial(n, g, D)
    target = identity_matrix(lam.row, g, lam.alg)
    left = mat_mul(lam.transpose(), lam, dmax=D)
    right = mat_mul(lam, lam.transpose(), dmax=D)
    return left.truncate(D) == target and right.truncate(D) == target


def mutate(r: Realization, rng: random.Random, delta=ONE):
    """Add ``delta`` to one randomly chosen retained coefficient."""
    choices = [(lab, mono) for lab in r.labels for mono in sorted(r.values[lab].terms)]
    lab, mono = rng.choice(choices)
    poly = r.values[lab]
    terms = dict(poly.terms)
    terms[mono] = terms[mono] + GaussianRational.coerce(delta)
    return lab, mono, r.replace(lab, NCPoly.from_raw(r.alg, terms))


def mutation_trials(cases, trials: int = 50, seed: int = 0,
                    by_coefficient: bool = False) -> list[tuple]:
    """Perturb one coefficient per trial and re-run the bracket check.

    ``cases`` is a list of ``(realization, presentation)`` pairs.  Each trial
    picks a case uniformly (or, with ``by_coefficient``, a retained
    coefficient uniformly across all cases), mutates it, and records
    ``(case index, label, monomial, detected)``.
    """
    rng = random.Random(seed)
    sizes = [sum(len(v) for v in r.values.values()) for r, _ in cases]
    out = []
    for _ in range(trials):
        if by_coefficient:
            idx = rng.choices(range(len(cases)), weights=sizes)[0]
        else:
            idx = rng.randrange(len(cases))
        r, p = cases[idx]
        lab, mono, bad = mutate(r, rng)
        detected = not check_bracket(bad, p).passed
        out.append((idx, lab, r.alg.format_monomial(mono), detected))
    return out
