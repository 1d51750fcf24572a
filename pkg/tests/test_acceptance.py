"""Acceptance suite: every comparison is exact (tolerance zero)."""
import random
import time

from gmpy2 import mpq

from heisreal.exactnum import GaussianRational, I
from heisreal.gamma import gamma_canonical, gamma_epsilon, gamma_transport
from heisreal.ncalgebra import EUCLIDEAN, MINKOWSKI, linear_combination
from heisreal.presentations import (Label, extended_poincare_presentation, extended_presentation,
                                    kappa_constants, lorentz_presentation, poincare_presentation,
                                    so_presentation)
from heisreal.realize import (realize_extended, realize_extended_poincare,
                              realize_kappa_closed, realize_lorentz, realize_poincare,
                              realize_so, realize_weyl_series)
from heisreal.verify import (check_bracket, k_power_closed_form_check, lambda_group_check,
                             mutation_trials, partial_commutator_sides, weyl_property_check)


def criterion(number):
    def mark(fn):
        fn.criterion = number
        return fn
    return mark


def timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


def assert_clean(report):
    bad = [(str(p.g1), str(p.g2), len(p.residual)) for p in report.failures()]
    assert report.passed, f"{report.suite}: nonzero residuals {bad}"


def criterion_1_cases():
    return [(realize_so(n, 4), so_presentation(n)) for n in (2, 3, 4)]


def criterion_2_cases():
    return [(realize_lorentz(4, 4), lorentz_presentation(4))]


def criterion_3_cases():
    return [(realize_extended(n, kind, 4), extended_presentation(n, kind))
            for n in (3, 4) for kind in (EUCLIDEAN, MINKOWSKI)]


def criterion_4_cases():
    return [(realize_poincare(4, 3), poincare_presentation(4)),
            (realize_extended_poincare(4, 3), extended_poincare_presentation(4))]


@criterion(1)
def test_criterion_01_so_homomorphism():
    """so(n), n = 2, 3, 4, D = 4: all residuals vanish up to degree 3"""
    start = time.perf_counter()
    for r, p in criterion_1_cases():
        rep = check_bracket(r, p)
        assert rep.cmp_degree == 3
        assert_clean(rep)
    assert time.perf_counter() - start < 10


@criterion(2)
def test_criterion_02_lorentz_homomorphism():
    """so(1,3), D = 4: all residuals vanish up to degree 3"""
    start = time.perf_counter()
    (r, p), = criterion_2_cases()
    rep = check_bracket(r, p)
    assert rep.cmp_degree == 3 and len(rep.pairs) == 15
    assert_clean(rep)
    assert time.perf_counter() - start < 20


@criterion(3)
def test_criterion_03_extended_algebras():
    """rotations plus quantum angles, n = 3, 4, both metrics, D = 4"""
    start = time.perf_counter()
    for r, p in criterion_3_cases():
        rep = check_bracket(r, p)
        assert_clean(rep)
        n = r.n
        lam_pairs = [q for q in rep.pairs if q.g1.kind == "L" and q.g2.kind == "L"]
        assert len(lam_pairs) == n * n * (n * n - 1) // 2
        assert all(q.exact for q in lam_pairs)
        assert any(q.g1.kind == "M" and q.g2.kind == "L" for q in rep.pairs)
    assert time.perf_counter() - start < 30


@criterion(4)
def test_criterion_04_poincare():
    """Poincare and extended Poincare, n = 4, D = 3; momenta start at p"""
    start = time.perf_counter()
    for r, p in criterion_4_cases():
        rep = check_bracket(r, p)
        assert rep.cmp_degree == 2
        assert_clean(rep)
        for mu in range(1, 5):
            assert r[Label("P", (mu,))].part(0) == r.alg.p(mu)
    assert time.perf_counter() - start < 60


@criterion(5)
def test_criterion_05_k_power_closed_form():
    """closed-form powers of K equal recursive powers, n = 3, 4, m <= 6"""
    start = time.perf_counter()
    assert k_power_closed_form_check(3, 6)
    assert k_power_closed_form_check(4, 6)
    assert time.perf_counter() - start < 10


@criterion(6)
def test_criterion_06_commutator_with_partial_powers():
    """both closed forms of [x, (d^m)] equal normal ordering, n = 3, m <= 5"""
    start = time.perf_counter()
    checked = 0
    for m in range(1, 6):
        for al in range(1, 4):
            for be in range(1, 4):
                for rho in range(1, 4):
                    for sig in range(1, 4):
                        lhs, via_k, alternating = partial_commutator_sides(3, m, al, be, rho, sig)
                        assert lhs == via_k, (m, al, be, rho, sig)
                        assert lhs == alternating, (m, al, be, rho, sig)
                        checked += 1
    assert checked == 5 * 81
    assert time.perf_counter() - start < 30


@criterion(7)
def test_criterion_07_path_independence():
    """transport through a single index reproduces the direct realization"""
    for n in (3, 4):
        for D in range(5):
            assert gamma_transport(gamma_canonical(n), D).values == realize_so(n, D).values
    for D in range(5):
        assert gamma_transport(gamma_epsilon(), D).values == realize_so(3, D).values


@criterion(8)
def test_criterion_08_kappa_closed_form():
    """kappa-Minkowski closed form equals the generic series, n = 3, D = 5"""
    a = [mpq(0), mpq(0), mpq(1, 5)]
    closed = realize_kappa_closed(3, a, 5)
    series = realize_weyl_series(kappa_constants(a), 5, dim=3)
    assert closed.values == series.values
    first = realize_kappa_closed(3, a, 1)
    alg = first.alg
    half = GaussianRational(mpq(1, 2))
    big_a = linear_combination(alg, [(I * a[k], alg.da(k + 1)) for k in range(3)])
    xd = linear_combination(alg, [(1, alg.xa(k) * alg.da(k)) for k in range(1, 4)])
    for mu in range(1, 4):
        expected = alg.xa(mu) - (alg.xa(mu) * big_a).scale(half) + xd.scale(I * a[mu - 1] * half)
        assert first[Label("X", (mu,))] == expected


@criterion(9)
def test_criterion_09_weyl_property():
    """(sum k M)^m acting on 1 equals (sum k x)^m for so(3), m <= 3"""
    rng = random.Random(2024)
    for _ in range(3):
        k = [mpq(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3)]
        assert weyl_property_check(gamma_epsilon(), k, 3), k
        assert weyl_property_check(gamma_canonical(3), k, 3), k


@criterion(10)
def test_criterion_10_lambda_group():
    """exp(d) preserves the metric to degree 4"""
    for n in (2, 3, 4):
        assert lambda_group_check(n, EUCLIDEAN, 4)
    assert lambda_group_check(4, MINKOWSKI, 4)


@criterion(11)
def test_criterion_11_mutation_sensitivity():
    """one perturbed coefficient makes criteria 1-4 fail, 50 trials each"""
    suites = [criterion_1_cases(), criterion_2_cases(), criterion_3_cases(), criterion_4_cases()]
    missed = []
    for number, cases in enumerate(suites, start=1):
        trials = mutation_trials(cases, 50, seed=number, by_coefficient=True)
        assert len(trials) == 50
        missed += [(number, cases[i][0].algebra, cases[i][0].n, str(lab), mono)
                   for i, lab, mono, detected in trials if not detected]
    assert not missed, f"undetected mutations: {missed}"
