import json
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from heisreal.gamma import gamma_canonical, gamma_epsilon
from heisreal.ncalgebra import EUCLIDEAN, MINKOWSKI, NCPoly
from heisreal.presentations import (Label, LiePresentation, constants_presentation,
                                    extended_presentation, jacobi_constants, kappa_presentation,
                                    lorentz_presentation, poincare_presentation, so_presentation)
from heisreal.opmatrix import k_matrix, psi_inv_of
from heisreal.realize import (Realization, _rotation_values, realize_extended, realize_lorentz,
                              realize_poincare, realize_so)
from heisreal.verify import (check_bracket, jacobi_check, k_power_closed_form_check,
                             lambda_group_check, mutate, mutation_trials,
                             partial_commutator_check, partial_commutator_sides,
                             weyl_property_check, weyl_property_check_hn)


def test_so3_passes():
    rep = check_bracket(realize_so(3, 4), so_presentation(3))
    assert rep.passed
    assert (rep.degree, rep.cmp_degree) == (4, 3)
    assert [(str(p.g1), str(p.g2)) for p in rep.pairs] == [
        ("M[1,2]", "M[1,3]"), ("M[1,2]", "M[2,3]"), ("M[1,3]", "M[2,3]")]


def test_lambda_pairs_are_exact():
    rep = check_bracket(realize_extended(3, MINKOWSKI, 3), extended_presentation(3, MINKOWSKI))
    assert rep.passed
    exact = [p for p in rep.pairs if p.exact]
    assert len(exact) == 9 * 8 // 2
    assert all(p.g1.kind == "L" and p.g2.kind == "L" for p in exact)


def test_wrong_series_fails():
    # x psi^{-1}(K) instead of x psi(K) is not a homomorphism
    r = realize_so(3, 4)
    bad = Realization("bad", r.alg, 4, _rotation_values(r.alg, psi_inv_of(k_matrix(3, EUCLIDEAN, r.alg), 4), 4))
    assert not check_bracket(bad, so_presentation(3)).passed


def test_corrupted_degree_two_coefficient_fails():
    r = realize_so(3, 4)
    lab = Label("M", (1, 2))
    poly = r[lab]
    mono = next(m for m, _ in poly.sorted_terms() if poly.d_degree_of(m) == 2)
    terms = dict(poly.terms)
    terms[mono] = terms[mono] + 1
    bad = r.replace(lab, NCPoly(r.alg, terms))
    rep = check_bracket(bad, so_presentation(3))
    assert not rep.passed
    assert rep.max_residual_terms > 0


def test_bad_arguments():
    r = realize_so(3, 2)
    with pytest.raises(ValueError):
        check_bracket(r, so_presentation(3), D=0)
    with pytest.raises(ValueError):
        check_bracket(r, so_presentation(3), D=3)
    with pytest.raises(ValueError):
        check_bracket(r, so_presentation(4))


def test_report_json_shape():
    out = check_bracket(realize_so(3, 2), so_presentation(3), suite="so").to_json()
    assert set(out) == {"suite", "n", "metric", "degree", "cmpDegree", "pairs", "pass",
                        "maxResidualTerms", "elapsedMs"}
    assert isinstance(out["elapsedMs"], int)
    assert out["pairs"][0] == {"g1": "M[1,2]", "g2": "M[1,3]", "residualTerms": 0}


def test_reports_are_deterministic_across_jobs():
    r, p = realize_extended(3, EUCLIDEAN, 3), extended_presentation(3, EUCLIDEAN)
    serial = json.dumps(check_bracket(r, p).to_json(timing=False))
    again = json.dumps(check_bracket(r, p).to_json(timing=False))
    parallel = json.dumps(check_bracket(r, p, jobs=2).to_json(timing=False))
    assert serial == again == parallel


# Jacobi --------------------------------------------------------------------

@pytest.mark.parametrize("pres", [so_presentation(4), lorentz_presentation(4),
                                  extended_presentation(3, MINKOWSKI), poincare_presentation(4),
                                  kappa_presentation([0, 0, mpq(1, 5)])])
def test_jacobi_holds(pres):
    assert jacobi_check(pres)


def test_so4_constants_table():
    table = so_presentation(4).structure_constants()
    pres = constants_presentation(table, "X")
    assert jacobi_check(pres)


def test_perturbed_table_fails():
    table = dict(so_presentation(4).structure_constants())
    key = sorted(table)[0]
    a, b, c = key
    table[(a, b, c)] += 1
    table[(b, a, c)] -= 1
    assert not jacobi_constants(6, table)
    with pytest.raises(ValueError):
        constants_presentation(table)


def test_broken_bracket_evaluator_fails():
    good = so_presentation(3)

    def bracket(x, y):
        out = good.bracket(x, y)
        if (x, y) == (Label("M", (1, 2)), Label("M", (1, 3))):
            return [(2 * c, lab) for c, lab in out]
        return out

    assert not jacobi_check(LiePresentation("bad", good.labels, bracket))


# matrix identities --------------------------------------------------------

def test_k_power_closed_form():
    assert k_power_closed_form_check(3, 6)
    assert k_power_closed_form_check(4, 5)
    assert k_power_closed_form_check(4, 4, MINKOWSKI)


def test_partial_commutator_first_order():
    for al, be, rho, sig in [(1, 2, 2, 1), (1, 2, 1, 2), (1, 3, 2, 1), (2, 3, 3, 2)]:
        lhs, via_k, alt = partial_commutator_sides(3, 1, al, be, rho, sig)
        expected = (rho == be) * (sig == al) - (rho == al) * (sig == be)
        assert lhs == via_k == alt
        assert lhs == lhs.alg.scalar(expected)


def test_partial_commutator():
    assert partial_commutator_check(3, 4)


rationals = st.fractions(max_denominator=9, min_value=-3, max_value=3).map(
    lambda f: mpq(f.numerator, f.denominator))


@settings(max_examples=15, deadline=None)
@given(st.lists(rationals, min_size=3, max_size=3))
def test_weyl_property_so3(k):
    assert weyl_property_check(gamma_epsilon(), k, 3)
    assert weyl_property_check(gamma_canonical(3), k, 3)


@settings(max_examples=5, deadline=None)
@given(st.lists(rationals, min_size=3, max_size=3))
def test_weyl_property_in_pair_picture(k):
    r = realize_so(3, 3)
    assert weyl_property_check_hn(r, dict(zip([(1, 2), (1, 3), (2, 3)], k)), 3)


def test_weyl_property_length_mismatch():
    with pytest.raises(ValueError):
        weyl_property_check(gamma_epsilon(), [1, 2], 2)


@pytest.mark.parametrize("n, metric, D", [(2, EUCLIDEAN, 5), (3, EUCLIDEAN, 4),
                                          (4, MINKOWSKI, 4)])
def test_lambda_group(n, metric, D):
    assert lambda_group_check(n, metric, D)


# mutation -----------------------------------------------------------------

def test_mutate_changes_exactly_one_coefficient():
    r = realize_so(3, 3)
    lab, mono, bad = mutate(r, random.Random(5))
    changed = [(l, m) for l in r.labels for m in set(r[l].terms) | set(bad[l].terms)
               if r[l].coefficient(m) != bad[l].coefficient(m)]
    assert changed == [(lab, mono)]


def test_mutations_are_detected():
    cases = [(realize_so(3, 3), so_presentation(3)),
             (realize_lorentz(4, 3), lorentz_presentation(4)),
             (realize_poincare(3, 2), poincare_presentation(3))]
    trials = mutation_trials(cases, 30, seed=11)
    assert len(trials) == 30
    assert all(detected for *_, detected in trials)
    assert trials == mutation_trials(cases, 30, seed=11)


def test_so2_mutations_cannot_be_seen():
    # a single generator has no bracket pairs, so any perturbation still "passes"
    r, p = realize_so(2, 4), so_presentation(2)
    assert p.pairs() == []
    _, _, bad = mutate(r, random.Random(0))
    assert check_bracket(bad, p).passed
