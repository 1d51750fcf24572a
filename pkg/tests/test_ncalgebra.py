from functools import lru_cache

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from heisreal.exactnum import GaussianRational, I, ZERO
from heisreal.ncalgebra import (MINKOWSKI, NCPoly, act, commutator,
                                extended_heisenberg, heisenberg, mul, truncate, weyl)

H3 = heisenberg(3)
H4 = heisenberg(4)
H4m = heisenberg(4, MINKOWSKI)
HP2 = extended_heisenberg(2, MINKOWSKI)
HP3 = extended_heisenberg(3, MINKOWSKI)
A3 = weyl(3)


# independent oracle: rewrite words letter by letter -----------------------

def naive_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    """Concatenate normal-ordered words and move derivatives right one swap at a time."""
    alg = a.alg
    V = alg.nvars

    def word(mono):
        w = []
        for i in range(2 * V):
            w += [i] * mono[i]
        return tuple(w)

    @lru_cache(maxsize=None)
    def normal(w):
        for k in range(len(w) - 1):
            d, x = w[k], w[k + 1]
            if d >= V and x < V:
                out = dict(normal(w[:k] + (x, d) + w[k + 2:]))
                if d - V == x:
                    for m, c in normal(w[:k] + w[k + 2:]).items():
                        out[m] = out.get(m, 0) + alg.signs[x] * c
                return {m: c for m, c in out.items() if c}
        mono = [0] * (2 * V)
        for g in w:
            mono[g] += 1
        return {tuple(mono): 1}

    out = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            for m, c in normal(word(ma) + word(mb)).items():
                out[m] = out.get(m, ZERO) + ca * cb * c
    return NCPoly(alg, {m: c for m, c in out.items() if c})


coeffs = st.sampled_from([mpq(1), mpq(-1), mpq(1, 2), mpq(-3, 4), mpq(2)])


def polys(alg, max_exp=2, max_terms=3):
    V = alg.nvars
    mono = st.tuples(*[st.integers(0, max_exp) for _ in range(2 * V)])
    return st.dictionaries(mono, coeffs.map(GaussianRational), min_size=1, max_size=max_terms).map(
        lambda d: NCPoly(alg, d))


def small_polys(alg):
    return polys(alg, max_exp=1, max_terms=3)


# examples -----------------------------------------------------------------

def test_canonical_relation_euclidean():
    assert H3.parse("d[1,2]*x[1,2]") == H3.parse("x[1,2]*d[1,2] + 1")


def test_disjoint_pairs_commute():
    assert H4.parse("d[1,2]*x[3,4]") == H4.x(3, 4) * H4.d(1, 2)
    assert mul(H4.d(1, 2), H4.x(3, 4)) == mul(H4.x(3, 4), H4.d(1, 2))


def test_canonical_relation_minkowski():
    assert H4m.parse("d[1,2]*x[1,2]") == H4m.parse("x[1,2]*d[1,2] - 1")
    assert commutator(H4m.d(2, 3), H4m.x(2, 3)) == H4m.one()


def test_commutator_examples():
    assert commutator(H3.x(1, 2), H3.x(1, 3)).is_zero()
    assert commutator(H3.d(1, 2), H3.parse("x[2,1]")) == -H3.one()
    for mu in (1, 2, 3):
        for nu in (1, 2, 3):
            eta = (-1 if mu == 1 else 1) if mu == nu else 0
            assert commutator(HP3.dv(mu), HP3.p(nu)) == HP3.scalar(eta)


def test_diagonal_and_swapped_generators():
    assert H3.parse("x[2,2]").is_zero()
    assert H3.parse("d[3,1]") == -H3.d(1, 3)


def test_action_examples():
    x12, d12 = H3.x(1, 2), H3.d(1, 2)
    assert act(d12, x12) == H3.one()
    assert act(d12, x12 * x12) == x12.scale(2)
    assert act(d12, H3.x(1, 3)).is_zero()
    # Minkowski sign enters the action as well
    assert act(H4m.d(1, 2), H4m.x(1, 2)) == -H4m.one()


def test_truncate_examples():
    assert truncate(H3.parse("x[1,2] + x[1,2]*d[1,3]^2"), 1) == H3.x(1, 2)
    assert truncate(H3.parse("1 + d[1,2]"), 0) == H3.one()
    t = HP3.parse("p[1]*d[1,2]*dv[1]")
    assert truncate(t, 2) == t
    assert truncate(t, 1).is_zero()
    with pytest.raises(ValueError):
        truncate(t, -1)


def test_parse_and_print():
    p = A3.parse("xa[1]*da[3] - 1/2*i*xa[2]")
    assert str(A3.parse(str(p))) == str(p)
    assert p.coefficient(A3.parse_monomial("xa[2]")) == -I / 2
    with pytest.raises(ValueError):
        A3.parse("x[1,2]")
    with pytest.raises(ValueError):
        A3.parse("xa[1] +* 2")


def test_mode_mismatch_rejected():
    with pytest.raises(ValueError):
        H3.x(1, 2) + H4.x(1, 2)
    with pytest.raises(ValueError):
        mul(H3.x(1, 2), A3.xa(1))


def test_degrees():
    p = HP3.parse("x[1,2]^2*p[1]*d[1,2]*dv[2]^2 + d[1,3]")
    assert p.d_degree() == 3
    assert p.x_degree() == 3
    assert not p.is_dpoly() and not p.is_state()
    assert p.part(1) == HP3.d(1, 3)


def test_mul_dmax_equals_truncated_product():
    a = H3.parse("x[1,2]*d[1,3] + d[2,3]^2")
    b = H3.parse("x[1,3]^2*d[1,2] + x[2,3]")
    for dmax in range(4):
        assert mul(a, b, dmax) == truncate(mul(a, b), dmax)
        assert commutator(a, b, dmax) == truncate(commutator(a, b), dmax)


# properties ---------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(polys(H3), polys(H3))
def test_mul_matches_rewriting_oracle(a, b):
    assert mul(a, b) == naive_mul(a, b)


@settings(max_examples=100, deadline=None)
@given(polys(HP2), polys(HP2))
def test_mul_matches_oracle_minkowski_extended(a, b):
    assert mul(a, b) == naive_mul(a, b)


@settings(max_examples=200, deadline=None)
@given(small_polys(H3), small_polys(H3), small_polys(H3))
def test_associativity(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@settings(max_examples=100, deadline=None)
@given(small_polys(HP2), small_polys(HP2), small_polys(HP2))
def test_associativity_extended(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@settings(max_examples=100, deadline=None)
@given(small_polys(H3), small_polys(H3), small_polys(H3))
def test_jacobi(a, b, c):
    total = (commutator(a, commutator(b, c)) + commutator(b, commutator(c, a))
             + commutator(c, commutator(a, b)))
    assert total.is_zero()


@settings(max_examples=100, deadline=None)
@given(polys(H3), polys(H3))
def test_commutator_is_difference_of_products(a, b):
    assert commutator(a, b) == mul(a, b) - mul(b, a)


def _dpart(p):
    V = p.alg.nvars
    return NCPoly(p.alg, {m: c for m, c in p.terms.items() if not any(m[:V])})


def _xpart(p):
    V = p.alg.nvars
    return NCPoly(p.alg, {m: c for m, c in p.terms.items() if not any(m[V:])})


@settings(max_examples=100, deadline=None)
@given(polys(H3), polys(H3))
def test_derivatives_commute_and_coordinates_commute(a, b):
    assert commutator(_dpart(a), _dpart(b)).is_zero()
    assert commutator(_xpart(a), _xpart(b)).is_zero()


@settings(max_examples=100, deadline=None)
@given(small_polys(H4m), small_polys(H4m), polys(H4m).map(_xpart))
def test_action_is_compatible_with_product(a, b, f):
    assert act(mul(a, b), f) == act(a, act(b, f))


@settings(max_examples=100, deadline=None)
@given(polys(HP2))
def test_serialization_round_trip(p):
    assert NCPoly.from_terms(HP2, p.to_terms()) == p
    assert HP2.parse(str(p)) == p
