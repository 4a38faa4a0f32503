import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from conftest import partitions
from ktrace.acceptance import grassmannian_box_check, schur_upto, weight_sets
from ktrace.corealg import LaurentPoly, RatFunc, enumerate_tuples, truncate, var
from ktrace.errors import RepeatedWeights
from ktrace.localization import (
    LambdaFunctional,
    TorusRep,
    char_E,
    char_E_via_difference,
    char_U,
    f_N_pruned_count,
    grass_inner,
    lambda_pairing,
    lambda_prime_pairing,
    moduli_inner,
    tangent_char,
    z_matrix,
    z_matrix_shape,
)
from ktrace.symfunc import PlethInput, SymFunc, h, omega_series, plethystic_hom, s
from ktrace.vertexops import partition_function_Z, partition_series

z1, z2 = var("z1"), var("z2")


@given(partitions(5), partitions(5))
def test_E_character_two_ways(mu, nu):
    assert char_E(mu, nu) == char_E_via_difference(mu, nu)


@pytest.mark.parametrize("r,n", [(1, 1), (1, 3), (2, 2), (3, 2)])
def test_tangent_space_dimension(r, n):
    for t in enumerate_tuples(r, n):
        T = tangent_char(t).subs({"z1": 1, "z2": 1, **{f"w{a}": 1 for a in range(1, r + 1)}})
        assert T == LaurentPoly.const(2 * r * n)


def test_unit_box_is_one():
    assert char_U((1,)) == LaurentPoly.const(1)
    assert tangent_char(((1,),)) == z1 ** -1 + z2 ** -1


def test_single_point_value():
    one = SymFunc.one(2)
    want = RatFunc(LaurentPoly.const(1), {(1, next(iter(z1.terms))): 1, (1, next(iter(z2.terms))): 1})
    assert partition_function_Z(1, 1, {"w1": 1}) == want
    assert moduli_inner(one, one, 1, 1, 0, {"w1": Fraction(7, 3)}) == want


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hilbert_scheme_euler_characteristic(n):
    # oracle: chi(Hilb^n(C^2), O) = h_n[1/((1-z1)(1-z2))], the character of
    # S_n-invariant polynomials in n points; compared as series
    D = 5
    geo = sum((z1 ** i * z2 ** j for i in range(D + 1) for j in range(D + 1 - i)), LaurentPoly())
    want = plethystic_hom(geo, h(n, dmax=n))
    got = partition_series(1, n, D, {"w1": 1})
    assert got.poly == truncate(want, D)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("k", [0, 3, 6])
def test_rank_zero_is_empty(n, k):
    one = SymFunc.one(2)
    for g in (one, s(1, dmax=2)):
        assert moduli_inner(one, g, 0, n, k) == RatFunc(LaurentPoly())


# Grassmannian ----------------------------------------------------------------


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_structure_sheaf_has_euler_characteristic_one(N):
    X = TorusRep.random_rational(N, seed=N)
    one = SymFunc.one(2)
    for m in range(N + 1):
        assert grass_inner(one, one, X, m) == RatFunc(LaurentPoly.const(1))


def test_projective_line_counterexample_value():
    # chi(P^1, O(-2)) = -1 nonequivariantly; equivariantly -1/(x1 x2)
    X = TorusRep.symbolic(2)
    val = grass_inner(s(2, dmax=2), SymFunc.one(2), X, 1)
    assert val == RatFunc(LaurentPoly.monomial({"x1": -1, "x2": -1}, -1))


@given(st.integers(0, 10_000), st.sampled_from([(2, 1), (3, 1), (3, 2), (4, 2)]))
def test_grass_inner_symmetric_in_weights(seed, Nm):
    N, m = Nm
    X = TorusRep.random_rational(N, seed=seed)
    rng = random.Random(seed)
    perm = list(X.values.values())
    rng.shuffle(perm)
    Y = TorusRep.symbolic(N, {f"x{i + 1}": v for i, v in enumerate(perm)})
    f, g = s(2, 1, dmax=3), s(1, dmax=3)
    assert grass_inner(f, g, X, m) == grass_inner(f, g, Y, m)


def test_repeated_weights_rejected():
    X = TorusRep.symbolic(2, {"x1": Fraction(2), "x2": Fraction(2)})
    with pytest.raises(RepeatedWeights):
        grass_inner(SymFunc.one(1), SymFunc.one(1), X, 1)


def test_grassmannian_inside_box():
    ok, total = grassmannian_box_check(Nmax=4, deg=3, sets=2)
    assert ok == total


@pytest.mark.parametrize("N", [2, 3, 4])
def test_pushforward_through_lambda(N):
    # Edidin-Francisco style reduction, valid for l(mu) <= m
    for X in weight_sets(N, 1):
        Xbar = X.character().conjugate()
        for m in range(1, min(N, 3) + 1):
            for mu, f in schur_upto(3, maxlen=m):
                F = plethystic_hom(PlethInput(Xbar, LaurentPoly.const(-1)), f)
                for nu, g in schur_upto(2):
                    assert grass_inner(f, g, X, m) == RatFunc(lambda_pairing(F, g, X, m, "direct"))


@pytest.mark.parametrize("N", [2, 3, 4])
def test_lambda_split_formula_matches_localization(N):
    lam = LambdaFunctional(TorusRep.random_rational(N, seed=11 * N))
    for i in range(-4, N + 4):
        assert RatFunc(lam(i)) == lam.direct(i)


def test_lambda_prime_pairing_is_a_pairing():
    X = TorusRep.random_rational(3, seed=5)
    val = lambda_prime_pairing(SymFunc.one(2), SymFunc.one(2), X, 1)
    assert val == LaurentPoly.const(1)


# Z matrix and finite approximants -------------------------------------------


@pytest.mark.parametrize("N,n", [(2, 0), (3, 1), (4, 2)])
def test_z_matrix_piecewise_values(N, n):
    X = TorusRep.random_rational(N, seed=N + n)
    for i in range(-2, n + N + 2):
        for j in range(-2, n + N + 2):
            kind = z_matrix_shape(n, i, j)
            val = z_matrix(X, n, i, j)
            if kind == "minus-one":
                assert val == LaurentPoly.const(-1)
            elif kind == "zero":
                assert not val


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_finite_approximant_keeps_only_the_corner(N):
    assert f_N_pruned_count(1, 1, N) == (1, N * N - 1)
