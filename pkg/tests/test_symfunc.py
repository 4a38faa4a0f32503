from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import partitions
from ktrace.corealg import LaurentPoly, Partition, partitions_list, var
from ktrace.symfunc import (
    PlethInput,
    SymFunc,
    e,
    finite_var_inner,
    h,
    hall_inner,
    mult_adjoint,
    omega_involution,
    omega_series,
    pi_n,
    plethystic_hom,
    s,
)

D = 6


@st.composite
def symfuncs(draw, dmax=D):
    f = SymFunc.zero(dmax)
    for _ in range(draw(st.integers(0, 4))):
        mu = draw(partitions(max_size=5))
        c = draw(st.fractions(min_value=-4, max_value=4, max_denominator=5))
        f = f + SymFunc.basis_element(draw(st.sampled_from("psehm")), mu, dmax, c)
    return f


@given(symfuncs(), st.sampled_from("psehm"))
def test_basis_change_round_trip(f, basis):
    assert f.to(basis).to("p") == f.to("p")


@given(symfuncs())
def test_omega_is_an_involution(f):
    assert omega_involution(omega_involution(f)) == f


@pytest.mark.parametrize("mu", [mu for d in range(1, 6) for mu in partitions_list(d)])
def test_omega_transposes_schur(mu):
    assert omega_involution(s(*mu, dmax=D)) == s(*mu.conjugate(), dmax=D)


def test_schur_orthonormal():
    ps = [mu for d in range(5) for mu in partitions_list(d)]
    for a in ps:
        for b in ps:
            want = 1 if a == b else 0
            assert hall_inner(s(*a, dmax=D), s(*b, dmax=D)) == LaurentPoly.const(want)


def test_single_row_and_column():
    for n in range(1, 5):
        assert h(n, dmax=D) == s(n, dmax=D)
        assert e(n, dmax=D) == s(*([1] * n), dmax=D)


def _bialternant(mu, n=3):
    xs = sympy.symbols(f"a1:{n + 1}")
    lam = list(mu) + [0] * (n - len(mu))
    num = sympy.Matrix(n, n, lambda i, j: xs[i] ** (lam[j] + n - 1 - j)).det()
    den = sympy.Matrix(n, n, lambda i, j: xs[i] ** (n - 1 - j)).det()
    return sympy.cancel(num / den), xs


@pytest.mark.parametrize("mu", [mu for d in range(1, 5) for mu in partitions_list(d, 3)])
def test_schur_polynomials_match_bialternant(mu):
    # oracle: Jacobi bialternant in three variables, computed by sympy
    ref, xs = _bialternant(mu)
    alphabet = var("y1") + var("y2") + var("y3")
    ours = plethystic_hom(alphabet, s(*mu, dmax=D))
    pt = {"y1": Fraction(2, 3), "y2": Fraction(-5, 7), "y3": Fraction(3, 1)}
    got = ours.evaluate(pt)
    want = ref.subs({xs[0]: sympy.Rational(2, 3), xs[1]: sympy.Rational(-5, 7), xs[2]: 3})
    assert got == Fraction(int(want.p), int(want.q))


@given(symfuncs(dmax=4), symfuncs(dmax=4))
def test_plethysm_is_ring_homomorphism(f, g):
    F = PlethInput.of(var("x1") - 2 * var("x2"), var("z1"))
    f, g = f.with_dmax(8), g.with_dmax(8)
    assert plethystic_hom(F, f * g, dmax=8) == plethystic_hom(F, f, dmax=8) * plethystic_hom(F, g, dmax=8)


@given(symfuncs(dmax=4), symfuncs(dmax=4), symfuncs(dmax=4))
def test_multiplication_adjoint(f, g, k):
    f, g, k = f.with_dmax(8), g.with_dmax(8), k.with_dmax(8)
    assert hall_inner(mult_adjoint(f, g), k) == hall_inner(g, f * k)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pi_n_drops_long_rows(n):
    for d in range(1, 5):
        for mu in partitions_list(d):
            got = pi_n(n, s(*mu, dmax=D))
            assert got == (s(*mu, dmax=D) if len(mu) <= n else SymFunc.zero(D))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_finite_variable_pairing_equals_projected_hall(n):
    for a in partitions_list(3):
        for b in partitions_list(3):
            f, g = s(*a, dmax=4), s(*b, dmax=4)
            assert finite_var_inner(f, g, n) == hall_inner(f, pi_n(n, g))


def test_omega_series_of_minus_one_is_alternating_e():
    got = omega_series(LaurentPoly.const(-1), 4)
    want = SymFunc.one(4) - e(1, dmax=4) + e(2, dmax=4) - e(3, dmax=4) + e(4, dmax=4)
    assert got == want


def test_omega_series_cauchy():
    # Omega(p1 * x) at a variable x is sum_n x^n h_n
    got = omega_series(var("x1"), 4)
    want = sum((h(n, dmax=4) * LaurentPoly.var("x1", n) if n else SymFunc.one(4) for n in range(5)), SymFunc.zero(4))
    assert got == want
