from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ktrace.corealg import LaurentPoly, RatFunc, ZSeries, expand_at_origin, var
from ktrace.errors import LengthViolation
from ktrace.localization import TorusRep, moduli_inner
from ktrace.symfunc import SymFunc, hall_inner, omega_series, s
from ktrace.vertexops import (
    check_theoremA,
    constant_C,
    gamma_minus,
    gamma_plus,
    grass_rhs,
    mult,
    mult_adj,
    proj,
    random_w_values,
    theoremA_trace,
    theoremA_trace_generic,
    trace_infinity,
    twisted_inner,
    z_infinity_check,
)

D = 10
ONE_F = SymFunc.one(D)
S1 = s(1, dmax=D)


@pytest.mark.parametrize("r,n", [(1, 1), (1, 2), (2, 1), (0, 2)])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_fast_trace_matches_operator_composition(r, n, k):
    vals = random_w_values(r, 3)
    for f, g in ((ONE_F, ONE_F), (S1, ONE_F), (ONE_F, S1)):
        fast = theoremA_trace(f, g, r, n, k, 3, vals).value
        slow = theoremA_trace_generic(f, g, r, n, k, 3, vals)
        assert fast == slow


def test_trace_terms_respect_valuation():
    res = theoremA_trace(S1, S1, 1, 2, 1, 4, random_w_values(1))
    assert res.valuations_ok()
    assert res.D_sym == 4 + 2 * 1 + 1 + 4


def test_thread_count_does_not_change_result(monkeypatch):
    vals = random_w_values(2, 1)
    monkeypatch.setenv("KTRACE_THREADS", "1")
    a = theoremA_trace(S1, ONE_F, 2, 1, 1, 4, vals)
    monkeypatch.setenv("KTRACE_THREADS", "3")
    b = theoremA_trace(S1, ONE_F, 2, 1, 1, 4, vals)
    assert a.value == b.value
    assert str(a.value) == str(b.value)


def test_bad_thread_env(monkeypatch):
    monkeypatch.setenv("KTRACE_THREADS", "zero")
    with pytest.raises(ValueError):
        theoremA_trace(ONE_F, ONE_F, 1, 1, 0, 2)


def test_theorem_rank_one_single_box():
    rep = check_theoremA(ONE_F, ONE_F, 1, 1, range(0, 4), 4, seed=2)
    assert rep.k0 is not None and rep.k0 <= 1
    assert rep.passed()
    for c in rep.checks:
        if c.k >= rep.k0:
            assert c.lhs == c.rhs


def test_pole_statuses_below_threshold():
    rep = check_theoremA(S1, s(2, dmax=D), 2, 1, range(0, 4), 4, seed=0)
    k0 = rep.k0
    assert k0 is not None
    assert all(c.k < k0 for c in rep.checks if c.status == "pole")


@pytest.mark.parametrize("n", [1, 2])
def test_rank_zero_trace_vanishes(n):
    # nonzero for small k when deg f > deg g; zero from k = 3 on the grid
    for f in (ONE_F, S1, s(2, dmax=D)):
        for k in (3, 4):
            assert theoremA_trace(f, ONE_F, 0, n, k, 4).value.is_zero()
    assert not theoremA_trace(s(2, dmax=D), ONE_F, 0, 1, 2, 4).value.is_zero()


def test_omega_minus_p1_kills_rank_one_trace():
    f = ONE_F * omega_series(LaurentPoly.const(-1), D)
    vals = {"w1": Fraction(1)}
    for k in (2, 3):
        assert theoremA_trace(f, S1, 1, 1, k, 4, vals).value.is_zero()


def test_constant_normalization_and_trivial_framing():
    # with no framing the trace is the diagonal sum itself
    assert trace_infinity(0, 4) == constant_C(4, with_z=False)
    rep = z_infinity_check(1, 4, {"w1": Fraction(1)})
    assert rep.consistent == ["sum_phi"]


def test_grass_rhs_checks_row_count():
    X = TorusRep.random_rational(3, seed=1)
    with pytest.raises(LengthViolation):
        grass_rhs(s(1, 1, dmax=2), SymFunc.one(2), X, 1, 2)


def test_operator_composition_and_degree_bounds():
    op = mult_adj(s(2, dmax=6)) @ proj(2) @ mult(s(1, dmax=6))
    assert op.shift_bounds() == (-1, -1)
    # s1 s2 = s3 + s21, both survive pi_2, and skewing each by s2 leaves s1
    assert op(s(2, dmax=6)) == s(1, dmax=6) * 2
    assert gamma_plus(var("x1")).shift_bounds() == (None, 0)
    assert gamma_minus(var("x1")).shift_bounds() == (0, None)


def test_gamma_plus_is_adjoint_of_gamma_minus():
    a = var("x1")
    lhs_op, rhs_op = gamma_plus(a), gamma_minus(a)
    for f in (s(2, dmax=4), s(1, 1, dmax=4), s(3, dmax=4)):
        for g in (s(1, dmax=4), SymFunc.one(4), s(2, dmax=4)):
            assert hall_inner(lhs_op(f), g) == hall_inner(f, rhs_op(g))


@settings(max_examples=15)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=3, max_size=3))
def test_trace_is_linear_in_f(cs):
    basis = [ONE_F, S1, s(2, dmax=D)]
    f = sum((b * c for b, c in zip(basis, cs)), SymFunc.zero(D))
    vals = random_w_values(1, 0)
    total = theoremA_trace(f, S1, 1, 1, 1, 3, vals).value
    parts = ZSeries(3)
    for b, c in zip(basis, cs):
        parts = parts + theoremA_trace(b, S1, 1, 1, 1, 3, vals).value * c
    assert total == parts


@given(st.sampled_from([(1,), (2,), (1, 1), (2, 1)]))
def test_twisted_pairing_at_one_is_hall(mu):
    f, g = s(*mu, dmax=4), s(2, 1, dmax=4) + s(*mu, dmax=4)
    assert twisted_inner(f, g, 1) == RatFunc(hall_inner(f, g))
