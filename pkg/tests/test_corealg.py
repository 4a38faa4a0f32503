from fractions import Fraction

import pytest
import sympy
from sympy.functions.combinatorial.numbers import partition as partition_number
from hypothesis import given, strategies as st

from conftest import laurent, partitions
from ktrace.corealg import (
    LaurentPoly,
    Partition,
    RatFunc,
    ZSeries,
    arm,
    expand_at_origin,
    leg,
    omega_product,
    partitions_list,
    partitions_upto,
    truncate,
    var,
    z_factor,
)
from ktrace.corealg.laurent import var_key
from ktrace.errors import DivergentOmega, PoleAtOrigin

z1, z2, w1 = var("z1"), var("z2"), var("w1")


# Laurent polynomials -------------------------------------------------------


@given(laurent(), laurent(), laurent())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly()


@given(laurent(), laurent())
def test_conjugate_is_involutive_homomorphism(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


@given(laurent(), laurent(), st.integers(1, 4))
def test_adams_is_ring_map(a, b, k):
    assert (a * b).adams(k) == a.adams(k) * b.adams(k)
    assert (a + b).adams(k) == a.adams(k) + b.adams(k)


@given(laurent())
def test_json_round_trip(a):
    assert LaurentPoly.from_json_obj(a.to_json_obj()) == a


def test_canonical_text():
    p = z1 ** -2 * w1 - 3 * z2 + Fraction(1, 2)
    assert str(p) == str(LaurentPoly.from_json_obj(p.to_json_obj()))
    assert "z1^-2*w1" in str(p)


# rational functions and series ---------------------------------------------


def _rf(num, *factors):
    """num / prod (1 - monomial) for given exponent dicts."""
    den = {}
    for exps in factors:
        key = LaurentPoly.monomial(exps)
        ((mk, _),) = key.terms.items()
        den[(1, mk)] = den.get((1, mk), 0) + 1
    return RatFunc(LaurentPoly.coerce(num), den)


@given(laurent(names=("z1", "z2")), laurent(names=("z1", "z2")))
def test_ratfunc_field_ops(a, b):
    r = _rf(a, {"z1": 1})
    q = _rf(b, {"z2": 1}, {"z1": 1, "z2": 1})
    assert r + q == q + r
    assert (r + q) * r == r * r + q * r
    assert r - r == RatFunc(LaurentPoly())


@given(laurent(names=("z1", "z2"), max_terms=4), st.integers(0, 5))
def test_expansion_times_denominator_recovers_numerator(num, order):
    num = num * z1 ** 3 * z2 ** 3  # push into nonnegative degrees
    r = _rf(num, {"z1": 1}, {"z2": 2}, {"z1": 1, "z2": 1})
    ser = expand_at_origin(r, order)
    den = (1 - z1) * (1 - z2 ** 2) * (1 - z1 * z2)
    assert truncate(ser.poly * den, order) == truncate(num, order)


def test_expansion_matches_sympy_series():
    # oracle: sympy's independent multivariate Taylor expansion
    a, b = sympy.symbols("z1 z2")
    expr = (1 - a * b) / ((1 - a) * (1 - b) ** 2)
    order = 5
    t = sympy.symbols("t")
    ser = sympy.series(expr.subs({a: t * a, b: t * b}), t, 0, order + 1).removeO().subs(t, 1)
    ref = sympy.Poly(sympy.expand(ser), a, b)
    ours = expand_at_origin(_rf(1 - z1 * z2, {"z1": 1}, {"z2": 1}, {"z2": 1}), order)
    for (i, j), c in ref.terms():
        assert ours.coefficient(i, j) == LaurentPoly.coerce(Fraction(int(c.p), int(c.q)))
    assert len(ours.coefficients()) == len(ref.terms())


def test_mixed_sign_denominator_raises_pole():
    r = RatFunc(LaurentPoly.const(1), {(1, var_key("z1", -1) + var_key("z2")): 1})
    with pytest.raises(PoleAtOrigin):
        expand_at_origin(r, 3)


def test_mixed_sign_factor_cancelled_by_numerator():
    mk = var_key("z1", -1) + var_key("z2")
    r = RatFunc(1 - z1 ** -1 * z2, {(1, mk): 1})
    assert expand_at_origin(r, 3) == ZSeries(3, LaurentPoly.const(1))


def test_omega_product():
    assert omega_product(z1 + z2) == _rf(1, {"z1": 1}, {"z2": 1})
    assert omega_product(z1 - 1) == RatFunc(LaurentPoly())
    with pytest.raises(DivergentOmega):
        omega_product(1 + z1)


# partitions ----------------------------------------------------------------


@pytest.mark.parametrize("n", range(0, 13))
def test_partition_counts_match_sympy(n):
    assert len(partitions_list(n)) == partition_number(n)


def test_partitions_reverse_lex_order():
    assert [tuple(p) for p in partitions_list(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


@pytest.mark.parametrize("n", range(0, 9))
def test_inverse_z_factors_sum_to_one(n):
    assert sum(Fraction(1, z_factor(mu)) for mu in partitions_list(n)) == 1


@given(partitions())
def test_partition_box_invariants(parts):
    mu = Partition(parts)
    assert sum(1 for _ in mu.boxes()) == mu.size
    assert mu.conjugate().conjugate() == mu
    for i, j in mu.boxes():
        assert arm(mu, (i, j)) == leg(mu.conjugate(), (j, i))


def test_partitions_upto_count():
    assert len(list(partitions_upto(4))) == 1 + 1 + 2 + 3 + 5
