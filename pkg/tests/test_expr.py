from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import partitions
from ktrace.errors import ParseError
from ktrace.expr import Atom, BinOp, Neg, Num, Omega, Pow, evaluate, parse_expr
from ktrace.symfunc import SymFunc, e, h, s

D = 6

leaves = st.one_of(
    st.fractions(min_value=0, max_value=20, max_denominator=9).map(Num),
    st.builds(Atom, st.sampled_from("spehm"), partitions(max_size=4).filter(bool)),
)


def _tree(children):
    return st.one_of(
        st.builds(BinOp, st.sampled_from("+-*"), children, children),
        st.builds(Neg, children),
        st.builds(Pow, children, st.integers(0, 3)),
        st.builds(Omega, children),
    )


exprs = st.recursive(leaves, _tree, max_leaves=8)


@given(exprs)
def test_print_parse_round_trip(tree):
    text = str(tree)
    assert parse_expr(text) == tree
    assert str(parse_expr(text)) == text


@given(exprs)
def test_whitespace_insensitive(tree):
    text = str(tree)
    spaced = "".join(f" {c}  " if c in "+-*^()[],/" else c for c in text.replace(" ", ""))
    assert parse_expr(spaced) == tree


def test_schur_atom():
    assert parse_expr("s[2,1]") == Atom("s", (2, 1))
    assert parse_expr("s[1,2]") == Atom("s", (2, 1))


def test_sum_node_and_value():
    tree = parse_expr("e[1]^2 + 2*h[2]")
    assert isinstance(tree, BinOp) and tree.op == "+"
    assert tree.degree() == 2
    assert tree.evaluate(D) == 3 * s(2, dmax=D) + s(1, 1, dmax=D)


def test_error_offset_and_expected_set():
    with pytest.raises(ParseError) as info:
        parse_expr("s[2,]")
    assert info.value.offset == 4
    assert "integer" in info.value.expected


@pytest.mark.parametrize("text, offset", [("", 0), ("s[2", 3), ("q[1]", 0), ("1 +", 3), ("s[0]", 3), ("(s[1]", 5), ("1/0", 2)])
def test_error_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.offset == offset


def test_omega_series_literal():
    got = evaluate("omegaSeries(-p[1])", 3)
    assert got == SymFunc.one(3) - e(1, dmax=3) + e(2, dmax=3) - e(3, dmax=3)
    assert parse_expr("omegaSeries(-p[1])").degree() is None


def test_omega_series_needs_p1_multiple():
    with pytest.raises(ValueError):
        evaluate("omegaSeries(p[2])", 3)


def test_rational_literals():
    assert evaluate("1/2*h[1] - 3/4", 2) == Fraction(1, 2) * h(1, dmax=2) - SymFunc.one(2, Fraction(3, 4))
