from fractions import Fraction

import pytest
from hypothesis import given

from sparserees.poly import (
    Block,
    DegThen,
    EmptyPolynomial,
    Lex,
    MalformedInput,
    Monomial,
    Polynomial,
    TExtended,
    T_VAR,
    WeightThen,
    Weighting,
    parse_polynomial,
    x,
    y,
)
from sparserees.sparse import Shape, diagonal_order, linear_relations, minors, plucker_relations, rees_images, fiber_images, weights

from strategies import SMALL_VARS, monomials, polynomials

P = parse_polynomial


def orders():
    v = SMALL_VARS
    return [
        Lex(v),
        Lex(v[::-1]),
        DegThen(Lex(v)),
        Block([Lex(v[:3]), DegThen(Lex(v[3:]))]),
        WeightThen(Weighting({u: i + 1 for i, u in enumerate(v)}), Lex(v)),
    ]


# -- variables and monomials -------------------------------------------------


def test_variable_validation():
    with pytest.raises(MalformedInput):
        x(3, 1)
    with pytest.raises(MalformedInput):
        y(2, 2)
    with pytest.raises(MalformedInput):
        y(3, 1)


def test_canonical_enumeration():
    vs = sorted([T_VAR, y(1, 3), x(2, 2), y(1, 2), x(1, 3), x(1, 1)])
    assert [str(v) for v in vs] == ["x[1,1]", "x[1,3]", "x[2,2]", "y[1,2]", "y[1,3]", "t"]


def test_monomial_basics():
    m = Monomial({x(1, 1): 2, x(2, 2): 1})
    assert m.degree == 3
    assert Monomial({x(1, 1): 0}).is_one()
    assert m // Monomial.var(x(1, 1)) == Monomial({x(1, 1): 1, x(2, 2): 1})
    assert str(m) == "x[1,1]^2*x[2,2]"
    with pytest.raises(ValueError):
        Monomial.var(x(1, 1)) // m


# -- compare / leading terms --------------------------------------------------


def test_lex_leading_variable_dominates():
    order = Lex([x(1, 1), x(1, 2), x(2, 2), x(2, 3)])
    a = Monomial({x(1, 1): 1, x(2, 2): 1})
    b = Monomial({x(1, 2): 2})
    assert order.compare(a, b) == 1
    assert order.compare(a, a) == 0


def test_t_extended_compares_t_degree_first():
    order = TExtended(Lex([x(1, 1), x(2, 2)]))
    a = Monomial({T_VAR: 2})
    b = Monomial({x(1, 1): 5, T_VAR: 1})
    assert order.compare(a, b) == 1


def test_unknown_variable_is_malformed():
    with pytest.raises(MalformedInput):
        Lex([x(1, 1)]).key(Monomial.var(x(1, 2)))


def test_leading_term_of_binomial_minor():
    sh = Shape(4, 1, 2)
    f23 = minors(sh)[(2, 3)]
    m, c = f23.leading_term(diagonal_order(sh))
    assert m == Monomial({x(1, 2): 1, x(2, 3): 1}) and c == 1
    mono = minors(sh)[(1, 2)]
    assert mono.leading_monomial(diagonal_order(sh)) == mono.monomials()[0]


def test_leading_term_of_plucker_under_y_lex():
    p = plucker_relations(Shape(4, 1, 2))[0].poly
    order = Lex([y(1, 2), y(1, 3), y(1, 4), y(2, 3), y(2, 4), y(3, 4)])
    assert p.leading_monomial(order) == Monomial({y(1, 2): 1, y(3, 4): 1})


def test_leading_term_of_zero_raises():
    with pytest.raises(EmptyPolynomial):
        Polynomial().leading_term(Lex(SMALL_VARS))
    with pytest.raises(EmptyPolynomial):
        Polynomial().initial_form(Weighting({}))


# -- initial forms ------------------------------------------------------------


def test_initial_form_examples():
    sh = Shape(4, 1, 2)
    _, pi = weights(sh)
    p = plucker_relations(sh)[0].poly
    assert p.initial_form(pi) == P("y[1,4]*y[2,3] - y[1,3]*y[2,4]")
    assert Monomial({y(1, 4): 1, y(2, 3): 1}).weight(pi) == 11
    l1123 = next(r.poly for r in linear_relations(sh) if r.index == (1, 1, 2, 3))
    assert l1123.initial_form(pi) == P("x[1,1]*y[2,3] - x[1,2]*y[1,3]")
    homog = P("x[1,1]*y[2,3] - x[1,2]*y[1,3]")
    assert homog.initial_form(pi) == homog


@given(polynomials())
def test_initial_form_keeps_max_weight_terms(f):
    w = Weighting({v: i % 3 + 1 for i, v in enumerate(SMALL_VARS)})
    if f.is_zero():
        return
    g = f.initial_form(w)
    top = max(m.weight(w) for m in f.monomials())
    assert {m.weight(w) for m in g.monomials()} == {top}
    assert all(f.coefficient(m) == c for m, c in g.terms())


def test_weighting_rejects_negative():
    with pytest.raises(MalformedInput):
        Weighting({x(1, 1): -1})
    assert Monomial().weight(Weighting({})) == 0


# -- arithmetic ---------------------------------------------------------------


def test_arithmetic_examples():
    a, b = P("x[1,1]"), P("x[2,2]")
    assert (a - b) + b == a
    assert (a * Polynomial()).is_zero()
    sh = Shape(4, 1, 2)
    f = minors(sh)
    assert (f[(1, 2)] * f[(3, 4)] - f[(1, 3)] * f[(2, 4)] + f[(1, 4)] * f[(2, 3)]).is_zero()


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    for p in (f + g, f * g, f - f):
        assert all(c != 0 for _, c in p.terms())
    assert (f - f).is_zero()


@given(polynomials())
def test_text_round_trip(f):
    assert parse_polynomial(str(f)) == f


def test_parser_forms():
    assert P("3/2*x[1,1]^2 - (x[1,1] + t)*t") == Polynomial.monomial(Monomial({x(1, 1): 2}), Fraction(3, 2)) \
        - P("x[1,1]*t") - P("t^2")
    assert str(P("0")) == "0"
    for bad in ("x[1,", "x[3,1]", "y[2,1]", "2 +", "z"):
        with pytest.raises(MalformedInput):
            parse_polynomial(bad)


# -- order axioms -------------------------------------------------------------


@pytest.mark.parametrize("order", orders(), ids=repr)
@given(a=monomials(), b=monomials(), c=monomials())
def test_order_axioms(order, a, b, c):
    ab = order.compare(a, b)
    assert ab == -order.compare(b, a)
    assert (ab == 0) == (a == b)
    if ab < 0:
        assert order.compare(a * c, b * c) < 0
    assert order.compare(Monomial(), a) <= 0
    if ab <= 0 and order.compare(b, c) <= 0:
        assert order.compare(a, c) <= 0


# -- substitution -------------------------------------------------------------


def test_substitution_examples():
    sh = Shape(3, 1, 1)
    rho = rees_images(sh)
    for rel in linear_relations(sh):
        assert rel.poly.substitute(rho).is_zero()
    f = P("x[1,1]*y[2,3] + 2")
    assert f.substitute({}) == f
    sh4 = Shape(4, 1, 2)
    assert plucker_relations(sh4)[0].poly.substitute(fiber_images(sh4)).is_zero()


@given(polynomials(), polynomials(), polynomials(max_terms=3), polynomials(max_terms=3))
def test_substitution_is_a_ring_map(f, g, a, b):
    assignment = {x(1, 1): a, y(1, 2): b}
    assert (f * g).substitute(assignment) == f.substitute(assignment) * g.substitute(assignment)
    assert (f + g).substitute(assignment) == f.substitute(assignment) + g.substitute(assignment)
