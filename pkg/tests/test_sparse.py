import re
from itertools import combinations

import pytest

from sparserees.groebner import Ideal, buchberger, initial_ideal
from sparserees.poly import T_VAR, Monomial, Polynomial, parse_polynomial, x, y
from sparserees.sparse import (
    MinorClass,
    Shape,
    ShapeError,
    diagonal_order,
    fiber_images,
    ferrers_partition,
    initial_ideal_gens,
    ladder,
    ladder_minors,
    labelled_ladder_minors,
    linear_relations,
    minor,
    minor_counts,
    minor_table,
    minors,
    named_shapes,
    plucker_relations,
    rees_images,
    relations,
    render_ladder,
    shape_validate,
    valid_shapes,
    weights,
)

P = parse_polynomial


def test_shape_validation():
    assert shape_validate(9, 3, 4) == Shape(9, 3, 4)
    cases = {(4, 2, 3): "r+s exceeds n", (5, 1, 2): "n-r-s exceeds r", (2, 1, 1): "n must be at least 3",
             (4, 0, 2): "r must be at least 1", (4, 4, 0): "r must be less than n", (4, 2, -1): "s must be nonnegative"}
    for args, msg in cases.items():
        with pytest.raises(ShapeError, match=re.escape(msg)):
            shape_validate(*args)


def _direct(nmax, s_min=1):
    return [(n, r, s) for n in range(3, nmax + 1) for r in range(0, n + 1) for s in range(-1, n + 1)
            if r >= 1 and s >= s_min and 0 <= n - r - s <= r < n]


def test_valid_shape_enumeration():
    assert len(valid_shapes(5)) == 16
    assert len(valid_shapes(7)) == 42
    for nmax in range(3, 10):
        assert [sh.astuple() for sh in valid_shapes(nmax)] == _direct(nmax)
        assert [sh.astuple() for sh in valid_shapes(nmax, include_trivial=True)] == _direct(nmax, 0)


def test_named_shapes():
    named = named_shapes()
    assert named["staircase"] == Shape(9, 3, 4)
    assert all(isinstance(v, Shape) for v in named.values())


def test_matrix_entries():
    for sh in valid_shapes(8, include_trivial=True):
        n, r, s = sh.astuple()
        assert len(sh.x_vars()) == (r + s) + (n - r)
        two = [i for i in range(1, n + 1) if sh.has_x(1, i) and sh.has_x(2, i)]
        assert two == list(range(r + 1, r + s + 1))


def test_minor_examples():
    sh = Shape(4, 1, 2)
    assert minor(sh, 2, 3) == (MinorClass.BINOMIAL, P("x[1,2]*x[2,3] - x[1,3]*x[2,2]"))
    assert minor(sh, 1, 2) == (MinorClass.MONOMIAL, P("x[1,1]*x[2,2]"))
    assert minor(Shape(5, 2, 1), 1, 2)[0] is MinorClass.ZERO
    assert minor(Shape(5, 2, 1), 1, 2)[1].is_zero()
    with pytest.raises(ValueError):
        minor(sh, 3, 3)
    assert minor_counts(sh) == {MinorClass.BINOMIAL: 1, MinorClass.MONOMIAL: 5, MinorClass.ZERO: 0}


def test_minor_classification_brute_force():
    for sh in valid_shapes(8):
        n, r, s = sh.astuple()
        ent = {(u, i): (Polynomial.var(x(u, i)) if sh.has_x(u, i) else Polynomial()) for u in (1, 2) for i in range(1, n + 1)}
        for (i, j), (cls, f) in minor_table(sh).items():
            det = ent[(1, i)] * ent[(2, j)] - ent[(1, j)] * ent[(2, i)]
            assert f == det
            expected = MinorClass.ZERO if det.is_zero() else (MinorClass.MONOMIAL if len(det) == 1 else MinorClass.BINOMIAL)
            assert cls is expected
            rule = MinorClass.ZERO if (j <= r or i > r + s) else (
                MinorClass.BINOMIAL if r + 1 <= i < j <= r + s else MinorClass.MONOMIAL)
            assert cls is rule


def test_diagonal_leading_terms():
    for sh in valid_shapes(8):
        order = diagonal_order(sh)
        for (i, j), f in minors(sh).items():
            assert f.leading_monomial(order) == Monomial({x(1, i): 1, x(2, j): 1})


def test_initial_ideal_gens():
    assert sorted(map(str, initial_ideal_gens(Shape(3, 1, 1)).gens)) == ["x[1,1]*x[2,2]", "x[1,1]*x[2,3]", "x[1,2]*x[2,3]"]
    assert len(initial_ideal_gens(Shape(4, 1, 2))) == 6
    assert len(initial_ideal_gens(Shape(9, 3, 4))) == 32


def test_initial_ideal_gens_match_buchberger():
    for sh in valid_shapes(6):
        gb = buchberger(Ideal(list(minors(sh).values()), sh.x_vars()), diagonal_order(sh))
        assert initial_ideal(gb) == initial_ideal_gens(sh)


def test_ferrers_partition():
    assert ferrers_partition(Shape(9, 3, 4)) == (6, 6, 6, 5, 4, 3, 2)
    assert ferrers_partition(Shape(4, 1, 2)) == (3, 2, 1)
    assert ferrers_partition(Shape(3, 1, 1)) == (2, 1)
    for sh in valid_shapes(8):
        lam = ferrers_partition(sh)
        assert len(lam) == sh.r + sh.s
        assert all(a >= b for a, b in zip(lam, lam[1:]))
        assert sum(lam) == len(ladder(sh).boxes) == len(initial_ideal_gens(sh))


def test_ladders():
    assert ladder(Shape(3, 1, 1)).boxes == {(1, 2), (1, 3), (2, 3)}
    assert len(ladder(Shape(9, 3, 4)).boxes) == 32
    for sh in valid_shapes(7):
        L, Lp = ladder(sh), ladder(sh, True)
        assert Lp.boxes == L.boxes
        assert Lp.extra_boxes() == (sh.n - sh.r, sh.r + sh.s)
        assert len(list(Lp.cells())) == len(L.boxes) + sh.n - sh.r + sh.r + sh.s
        assert set(Lp.variables()) == set(sh.rees_vars())
        assert set(L.variables()) == set(sh.y_vars())


def test_ladder_minors():
    assert ladder_minors(ladder(Shape(3, 1, 1))) == []
    (only,) = ladder_minors(ladder(Shape(4, 1, 2)))
    assert only == P("y[1,4]*y[2,3] - y[1,3]*y[2,4]")
    ext = ladder_minors(ladder(Shape(3, 1, 1), True))
    assert set(ext) == {P("x[2,3]*y[1,2] - x[2,2]*y[1,3]"), P("x[1,1]*y[2,3] - x[1,2]*y[1,3]")}


def test_ladder_minor_leading_term_is_main_diagonal():
    for sh in valid_shapes(6):
        for L in (ladder(sh), ladder(sh, True)):
            order = L.reading_order()
            for lm in labelled_ladder_minors(L):
                _, c = lm.poly.leading_term(order)
                assert c == 1


def test_ladder_render_small():
    text = render_ladder(ladder(Shape(4, 1, 2), True))
    assert text.splitlines() == [
        "            x24  x23  x22",
        "           [x24][x23][x22]",
        "x11   [x11][y14][y13][y12]",
        "x12   [x12][y24][y23]",
        "x13   [x13][y34]",
    ]
    rows = render_ladder(ladder(Shape(9, 3, 4))).splitlines()[1:]
    assert [r.count("[") for r in rows] == [6, 6, 6, 5, 4, 3, 2]


def test_relation_examples():
    sh = Shape(3, 1, 1)
    lin = {r.index: r.poly for r in linear_relations(sh)}
    assert lin == {(1, 1, 2, 3): P("x[1,1]*y[2,3] - x[1,2]*y[1,3]"), (2, 1, 2, 3): P("-x[2,2]*y[1,3] + x[2,3]*y[1,2]")}
    assert plucker_relations(sh) == ()
    (p,) = plucker_relations(Shape(4, 1, 2))
    assert p.poly == P("y[1,2]*y[3,4] - y[1,3]*y[2,4] + y[1,4]*y[2,3]")
    p1245 = next(r for r in plucker_relations(Shape(5, 2, 1)) if r.index == (1, 2, 4, 5))
    assert p1245.poly == P("-y[1,4]*y[2,5] + y[1,5]*y[2,4]")
    for r in linear_relations(Shape(5, 2, 1)):
        assert y(4, 5) not in r.poly.variables()


def test_relation_counts_match_oracle(oracles):
    for key, want in oracles["relation_counts"].items():
        sh = Shape(*eval(key))
        rels = relations(sh)
        assert (len(rels.linear), len(rels.plucker)) == (want["linear"], want["plucker"])


def test_relations_have_no_duplicates():
    for sh in valid_shapes(7):
        polys = relations(sh).polys()
        assert all(not f.is_zero() for f in polys)
        for f, g in combinations(polys, 2):
            assert f != g and f != -g


def test_relations_vanish_under_ring_maps():
    for sh in valid_shapes(8):
        rho, phi = rees_images(sh), fiber_images(sh)
        for rel in relations(sh).all():
            assert rel.poly.substitute(rho).is_zero(), rel.name()
        for rel in plucker_relations(sh):
            assert rel.poly.substitute(phi).is_zero(), rel.name()


def test_weights():
    sh = Shape(4, 1, 2)
    omega, pi = weights(sh)
    assert pi.of(Monomial.var(y(2, 3))) == 5
    assert pi.of(Monomial({y(1, 4): 1, y(2, 3): 1})) == 11
    order = diagonal_order(sh)
    for (i, j), f in minors(sh).items():
        lead = f.leading_monomial(order) * Monomial.var(T_VAR)
        assert omega.of(lead) == j + 2 == pi.of(Monomial.var(y(i, j)))
