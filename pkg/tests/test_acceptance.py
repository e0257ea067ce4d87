"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Criterion 7 asserts the closed fiber formulas on every shape with n <= 7.
They do not hold when n = r+s (h-vector and multiplicity), and h-symmetry
is not equivalent to r <= 2 on the (n, n-1, 1) family.  The test runs the
full comparison, prints FAIL with the counterexamples, and is marked as a
strict expected failure so that a fix to either side turns the suite red.
"""

import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from linalg_oracle import homog, in_span_oracle
from sparserees.checks import (
    check_fiber_invariants,
    check_fiber_kernel,
    check_minors_gb,
    check_pi_gb,
    check_pi_leading_forms,
    check_power_initial,
    check_products_gb,
    check_rees_invariants,
    check_rees_kernel,
    check_sagbi_fiber,
    fiber_formulas,
)
from sparserees.cli import main
from sparserees.groebner import Ideal, buchberger, normal_form
from sparserees.hilbert import hilbert_function, hilbert_function_oracle
from sparserees.monomial_ideal import MonomialIdeal
from sparserees.poly import Block, DegThen, Lex, Monomial, Polynomial, WeightThen, Weighting, x, y
from sparserees.sparse import Shape, valid_shapes


def record(num, title, ok, detail, elapsed, bound):
    ok = ok and elapsed < bound
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}  ({detail}; {elapsed:.2f}s, bound {bound:g}s)"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)
    return ok


def sweep(checker, nmax, *args):
    failures, count = [], 0
    for sh in valid_shapes(nmax):
        rep = checker(sh, *args)
        count += 1
        if rep.status != "pass":
            failures.append(f"{sh} {rep.status}: {rep.witnesses[:2]}")
    return count, failures


def test_criterion_1_golden_partition(capsys):
    t0 = time.perf_counter()
    code = main(["info", "9", "3", "4"])
    out = capsys.readouterr().out
    elapsed = time.perf_counter() - t0
    ok = code == 0 and "lambda = (6,6,6,5,4,3,2)" in out
    assert record(1, "partition of (9,3,4)", ok, "lambda = (6,6,6,5,4,3,2)" if ok else "wrong partition", elapsed, 1)


def test_criterion_2_minors_groebner():
    t0 = time.perf_counter()
    count, failures = sweep(check_minors_gb, 6)
    elapsed = time.perf_counter() - t0
    assert record(2, "minors are a Groebner basis with ladder initial ideal", not failures,
                  f"{count} shapes, n <= 6, {len(failures)} failures", elapsed, 60), failures


def test_criterion_3_power_initial():
    t0 = time.perf_counter()
    failures, count = [], 0
    for k in (2, 3):
        for checker in (check_power_initial, check_products_gb):
            c, f = sweep(checker, 5, k)
            count += c
            failures += f
    elapsed = time.perf_counter() - t0
    assert record(3, "in(I^k) = in(I)^k and products are a Groebner basis, k = 2, 3", not failures,
                  f"{count} shape/k/check runs, n <= 5, {len(failures)} failures", elapsed, 300), failures


def test_criterion_4_rees_kernel():
    t0 = time.perf_counter()
    count, failures = sweep(check_rees_kernel, 5)
    elapsed = time.perf_counter() - t0
    assert record(4, "Rees kernel = (linear, Pluecker), y-degree <= 2, fiber type", not failures,
                  f"{count} shapes, n <= 5, {len(failures)} failures", elapsed, 600), failures


def test_criterion_5_fiber_kernel():
    t0 = time.perf_counter()
    count, failures = sweep(check_fiber_kernel, 5, False)
    c2, f2 = sweep(check_fiber_kernel, 5, True)
    elapsed = time.perf_counter() - t0
    failures += f2
    assert record(5, "fiber kernel = (Pluecker), initial-term kernel = ladder minors", not failures,
                  f"{count + c2} runs, n <= 5, {len(failures)} failures", elapsed, 300), failures


def test_criterion_6_weight_groebner():
    t0 = time.perf_counter()
    c1, f1 = sweep(check_pi_leading_forms, 8)
    t1 = time.perf_counter() - t0
    c2, f2 = sweep(check_pi_gb, 5, 6)
    elapsed = time.perf_counter() - t0
    failures = f1 + f2
    ok = not failures and t1 < 10
    assert record(6, "leading-form bijection onto extended-ladder minors, HF agreement to degree 6", ok,
                  f"{c1} shapes n <= 8 in {t1:.2f}s (bound 10s), {c2} shapes n <= 5, {len(failures)} failures",
                  elapsed, 70), failures


@pytest.mark.xfail(strict=True, reason="closed h/e forms miss the n = r+s case; h-symmetry differs from r <= 2 "
                                       "on (n, n-1, 1)")
def test_criterion_7_fiber_invariants():
    t0 = time.perf_counter()
    failures = []
    by_quantity = {}
    count = 0
    for sh in valid_shapes(7):
        rep = check_fiber_invariants(sh)
        count += 1
        for c in rep.comparisons:
            if not c.equal:
                by_quantity.setdefault(c.quantity, []).append(str(sh))
        if rep.status != "pass":
            failures.append(str(sh))
    goldens = {(4, 1, 2): {"h": [1, 1], "e": 2, "dim": 5, "reg": 1, "a": -4},
               (5, 2, 2): {"h": [1, 3, 1], "e": 5},
               (7, 3, 2): {"h": [1, 9, 14, 4], "e": 28}}
    bad_golden = []
    for sh, want in goldens.items():
        got = check_fiber_invariants(Shape(*sh)).values
        if any(got[k] != v for k, v in want.items()):
            bad_golden.append(sh)
    elapsed = time.perf_counter() - t0
    detail = f"{count} shapes n <= 7, {len(failures)} mismatching; goldens {'ok' if not bad_golden else bad_golden}"
    for q, shapes in sorted(by_quantity.items()):
        detail += f"; {q} differs on {len(shapes)} e.g. {', '.join(shapes[:3])}"
    assert record(7, "closed-form fiber invariants", not failures and not bad_golden, detail, elapsed, 60), failures


def test_criterion_7_goldens_and_unaffected_quantities():
    # the parts of criterion 7 that do hold, kept green independently
    for sh in valid_shapes(7):
        rep = check_fiber_invariants(sh)
        for c in rep.comparisons:
            if c.quantity in ("dim", "reg", "a") or sh.n != sh.r + sh.s and c.quantity in ("h", "e"):
                assert c.equal, (sh, c)
    assert check_fiber_invariants(Shape(4, 1, 2)).values == {"dim": 5, "h": [1, 1], "e": 2, "reg": 1, "a": -4}
    assert fiber_formulas(Shape(7, 3, 2))["e"] == 28


def test_criterion_8_rees_invariants():
    t0 = time.perf_counter()
    count, failures = sweep(check_rees_invariants, 7)
    golden = check_rees_invariants(Shape(4, 1, 2)).values
    golden_ok = golden == {"dim": 7, "h": [1, 5, 6, 1], "e": 13, "reg": 3, "a": -4}
    elapsed = time.perf_counter() - t0
    assert record(8, "closed-form Rees invariants", not failures and golden_ok,
                  f"{count} shapes n <= 7, {len(failures)} failures, (4,1,2) golden {'ok' if golden_ok else golden}",
                  elapsed, 120), failures


def test_criterion_9_sagbi():
    t0 = time.perf_counter()
    count, failures = sweep(check_sagbi_fiber, 5, 4)
    elapsed = time.perf_counter() - t0
    assert record(9, "three-way HF agreement for I^d, in(I)^d and the ladder ring, d <= 4", not failures,
                  f"{count} shapes, n <= 5, {len(failures)} failures", elapsed, 300), failures


# -- criterion 10: engine property suites with a fixed seed ---------------------

VS = (x(1, 1), x(1, 2), x(2, 2), x(2, 3), y(1, 2), y(1, 3))


def _orders():
    return [Lex(VS), Lex(VS[::-1]), DegThen(Lex(VS)), Block([Lex(VS[:3]), DegThen(Lex(VS[3:]))]),
            WeightThen(Weighting({u: i + 1 for i, u in enumerate(VS)}), Lex(VS))]


def _rand_mono(rng, vs=VS, top=3):
    return Monomial({v: e for v in vs if (e := rng.randint(0, top))})


def _order_axioms(rng, trials=200):
    bad = []
    for order in _orders():
        for _ in range(trials):
            a, b, c = (_rand_mono(rng) for _ in range(3))
            ab = order.compare(a, b)
            ok = ab == -order.compare(b, a) and order.compare(Monomial(), a) <= 0
            ok = ok and (ab >= 0 or order.compare(a * c, b * c) < 0)
            ok = ok and not (ab <= 0 and order.compare(b, c) <= 0 and order.compare(a, c) > 0)
            if not ok:
                bad.append((order, a, b, c))
    return bad


def _reduction_contract(rng, trials=100):
    vs = VS[:3]
    order = DegThen(Lex(vs))
    bad = []
    for _ in range(trials):
        gens = [homog(vs, rng.randint(1, 2), [rng.randint(-2, 2) for _ in range(10)]) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        d = rng.randint(max(g.degree() for g in gens), 4)
        if rng.random() < 0.5:
            f = Polynomial()
            for g in gens:
                f = f + homog(vs, d - g.degree(), [rng.randint(-2, 2) for _ in range(15)]) * g
        else:
            f = homog(vs, d, [rng.randint(-2, 2) for _ in range(15)])
        if f.is_zero():
            continue
        gb = buchberger(Ideal(gens, vs), order)
        if normal_form(f, gb).is_zero() != in_span_oracle(f, gens, vs):
            bad.append((gens, f))
    return bad


def _hilbert_vs_enumeration(rng, trials=100):
    pool = [x(1, i) for i in range(1, 11)]
    bad = []
    for _ in range(trials):
        k = rng.randint(1, 10)
        vs = pool[:k]
        gens = []
        for _ in range(rng.randint(0, 6)):
            m = _rand_mono(rng, vs, 2)
            gens.append(m if m.degree else Monomial.var(rng.choice(vs)))
        J = MonomialIdeal(gens, vs)
        if hilbert_function(J, 6, k) != [hilbert_function_oracle(J, d, k) for d in range(7)]:
            bad.append(J)
    return bad


def test_criterion_10_engine_properties():
    rng = random.Random(20261014)
    t0 = time.perf_counter()
    bad_orders = _order_axioms(rng)
    bad_reduce = _reduction_contract(rng)
    bad_hilbert = _hilbert_vs_enumeration(rng)
    elapsed = time.perf_counter() - t0
    ok = not (bad_orders or bad_reduce or bad_hilbert)
    assert record(10, "order axioms, membership vs linear algebra, Hilbert recursion vs enumeration", ok,
                  f"{len(bad_orders)}/{len(bad_reduce)}/{len(bad_hilbert)} counterexamples over 1000/100/100 trials",
                  elapsed, 120)
