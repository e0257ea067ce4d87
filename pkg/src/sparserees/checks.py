"""One checker per structural claim about the sparse 2 x n matrix, plus an
orchestrator that runs every checker on a shape under resource budgets.

Every checker returns a :class:`CheckReport`; a failing report always
carries at least one witness (a polynomial, monomial or count in text form).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import wraps
from itertools import combinations_with_replacement
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .groebner import (
    Ideal,
    buchberger,
    ideal_power,
    initial_ideal,
    is_groebner,
    kernel_basis,
    leading_ideal,
    linear_span_basis,
    reduce,
)
from .hilbert import HilbertRecord, hilbert_function, hilbert_record
from .monomial_ideal import MonomialIdeal
from .poly import DegThen, Monomial, Polynomial, TermOrder, VarKind, WeightThen
from .report import CheckReport, InvariantComparison
from .sparse import (
    Shape,
    diagonal_order,
    fiber_images,
    initial_fiber_images,
    initial_ideal_gens,
    ladder,
    labelled_ladder_minors,
    ladder_minors,
    minors,
    plucker_relations,
    rees_images,
    relations,
    weights,
)

CHECK_NAMES = (
    "minors-gb",
    "power-initial",
    "products-gb",
    "rees-kernel",
    "fiber-kernel",
    "fiber-kernel-initial",
    "pi-leading-forms",
    "pi-gb",
    "sagbi-fiber",
    "fiber-invariants",
    "rees-invariants",
)

# at most this many witness lines per report
MAX_WITNESSES = 8
# refuse ideal powers with more generators than this
DEFAULT_MAX_PRODUCTS = 20_000


@dataclass
class Config:
    """Budgets for :func:`run_all`.  Shapes above a budget get a skipped
    report with the reason, never a silent omission."""

    kmax: int = 3
    degmax: int = 6
    elim_budget: int = 5  # largest n for elimination-based checks
    power_budget: int = 5  # largest n for power and product checks
    sagbi_degree: int = 4
    leading_form_budget: int = 9
    max_products: int = DEFAULT_MAX_PRODUCTS
    checks: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.kmax < 1:
            raise ValueError("kmax must be at least 1")
        if self.degmax < 0 or self.sagbi_degree < 0:
            raise ValueError("degree bounds must be nonnegative")
        if self.checks is not None:
            self.checks = tuple(self.checks)
            unknown = [c for c in self.checks if c not in CHECK_NAMES]
            if unknown:
                raise ValueError(f"unknown check {unknown[0]!r}; choose from {', '.join(CHECK_NAMES)}")

    def wants(self, name: str) -> bool:
        return self.checks is None or name in self.checks


# ---------------------------------------------------------------------------
# helpers


def _timed(name: str) -> Callable:
    """Stamp the wrapped checker's report with its name, shape and runtime."""

    def deco(fn):
        @wraps(fn)
        def run(shape: Shape, *args, **kwargs) -> CheckReport:
            t0 = time.perf_counter()
            rep = fn(shape, *args, **kwargs)
            rep.millis = (time.perf_counter() - t0) * 1000
            rep.shape = shape.astuple()
            if not rep.name:
                rep.name = name
            return rep

        return run

    return deco


def _report(name: str, ok: bool, witnesses: Sequence[str], params=None, **kw) -> CheckReport:
    return CheckReport(name=name, status="pass" if ok else "fail", witnesses=list(witnesses)[:MAX_WITNESSES],
                       params=dict(params or {}), **kw)


def skipped(name: str, shape: Shape, reason: str, params=None) -> CheckReport:
    return CheckReport(name=name, status="skip", witnesses=[f"skipped: {reason}"], params=dict(params or {}),
                       shape=shape.astuple())


def binom(j: int, i: int) -> int:
    """``C(j, i)`` with ``C(j, i) = 0`` when ``j < i`` or ``i < 0``."""
    if i < 0 or j < i:
        return 0
    return comb(j, i)


def _minor_ideal(shape: Shape) -> Ideal:
    return Ideal(list(minors(shape).values()), shape.x_vars())


def _y_degree(f: Polynomial) -> int:
    return max(sum(e for v, e in m.exponents if v.kind == VarKind.Y) for m in f.monomials())


def _two_sided(found: Sequence[Polynomial], target: Sequence[Polynomial], ambient,
               order: TermOrder) -> Tuple[bool, List[str], Dict[str, int]]:
    """Ideal equality ``(found) == (target)`` by reduction certificates.

    ``found`` is a Groebner basis under ``order`` (so target membership is
    decided by reducing against it); the other inclusion reduces every
    element of ``found`` against a Groebner basis of ``target``.
    """
    witnesses: List[str] = []
    fgb = list(found)
    tgb = buchberger(Ideal(target, ambient), order).elements if target else []
    missing = 0
    for g in target:
        if not fgb or not _reduce_to_zero(g, fgb, order):
            missing += 1
            witnesses.append(f"target generator not in the computed ideal: {g}")
    extra = 0
    for g in found:
        if not tgb or not _reduce_to_zero(g, tgb, order):
            extra += 1
            witnesses.append(f"computed element not in the target ideal: {g}")
    return not (missing or extra), witnesses, {"target_not_in_computed": missing, "computed_not_in_target": extra}


def _reduce_to_zero(f: Polynomial, G: Sequence[Polynomial], order: TermOrder) -> bool:
    return reduce(f, G, order).is_zero()


def pi_order(shape: Shape) -> TermOrder:
    """The weight ``pi`` refined by reading-order lex on the extended ladder."""
    _, pi = weights(shape)
    return WeightThen(pi, ladder(shape, True).reading_order())


def _monomial_ideal_witnesses(computed: MonomialIdeal, expected: MonomialIdeal) -> List[str]:
    out = [f"generator missing from computed ideal: {m}" for m in expected.gens if m not in set(computed.gens)]
    out += [f"unexpected generator: {m}" for m in computed.gens if m not in set(expected.gens)]
    return out


# ---------------------------------------------------------------------------
# Groebner structure of I and its powers


@_timed("minors-gb")
def check_minors_gb(shape: Shape) -> CheckReport:
    """The minors are a Groebner basis under the diagonal order and their
    initial ideal is ``(x1i x2j : i <= r+s, max(r, i) < j)``."""
    order = diagonal_order(shape)
    I = _minor_ideal(shape)
    gbrep = is_groebner(I, order)
    computed = leading_ideal(I.generators, order, shape.x_vars())
    expected = initial_ideal_gens(shape)
    witnesses = list(gbrep.witnesses if not gbrep.passed else [])
    if computed != expected:
        witnesses += _monomial_ideal_witnesses(computed, expected)
    return _report("minors-gb", gbrep.passed and computed == expected, witnesses,
                   {"generators": len(I), "pairs_reduced": gbrep.params["pairs_reduced"]},
                   values={"initial_generators": len(computed)})


@_timed("power-initial")
def check_power_initial(shape: Shape, k: int, max_products: int = DEFAULT_MAX_PRODUCTS) -> CheckReport:
    """``in(I^k) == in(I)^k`` under the diagonal order."""
    if k < 2:
        raise ValueError("k must be at least 2")
    I = _minor_ideal(shape)
    count = comb(len(I) + k - 1, k)
    if count > max_products:
        return skipped("power-initial", shape, f"{count} products exceed the product budget {max_products}", {"k": k})
    order = diagonal_order(shape)
    gb = buchberger(ideal_power(I, k), order)
    computed = initial_ideal(gb)
    expected = leading_ideal(I.generators, order, shape.x_vars()).power(k)
    ok = computed == expected
    return _report("power-initial", ok, [] if ok else _monomial_ideal_witnesses(computed, expected),
                   {"k": k}, values={"basis_size": len(gb), "initial_generators": len(expected)})


@_timed("products-gb")
def check_products_gb(shape: Shape, k: int, max_products: int = DEFAULT_MAX_PRODUCTS) -> CheckReport:
    """The k-fold products of minors are a Groebner basis of ``I^k``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    I = _minor_ideal(shape)
    count = comb(len(I) + k - 1, k)
    if count > max_products:
        return skipped("products-gb", shape, f"{count} products exceed the product budget {max_products}", {"k": k})
    rep = is_groebner(ideal_power(I, k), diagonal_order(shape))
    return _report("products-gb", rep.passed, rep.witnesses if not rep.passed else [],
                   {"k": k, "products": rep.params["generators"], "pairs_reduced": rep.params["pairs_reduced"]})


# ---------------------------------------------------------------------------
# defining equations


@_timed("rees-kernel")
def check_rees_kernel(shape: Shape) -> CheckReport:
    """The kernel of ``y_ij -> f_ij t`` equals ``(l) + (p)``; its reduced
    basis is quadratic in ``y`` and its y-linear part lies in ``(l)``."""
    order = pi_order(shape)
    ambient = shape.rees_vars()
    gb = kernel_basis(rees_images(shape), keep_order=order)
    rels = relations(shape)
    ok, witnesses, counts = _two_sided(gb.elements, rels.polys(), ambient, order)

    ydeg = max((_y_degree(g) for g in gb.elements), default=0)
    if ydeg > 2:
        ok = False
        witnesses += [f"basis element of y-degree {_y_degree(g)}: {g}" for g in gb.elements if _y_degree(g) > 2]

    lin = [rel.poly for rel in rels.linear]
    lin_gb = buchberger(Ideal(lin, ambient), order).elements if lin else []
    y_linear = [g for g in gb.elements if _y_degree(g) == 1]
    bad_linear = [g for g in y_linear if not lin_gb or not _reduce_to_zero(g, lin_gb, order)]
    if bad_linear:
        ok = False
        witnesses += [f"y-linear kernel element outside (l): {g}" for g in bad_linear]

    # informational: does the refined order already see the ladder minors?
    Lp = ladder(shape, True)
    refined = MonomialIdeal(gb.leading_monomials(), Lp.variables()) == leading_ideal(
        ladder_minors(Lp), Lp.reading_order(), Lp.variables())
    return _report("rees-kernel", ok, witnesses,
                   {"order": "pi refined by extended-ladder reading lex"},
                   values={"basis_size": len(gb), "linear": len(rels.linear), "plucker": len(rels.plucker),
                           "max_y_degree": ydeg, "y_linear_elements": len(y_linear),
                           "refined_initial_is_ladder": refined, **counts})


@_timed("fiber-kernel")
def check_fiber_kernel(shape: Shape, use_initial: bool = False) -> CheckReport:
    """The kernel of ``y_ij -> f_ij`` equals ``(p)``; with ``use_initial``
    the kernel of ``y_ij -> in(f_ij)`` equals the 2x2 minors of the ladder."""
    name = "fiber-kernel-initial" if use_initial else "fiber-kernel"
    L = ladder(shape)
    order = DegThen(L.reading_order())
    ambient = shape.y_vars()
    images = initial_fiber_images(shape) if use_initial else fiber_images(shape)
    gb = kernel_basis(images, keep_order=order)
    target = ladder_minors(L) if use_initial else [rel.poly for rel in plucker_relations(shape)]
    ok, witnesses, counts = _two_sided(gb.elements, target, ambient, order)
    return _report(name, ok, witnesses, {"use_initial": use_initial},
                   values={"basis_size": len(gb), "target_generators": len(target), **counts})


# ---------------------------------------------------------------------------
# weight degeneration


def expected_label(rel) -> tuple:
    """Ladder-minor label that should be the pi-leading form of ``rel``."""
    if rel.kind == "l":
        u, i, j, k = rel.index
        return ("E1", i, j, k) if u == 1 else ("E2", i, j, k)
    return ("F",) + tuple(rel.index)


@_timed("pi-leading-forms")
def check_pi_leading_forms(shape: Shape) -> CheckReport:
    """``in_pi`` maps the relations bijectively onto the 2x2 minors of the
    extended ladder, up to sign, with ``l_1ijk -> E1_ijk``,
    ``l_2ijk -> E2_ijk`` and ``p_ijkl -> F_ijkl``."""
    _, pi = weights(shape)
    lad = {m.label: m.poly for m in labelled_ladder_minors(ladder(shape, True))}
    hit: Dict[tuple, int] = {}
    witnesses: List[str] = []
    rels = relations(shape).all()
    for rel in rels:
        form = rel.poly.initial_form(pi)
        lab = expected_label(rel)
        target = lad.get(lab)
        if target is None or (form != target and form != -target):
            witnesses.append(f"in_pi({rel.name()}) = {form} is not {lab[0]}_{{{','.join(map(str, lab[1:]))}}}"
                             + ("" if target is not None else " (no such ladder minor)"))
            continue
        hit[lab] = hit.get(lab, 0) + 1
    for lab, c in hit.items():
        if c > 1:
            witnesses.append(f"ladder minor {lab} hit {c} times")
    for lab in lad:
        if lab not in hit:
            witnesses.append(f"ladder minor {lab} = {lad[lab]} is not a leading form")
    return _report("pi-leading-forms", not witnesses, witnesses,
                   values={"relations": len(rels), "ladder_minors": len(lad)})


@_timed("pi-gb")
def check_pi_gb(shape: Shape, D: int = 6) -> CheckReport:
    """``HF(S/I_2(L'))`` equals ``HF(S/J)`` in degrees ``<= D``.

    The left side reads the leading terms of the ladder minors under the
    reading order (checked to be a Groebner basis here); the right side uses
    a deglex Groebner basis of ``J``, independent of the weight.
    """
    Lp = ladder(shape, True)
    ambient = shape.rees_vars()
    read = Lp.reading_order()
    lad = ladder_minors(Lp)
    witnesses: List[str] = []
    lad_gb = is_groebner(Ideal(lad, ambient), read) if lad else None
    if lad_gb is not None and not lad_gb.passed:
        witnesses += ["ladder minors are not a Groebner basis under the reading order"] + lad_gb.witnesses
    left = hilbert_function(leading_ideal(lad, read, ambient), D, len(ambient))
    gb = kernel_basis(rees_images(shape))
    right = hilbert_function(MonomialIdeal(gb.leading_monomials(), ambient), D, len(ambient))
    for d, (a, b) in enumerate(zip(left, right)):
        if a != b:
            witnesses.append(f"degree {d}: HF(S/I_2(L')) = {a}, HF(S/J) = {b}")
    return _report("pi-gb", not witnesses, witnesses, {"D": D},
                   values={"hf_ladder": left, "hf_kernel": right})


@_timed("sagbi-fiber")
def check_sagbi_fiber(shape: Shape, D: int = 4, max_products: int = DEFAULT_MAX_PRODUCTS) -> CheckReport:
    """For ``d <= D``: the degree-2d piece of ``I^d``, the degree-2d piece
    of ``in(I)^d`` and ``HF(T/I_2(L), d)`` have equal dimension."""
    if D < 1:
        raise ValueError("D must be at least 1")
    ms = list(minors(shape).values())
    count = comb(len(ms) + D - 1, D)
    if count > max_products:
        return skipped("sagbi-fiber", shape, f"{count} products exceed the product budget {max_products}", {"D": D})
    order = diagonal_order(shape)
    leads = [f.leading_monomial(order) for f in ms]
    L = ladder(shape)
    hf = hilbert_function(leading_ideal(ladder_minors(L), L.reading_order(), L.variables()), D, len(L.variables()))
    rows = []
    witnesses = []
    for d in range(1, D + 1):
        prods = []
        mons = set()
        for combo in combinations_with_replacement(range(len(ms)), d):
            p = Polynomial.constant(1)
            m = Monomial()
            for i in combo:
                p = p * ms[i]
                m = m * leads[i]
            prods.append(p)
            mons.add(m)
        span = len(linear_span_basis(prods, order))
        row = (d, span, len(mons), hf[d])
        rows.append(list(row))
        if not span == len(mons) == hf[d]:
            witnesses.append(f"d={d}: dim I^d_(2d) = {span}, dim (in I)^d_(2d) = {len(mons)}, HF(T/I_2(L), d) = {hf[d]}")
    return _report("sagbi-fiber", not witnesses, witnesses, {"D": D}, values={"dims": rows})


# ---------------------------------------------------------------------------
# numerical invariants


def fiber_record(shape: Shape) -> HilbertRecord:
    """Hilbert data of ``T/I_2(L)`` from the ladder's initial ideal."""
    L = ladder(shape)
    J = leading_ideal(ladder_minors(L), L.reading_order(), L.variables())
    return hilbert_record(J, len(L.variables()))


def rees_record(shape: Shape) -> HilbertRecord:
    """Hilbert data of ``S/I_2(L')``, all variables of degree 1."""
    Lp = ladder(shape, True)
    J = leading_ideal(ladder_minors(Lp), Lp.reading_order(), shape.rees_vars())
    return hilbert_record(J, len(shape.rees_vars()))


def _trim(h: List[int]) -> List[int]:
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return h


def fiber_formulas(shape: Shape) -> Dict[str, object]:
    n, r, s = shape.astuple()
    h = _trim([binom(r + s - 1, k) * binom(n - r - 1, k) - binom(s + 1, k + 1) * binom(n - 3, k - 1)
               for k in range(r + s)])
    if n == r + s:
        a = -n if r == 1 else -n + 1
    else:
        a = min(-r - s, r - n, -s - 2)
    return {
        "dim": min(n + s - 1, 2 * n - r - 2),
        "h": h,
        "e": binom(n + s - 2, n - r - 1) - binom(n + s - 2, n - 1),
        "reg": min(n - 3, n - r - 1, r + s - 1),
        "a": a,
        "gorenstein": r <= 2,
    }


def rees_formulas(shape: Shape) -> Dict[str, object]:
    n, r, s = shape.astuple()
    h = [binom(r + s, k) * binom(n - r, k) - binom(s + 1, k + 1) * binom(n - 1, k - 1) for k in range(r + s + 1)]
    if len(h) > 1:
        h[1] = (r + s) * (n - r) - binom(s + 1, 2) - 1
    return {
        "dim": n + s + 1,
        "h": _trim(h),
        "h1": (r + s) * (n - r) - binom(s + 1, 2) - 1,
        "e": binom(n + s, n - r) - binom(n + s, n + 1) - 1,
        "reg": min(n - 1, n - r, r + s),
        "a": min(-s - 2, -s - r - 1, r - n - 1),
    }


def _compare(name: str, formulas: Dict[str, object], computed: Dict[str, object]) -> CheckReport:
    comps = [InvariantComparison(q, formulas[q], computed[q]) for q in formulas]
    witnesses = [f"{c.quantity}: formula {c.formula} != computed {c.computed}" for c in comps if not c.equal]
    return _report(name, not witnesses, witnesses, comparisons=comps,
                   values={k: v for k, v in computed.items() if k in ("dim", "h", "e", "reg", "a")})


def _computed(rec: HilbertRecord) -> Dict[str, object]:
    return {"dim": rec.dim, "h": list(rec.h), "e": rec.e, "reg": rec.reg, "a": rec.a_inv}


@_timed("fiber-invariants")
def check_fiber_invariants(shape: Shape) -> CheckReport:
    """Formula-vs-computed dim, h-vector, e, reg, a of the special fiber,
    and h-symmetry iff ``r <= 2``."""
    rec = fiber_record(shape)
    computed = _computed(rec)
    computed["gorenstein"] = list(rec.h) == list(rec.h)[::-1]
    rep = _compare("fiber-invariants", fiber_formulas(shape), computed)
    rep.params["gorenstein"] = "h symmetric iff r <= 2; the only-if direction rests on a cited result"
    return rep


@_timed("rees-invariants")
def check_rees_invariants(shape: Shape) -> CheckReport:
    """Formula-vs-computed dim, h-vector, h_1, e, reg, a of the Rees algebra."""
    rec = rees_record(shape)
    computed = _computed(rec)
    computed["h1"] = rec.h[1] if len(rec.h) > 1 else 0
    return _compare("rees-invariants", rees_formulas(shape), computed)


# ---------------------------------------------------------------------------
# orchestration


def run_all(shape: Shape, config: Optional[Config] = None) -> List[CheckReport]:
    """Run every selected checker on ``shape``, skipping (with a reason)
    those whose budget the shape exceeds."""
    if not isinstance(shape, Shape):
        shape = Shape(*shape)
    cfg = config or Config()
    n = shape.n
    out: List[CheckReport] = []

    def want(name):
        return cfg.wants(name)

    if want("minors-gb"):
        out.append(check_minors_gb(shape))
    for name, fn in (("power-initial", check_power_initial), ("products-gb", check_products_gb)):
        if not want(name):
            continue
        ks = range(2, cfg.kmax + 1)
        if not ks:
            out.append(skipped(name, shape, f"kmax={cfg.kmax} leaves no power to check", {"kmax": cfg.kmax}))
        for k in ks:
            if n > cfg.power_budget:
                out.append(skipped(name, shape, f"n={n} exceeds the power budget {cfg.power_budget}", {"k": k}))
            else:
                out.append(fn(shape, k, cfg.max_products))
    elim = [
        ("rees-kernel", lambda: check_rees_kernel(shape), {}),
        ("fiber-kernel", lambda: check_fiber_kernel(shape, False), {"use_initial": False}),
        ("fiber-kernel-initial", lambda: check_fiber_kernel(shape, True), {"use_initial": True}),
    ]
    for name, thunk, params in elim:
        if want(name):
            out.append(thunk() if n <= cfg.elim_budget else
                       skipped(name, shape, f"n={n} exceeds the elimination budget {cfg.elim_budget}", params))
    if want("pi-leading-forms"):
        out.append(check_pi_leading_forms(shape) if n <= cfg.leading_form_budget else
                   skipped("pi-leading-forms", shape, f"n={n} exceeds the leading-form budget {cfg.leading_form_budget}"))
    if want("pi-gb"):
        out.append(check_pi_gb(shape, cfg.degmax) if n <= cfg.elim_budget else
                   skipped("pi-gb", shape, f"n={n} exceeds the elimination budget {cfg.elim_budget}", {"D": cfg.degmax}))
    if want("sagbi-fiber"):
        if cfg.sagbi_degree < 1:
            out.append(skipped("sagbi-fiber", shape, "sagbi degree bound is 0", {"D": 0}))
        elif n > cfg.elim_budget:
            out.append(skipped("sagbi-fiber", shape, f"n={n} exceeds the elimination budget {cfg.elim_budget}",
                               {"D": cfg.sagbi_degree}))
        else:
            out.append(check_sagbi_fiber(shape, cfg.sagbi_degree, cfg.max_products))
    if want("fiber-invariants"):
        out.append(check_fiber_invariants(shape))
    if want("rees-invariants"):
        out.append(check_rees_invariants(shape))
    return out
