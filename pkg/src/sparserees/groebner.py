"""Reduction, Buchberger's algorithm, elimination and ring-map kernels.

Internally the kernel works on dense exponent tuples over the ideal's
ambient variables with integer (fraction-free, primitive) coefficients.
Results are converted back to :class:`Polynomial` with monic rational
normalization.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .monomial_ideal import MonomialIdeal
from .poly import (
    Block,
    DegThen,
    Lex,
    MalformedInput,
    Monomial,
    Polynomial,
    TermOrder,
    Var,
    common_denominator,
)
from .report import CheckReport

Exp = Tuple[int, ...]
IPoly = Dict[Exp, int]


@dataclass(frozen=True)
class Ideal:
    """Generators plus the variable universe they live in."""

    generators: Tuple[Polynomial, ...]
    ambient: Tuple[Var, ...]

    def __init__(self, generators: Iterable[Polynomial], ambient: Optional[Iterable[Var]] = None):
        gens = tuple(g for g in generators if not g.is_zero())
        used = sorted({v for g in gens for v in g.variables()})
        amb = tuple(sorted(set(ambient))) if ambient is not None else tuple(used)
        missing = set(used) - set(amb)
        if missing:
            raise MalformedInput(f"generators use variables outside the ambient ring: {sorted(map(str, missing))}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "ambient", amb)

    def __len__(self) -> int:
        return len(self.generators)

    def is_zero(self) -> bool:
        return not self.generators


@dataclass
class GroebnerBasis:
    elements: List[Polynomial]
    order: TermOrder
    reduced: bool = False
    stats: Dict[str, int] = field(default_factory=dict, compare=False)

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


# ---------------------------------------------------------------------------
# dense integer kernel


class _Ring:
    def __init__(self, variables: Sequence[Var], order: TermOrder):
        self.vars = tuple(variables)
        self.index = {v: p for p, v in enumerate(self.vars)}
        missing = set(self.vars) - set(order.variables)
        if missing:
            raise MalformedInput(f"order does not cover variables {sorted(map(str, missing))}")
        self.key = order.dense_key(self.index)

    def to_dense(self, f: Polynomial) -> Tuple[IPoly, int]:
        """Integer polynomial ``D*f`` and its multiplier ``D``."""
        d = common_denominator([f])
        n = len(self.vars)
        out: IPoly = {}
        for m, c in f.terms():
            vec = [0] * n
            for v, e in m.exponents:
                p = self.index.get(v)
                if p is None:
                    raise MalformedInput(f"variable {v} not in the ring")
                vec[p] = e
            out[tuple(vec)] = int(c * d)
        return out, d

    def to_poly(self, f: IPoly, scale: Fraction = Fraction(1)) -> Polynomial:
        vs = self.vars
        terms = {}
        for ev, c in f.items():
            m = Monomial._raw(tuple((vs[p], e) for p, e in enumerate(ev) if e))
            terms[m] = Fraction(c) * scale
        return Polynomial._raw(terms)

    def lead(self, f: IPoly) -> Exp:
        return max(f, key=self.key)


def _divides(a: Exp, b: Exp) -> bool:
    for i, j in zip(a, b):
        if i > j:
            return False
    return True


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(i if i > j else j for i, j in zip(a, b))


def _coprime(a: Exp, b: Exp) -> bool:
    for i, j in zip(a, b):
        if i and j:
            return False
    return True


def _sub(a: Exp, b: Exp) -> Exp:
    return tuple(i - j for i, j in zip(a, b))


def _content(f: IPoly) -> int:
    g = 0
    for c in f.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def _primitive(f: IPoly, lead_coeff_sign: int = 1) -> Tuple[IPoly, int]:
    g = _content(f) * lead_coeff_sign
    if g == 1:
        return f, 1
    return {m: c // g for m, c in f.items()}, g


class _Basis:
    """Reducer set: leading exponent, leading coefficient and polynomial."""

    def __init__(self, ring: _Ring):
        self.ring = ring
        self.polys: List[IPoly] = []
        self.leads: List[Exp] = []
        self.lcs: List[int] = []
        self.degs: List[int] = []
        self.active: List[bool] = []

    def add(self, f: IPoly) -> int:
        lm = self.ring.lead(f)
        if f[lm] < 0:
            f = {m: -c for m, c in f.items()}
        self.polys.append(f)
        self.leads.append(lm)
        self.lcs.append(f[lm])
        self.degs.append(sum(lm))
        self.active.append(True)
        return len(self.polys) - 1

    def find_reducer(self, m: Exp, dm: int) -> int:
        leads, degs, act = self.leads, self.degs, self.active
        for i in range(len(leads)):
            if act[i] and degs[i] <= dm and _divides(leads[i], m):
                return i
        return -1


def _reduce_int(f: IPoly, basis: _Basis, full: bool = True) -> Tuple[IPoly, Fraction]:
    """Fraction-free normal form.  Returns ``(r, s)`` with ``r = s * NF(f)``
    where NF is the rational normal form along the same reduction path."""
    key = basis.ring.key
    p = dict(f)
    r: IPoly = {}
    scale = Fraction(1)
    steps = 0
    while p:
        lm = max(p, key=key)
        i = basis.find_reducer(lm, sum(lm))
        if i < 0:
            if not full:
                r.update(p)
                break
            r[lm] = p.pop(lm)
            continue
        a = p[lm]
        g = basis.polys[i]
        b = basis.lcs[i]
        q = _sub(lm, basis.leads[i])
        h = gcd(a, b)
        mb, ma = b // h, a // h
        if mb != 1:
            for m in p:
                p[m] *= mb
            for m in r:
                r[m] *= mb
            scale *= mb
        for gm, gc in g.items():
            m = tuple(i_ + j_ for i_, j_ in zip(gm, q))
            c = p.get(m, 0) - ma * gc
            if c:
                p[m] = c
            else:
                p.pop(m, None)
        steps += 1
        if mb != 1 and steps % 8 == 0:
            g2 = gcd(_content(p) if p else 0, _content(r) if r else 0)
            if g2 > 1:
                p = {m: c // g2 for m, c in p.items()}
                r = {m: c // g2 for m, c in r.items()}
                scale /= g2
    return r, scale


def _spoly(f: IPoly, lf: Exp, cf: int, g: IPoly, lg: Exp, cg: int) -> IPoly:
    L = _lcm(lf, lg)
    qf, qg = _sub(L, lf), _sub(L, lg)
    h = gcd(cf, cg)
    af, ag = cg // h, cf // h
    out: IPoly = {}
    for m, c in f.items():
        mm = tuple(i + j for i, j in zip(m, qf))
        out[mm] = c * af
    for m, c in g.items():
        mm = tuple(i + j for i, j in zip(m, qg))
        v = out.get(mm, 0) - c * ag
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


# ---------------------------------------------------------------------------
# Buchberger with Gebauer-Moeller pair management


class _Pairs:
    def __init__(self, basis: _Basis):
        self.basis = basis
        self.pairs: Dict[Tuple[int, int], Exp] = {}

    def update(self, h: int) -> None:
        b = self.basis
        lh = b.leads[h]
        active = [g for g in range(len(b.polys)) if b.active[g] and g != h]
        cand = [(g, _lcm(lh, b.leads[g])) for g in active]
        # chain criterion among the new pairs; coprime pairs kept until the end
        kept: List[Tuple[int, Exp]] = []
        for idx, (g1, l1) in enumerate(cand):
            if _coprime(lh, b.leads[g1]):
                kept.append((g1, l1))
                continue
            dominated = False
            for g2, l2 in cand[idx + 1:]:
                if _divides(l2, l1):
                    dominated = True
                    break
            if not dominated:
                for g2, l2 in kept:
                    if _divides(l2, l1):
                        dominated = True
                        break
            if not dominated:
                kept.append((g1, l1))
        new = [(g, l) for g, l in kept if not _coprime(lh, b.leads[g])]
        # prune old pairs
        drop = []
        for (g1, g2), l12 in self.pairs.items():
            if _divides(lh, l12):
                if _lcm(b.leads[g1], lh) != l12 and _lcm(lh, b.leads[g2]) != l12:
                    drop.append((g1, g2))
        for p in drop:
            del self.pairs[p]
        for g, l in new:
            self.pairs[(g, h)] = l
        # leading term of h makes these redundant as reducers
        for g in active:
            if _divides(lh, b.leads[g]):
                b.active[g] = False

    def pop_min(self, key) -> Tuple[Tuple[int, int], Exp]:
        best = min(self.pairs.items(), key=lambda kv: (sum(kv[1]), key(kv[1]), kv[0]))
        del self.pairs[best[0]]
        return best

    def __len__(self) -> int:
        return len(self.pairs)


def _input_basis(ring: _Ring, gens: Iterable[Polynomial]) -> List[IPoly]:
    out = []
    for g in gens:
        f, _ = ring.to_dense(g)
        if f:
            out.append(_primitive(f)[0])
    return out


def _interreduce(ring: _Ring, polys: List[IPoly]) -> List[IPoly]:
    """Minimalize then fully reduce each element by the others."""
    key = ring.key
    items = sorted(((ring.lead(f), f) for f in polys), key=lambda t: key(t[0]))
    minimal: List[Tuple[Exp, IPoly]] = []
    for lm, f in items:
        if not any(_divides(l2, lm) for l2, _ in minimal):
            minimal = [(l2, g) for l2, g in minimal if not _divides(lm, l2)]
            minimal.append((lm, f))
    out = []
    for i, (lm, f) in enumerate(minimal):
        others = _Basis(ring)
        for j, (_, g) in enumerate(minimal):
            if j != i:
                others.add(g)
        r, _ = _reduce_int(f, others)
        out.append(r)
    return out


def _buchberger_int(ring: _Ring, gens: List[IPoly], stats: Dict[str, int]) -> List[IPoly]:
    basis = _Basis(ring)
    pairs = _Pairs(basis)
    key = ring.key
    for f in sorted(gens, key=lambda f: key(ring.lead(f))):
        r, _ = _reduce_int(f, basis)
        if r:
            h = basis.add(_primitive(r)[0])
            pairs.update(h)
    reductions = zero = 0
    while len(pairs):
        (i, j), _ = pairs.pop_min(key)
        b = basis
        s = _spoly(b.polys[i], b.leads[i], b.lcs[i], b.polys[j], b.leads[j], b.lcs[j])
        reductions += 1
        r, _ = _reduce_int(s, basis)
        if not r:
            zero += 1
            continue
        h = basis.add(_primitive(r)[0])
        pairs.update(h)
    stats["reductions"] = reductions
    stats["zero_reductions"] = zero
    return [f for f, a in zip(basis.polys, basis.active) if a]


def _monic(ring: _Ring, f: IPoly) -> Polynomial:
    lm = ring.lead(f)
    return ring.to_poly(f, Fraction(1, f[lm]))


def _ring_for(ideal: Ideal, order: TermOrder) -> _Ring:
    variables = ideal.ambient if ideal.ambient else order.variables
    return _Ring(variables, order)


def buchberger(gens: Ideal, order: TermOrder, reduce: bool = True) -> GroebnerBasis:
    """Groebner basis of ``gens`` under ``order``.

    Normal selection strategy (smallest lcm degree first) with
    Gebauer-Moeller pair elimination.  With ``reduce`` the unique reduced
    monic basis is returned.
    """
    ring = _ring_for(gens, order)
    stats: Dict[str, int] = {}
    polys = _buchberger_int(ring, _input_basis(ring, gens.generators), stats)
    if reduce:
        polys = _interreduce(ring, polys)
    else:
        # still drop elements whose leading term is not minimal
        key = ring.key
        polys.sort(key=lambda f: key(ring.lead(f)))
        kept: List[IPoly] = []
        for f in polys:
            lf = ring.lead(f)
            if not any(_divides(ring.lead(g), lf) for g in kept):
                kept.append(f)
        polys = kept
    elems = [_monic(ring, f) for f in polys]
    elems.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return GroebnerBasis(elems, order, reduced=reduce, stats=stats)


def reduce(f: Polynomial, G: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Normal form of ``f`` by multivariate division against ``G``."""
    if not G:
        raise ValueError("empty reducer set")
    variables = sorted(set(order.variables) | {v for g in G for v in g.variables()} | set(f.variables()))
    ring = _Ring(variables, order)
    basis = _Basis(ring)
    for g in G:
        if g.is_zero():
            raise ValueError("zero polynomial in reducer set")
        basis.add(_primitive(ring.to_dense(g)[0])[0])
    fd, d = ring.to_dense(f)
    if not fd:
        return Polynomial()
    r, scale = _reduce_int(fd, basis)
    return ring.to_poly(r, 1 / (scale * d))


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return reduce(f, gb.elements, gb.order)


def _check_pairs(ring: _Ring, polys: List[IPoly], criteria: bool) -> Tuple[bool, Optional[Tuple[int, int]], Optional[IPoly], int]:
    basis = _Basis(ring)
    for f in polys:
        basis.add(f)
    n = len(polys)
    if criteria:
        # run the Gebauer-Moeller update as if inserting the elements one by
        # one, but keep every element active for reduction
        shadow = _Basis(ring)
        pairs = _Pairs(shadow)
        order_idx = sorted(range(n), key=lambda i: ring.key(basis.leads[i]))
        remap = {}
        for i in order_idx:
            h = shadow.add(polys[i])
            remap[h] = i
            pairs.update(h)
        todo = sorted(tuple(sorted((remap[a], remap[b]))) for a, b in pairs.pairs)
    else:
        todo = [(i, j) for i in range(n) for j in range(i + 1, n)]
    checked = 0
    for i, j in todo:
        b = basis
        s = _spoly(b.polys[i], b.leads[i], b.lcs[i], b.polys[j], b.leads[j], b.lcs[j])
        checked += 1
        r, _ = _reduce_int(s, basis)
        if r:
            return False, (i, j), r, checked
    return True, None, None, checked


def is_groebner(gens: Ideal, order: TermOrder, criteria: bool = True) -> CheckReport:
    """Pass iff every S-pair of the generators reduces to 0.

    With ``criteria`` the Buchberger product and chain criteria skip pairs
    that are known to reduce to 0; without it every pair is reduced.
    """
    t0 = time.perf_counter()
    ring = _ring_for(gens, order)
    polys = _input_basis(ring, gens.generators)
    ok, pair, rem, checked = _check_pairs(ring, polys, criteria)
    witnesses = []
    if not ok:
        i, j = pair
        witnesses = [
            f"S-pair of generators {i} and {j}",
            str(ring.to_poly(polys[i])),
            str(ring.to_poly(polys[j])),
            f"remainder: {_monic(ring, rem)}",
        ]
    return CheckReport(
        name="is-groebner",
        status="pass" if ok else "fail",
        witnesses=witnesses,
        params={"generators": len(polys), "pairs_reduced": checked, "criteria": criteria},
        millis=(time.perf_counter() - t0) * 1000,
    )


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    return MonomialIdeal(gb.leading_monomials(), gb.order.variables)


def leading_ideal(polys: Iterable[Polynomial], order: TermOrder, ambient: Optional[Iterable[Var]] = None) -> MonomialIdeal:
    """Monomial ideal generated by leading monomials (no Groebner check)."""
    return MonomialIdeal([f.leading_monomial(order) for f in polys if not f.is_zero()],
                         ambient if ambient is not None else order.variables)


def ideal_power(gens: Ideal, k: int) -> Ideal:
    """All k-fold products of the generators, deduplicated; k = 0 gives (1)."""
    if k < 0:
        raise ValueError("negative power")
    if k == 0:
        return Ideal([Polynomial.constant(1)], gens.ambient)
    seen = set()
    out = []
    for combo in combinations_with_replacement(range(len(gens.generators)), k):
        p = Polynomial.constant(1)
        for i in combo:
            p = p * gens.generators[i]
        if p.is_zero():
            continue
        if p not in seen and -p not in seen:
            seen.add(p)
            out.append(p)
    return Ideal(out, gens.ambient)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    return Ideal([f * g for f in a.generators for g in b.generators], sorted(set(a.ambient) | set(b.ambient)))


def ideal_equal(A: Ideal, B: Ideal, order: TermOrder) -> CheckReport:
    """Pass iff the reduced Groebner bases coincide; the witness is the
    first generator of one side that is not a member of the other."""
    t0 = time.perf_counter()
    amb = sorted(set(A.ambient) | set(B.ambient))
    A2, B2 = Ideal(A.generators, amb), Ideal(B.generators, amb)
    ga, gb = buchberger(A2, order), buchberger(B2, order)
    ok = ga.elements == gb.elements
    witnesses = []
    if not ok:
        for name, src, other in (("first", A2, gb), ("second", B2, ga)):
            for g in src.generators:
                if not normal_form(g, other).is_zero():
                    witnesses.append(f"generator of the {name} ideal not in the other: {g}")
                    break
        if not witnesses:
            witnesses.append("reduced bases differ")
    return CheckReport(
        name="ideal-equal",
        status="pass" if ok else "fail",
        witnesses=witnesses,
        params={"basis_sizes": [len(ga), len(gb)]},
        millis=(time.perf_counter() - t0) * 1000,
    )


def elimination_order(drop: Sequence[Var], keep: Sequence[Var], keep_order: Optional[TermOrder] = None) -> Block:
    """Two-block order, dropped block (lex) greater than the kept block
    (deglex unless ``keep_order`` is given)."""
    return Block([Lex(sorted(drop)), keep_order if keep_order is not None else DegThen(Lex(sorted(keep)))])


def elimination_basis(gens: Ideal, drop: Iterable[Var], keep_order: Optional[TermOrder] = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``gens`` intersected with the subring
    without ``drop``, with respect to the kept-block order."""
    drop_s = set(drop)
    bad = drop_s - set(gens.ambient)
    if bad:
        raise MalformedInput(f"cannot drop variables outside the ambient ring: {sorted(map(str, bad))}")
    keep = [v for v in gens.ambient if v not in drop_s]
    if keep_order is not None:
        extra = set(keep_order.variables) - set(keep)
        if extra & drop_s or not set(keep) <= set(keep_order.variables):
            raise MalformedInput("keep_order must cover the kept variables and none of the dropped ones")
        if extra:
            gens = Ideal(gens.generators, set(gens.ambient) | extra)
            keep = [v for v in gens.ambient if v not in drop_s]
    kept_order = keep_order if keep_order is not None else DegThen(Lex(keep))
    if not drop_s:
        return buchberger(gens, kept_order)
    order = elimination_order(sorted(drop_s), keep, kept_order)
    gb = buchberger(gens, order)
    elems = [g for g in gb.elements if not (set(g.variables()) & drop_s)]
    elems.sort(key=lambda g: kept_order.key(g.leading_monomial(kept_order)))
    return GroebnerBasis(elems, kept_order, reduced=True, stats=gb.stats)


def eliminate(gens: Ideal, drop: Iterable[Var]) -> Ideal:
    drop = set(drop)
    gb = elimination_basis(gens, drop)
    return Ideal(gb.elements, [v for v in gens.ambient if v not in drop])


def kernel_basis(images: Mapping[Var, Polynomial], identity: Optional[Iterable[Var]] = None,
                 keep_order: Optional[TermOrder] = None) -> GroebnerBasis:
    """Groebner basis of the kernel of ``v -> images[v]``.

    ``identity`` lists domain variables mapped to themselves.  By default,
    if some image involves ``t`` every other image variable is kept
    (Rees-type map); otherwise all image variables are eliminated
    (fiber-type map).
    """
    from .poly import T_VAR

    if any(f.is_zero() for f in images.values()):
        raise ValueError("images must be nonzero")
    image_vars = {v for f in images.values() for v in f.variables()}
    clash = image_vars & set(images)
    if clash:
        raise MalformedInput(f"domain variables reused in images: {sorted(map(str, clash))}")
    if identity is None:
        identity = image_vars - {T_VAR} if T_VAR in image_vars else set()
    identity = set(identity)
    drop = image_vars - identity
    gens = [Polynomial.var(v) - f for v, f in images.items()]
    ambient = sorted(set(images) | image_vars | identity)
    return elimination_basis(Ideal(gens, ambient), drop, keep_order)


def kernel_of_algebra_map(images: Mapping[Var, Polynomial], identity: Optional[Iterable[Var]] = None,
                          keep_order: Optional[TermOrder] = None) -> Ideal:
    gb = kernel_basis(images, identity, keep_order)
    return Ideal(gb.elements, gb.order.variables)


def contains(gb: GroebnerBasis, f: Polynomial) -> bool:
    return f.is_zero() or normal_form(f, gb).is_zero()


def linear_span_basis(polys: Iterable[Polynomial], order: TermOrder) -> Dict[Monomial, Polynomial]:
    """Echelon basis of the K-linear span: leading monomial -> element.

    Plain Gaussian elimination on coefficient vectors (linear algebra, not
    ideal reduction).
    """
    ring = _Ring(order.variables, order)
    key = ring.key
    rows: Dict[Exp, IPoly] = {}
    for f in polys:
        p, _ = ring.to_dense(f)
        while p:
            lm = max(p, key=key)
            row = rows.get(lm)
            if row is None:
                rows[lm] = _primitive(p)[0]
                break
            a, b = p[lm], row[lm]
            h = gcd(a, b)
            mb, ma = b // h, a // h
            newp: IPoly = {}
            for m, c in p.items():
                newp[m] = c * mb
            for m, c in row.items():
                v = newp.get(m, 0) - ma * c
                if v:
                    newp[m] = v
                else:
                    newp.pop(m, None)
            p = _primitive(newp)[0] if newp else newp
    return {ring.to_poly({lm: 1}).monomials()[0]: _monic(ring, f) for lm, f in rows.items()}
