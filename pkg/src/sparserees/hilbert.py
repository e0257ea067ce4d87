"""Hilbert series of quotients by monomial ideals.

``HS(R/J) = num(z) / (1 - z)^nvars`` with ``num`` computed by the pivot
recursion ``num(J) = num(J + (x)) + z * num(J : x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .monomial_ideal import MonomialIdeal

SparseMon = Tuple[Tuple[int, int], ...]

# enumeration oracle refuses more monomials than this
ENUMERATION_BUDGET = 3_000_000


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured resource budget."""


@dataclass(frozen=True)
class HilbertRecord:
    """Invariants read off a normalized Hilbert series.  ``reg`` and
    ``a_inv`` use the Cohen-Macaulay reading ``reg = deg h``."""

    h: Tuple[int, ...]
    dim: int
    e: int
    reg: int
    a_inv: int
    cm_convention: bool = True

    def as_dict(self) -> Dict[str, object]:
        return {"h": list(self.h), "dim": self.dim, "e": self.e, "reg": self.reg, "a": self.a_inv}


# -- polynomial helpers on coefficient lists (constant term first) -----------


def _trim(p: List[int]) -> List[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim(out)


def poly_add(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def one_minus_z_pow(d: int) -> List[int]:
    out = [0] * (d + 1)
    out[0] = 1
    out[d] -= 1
    return _trim(out)


def _shift(p: Sequence[int]) -> List[int]:
    return [0] + list(p)


# -- pivot recursion ---------------------------------------------------------


def _divides(a: SparseMon, b: SparseMon) -> bool:
    bd = dict(b)
    return all(bd.get(v, 0) >= e for v, e in a)


def _minimal(gens: Iterable[SparseMon]) -> Tuple[SparseMon, ...]:
    uniq = sorted(set(gens), key=lambda m: (sum(e for _, e in m), m))
    out: List[SparseMon] = []
    for m in uniq:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return tuple(out)


def _components(gens: Tuple[SparseMon, ...]) -> List[Tuple[SparseMon, ...]]:
    parent: Dict[int, int] = {}

    def find(a: int) -> int:
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for m in gens:
        vs = [v for v, _ in m]
        for v in vs[1:]:
            ra, rb = find(vs[0]), find(v)
            if ra != rb:
                parent[ra] = rb
        find(vs[0])
    groups: Dict[int, List[SparseMon]] = {}
    for m in gens:
        groups.setdefault(find(m[0][0]), []).append(m)
    return [tuple(g) for g in groups.values()]


class _Numerator:
    def __init__(self):
        self.memo: Dict[FrozenSet[SparseMon], List[int]] = {}
        self.calls = 0

    def __call__(self, gens: Tuple[SparseMon, ...]) -> List[int]:
        if not gens:
            return [1]
        if any(not m for m in gens):
            return [0]
        key = frozenset(gens)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.calls += 1
        comps = _components(gens)
        if len(comps) > 1:
            out = [1]
            for c in comps:
                out = poly_mul(out, self(c))
        elif len(gens) == 1:
            out = one_minus_z_pow(sum(e for _, e in gens[0]))
        else:
            out = self._pivot(gens)
        self.memo[key] = out
        return out

    def _pivot(self, gens: Tuple[SparseMon, ...]) -> List[int]:
        counts: Dict[int, int] = {}
        for m in gens:
            if len(m) > 1:
                for v, _ in m:
                    counts[v] = counts.get(v, 0) + 1
        x = max(sorted(counts), key=lambda v: counts[v])
        rest = _minimal(m for m in gens if all(v != x for v, _ in m))
        quot = []
        for m in gens:
            quot.append(tuple((v, e - 1) if v == x else (v, e) for v, e in m if not (v == x and e == 1)))
        left = poly_mul(one_minus_z_pow(1), self(rest))
        right = _shift(self(_minimal(quot)))
        return poly_add(left, right)


def _to_sparse(J: MonomialIdeal) -> Tuple[Tuple[SparseMon, ...], int]:
    index = {v: p for p, v in enumerate(J.ambient)}
    gens = tuple(tuple(sorted((index[v], e) for v, e in m.exponents)) for m in J.gens)
    return _minimal(gens), len(J.ambient)


def hilbert_numerator(J: MonomialIdeal, nvars: Optional[int] = None) -> List[int]:
    """Numerator of ``HS(R/J)`` over ``(1 - z)^nvars``."""
    gens, n = _to_sparse(J)
    if nvars is not None and nvars < n:
        raise ValueError(f"ideal lives in {n} variables, more than nvars={nvars}")
    return _Numerator()(gens)


def normalize(num: Sequence[int], nvars: int) -> Tuple[Tuple[int, ...], int]:
    """Divide out the largest power ``(1 - z)^c`` dividing ``num``; return
    ``(h, nvars - c)``."""
    p = _trim(list(num))
    if p == [0]:
        raise ValueError("zero numerator: the ideal is the unit ideal")
    c = 0
    while c < nvars and sum(p) == 0:
        # synthetic division by (1 - z)
        q = []
        acc = 0
        for coef in p[:-1]:
            acc += coef
            q.append(acc)
        if acc + p[-1] != 0:
            raise ArithmeticError("inexact division by (1 - z)")
        p = _trim(q) if q else [0]
        c += 1
    return tuple(p), nvars - c


def invariants_from_h(h: Sequence[int], dim: int) -> HilbertRecord:
    hv = list(h)
    if not hv or hv[0] != 1:
        raise ValueError("h-vector must start with 1")
    reg = max(i for i, c in enumerate(hv) if c)
    return HilbertRecord(h=tuple(hv[: reg + 1]), dim=dim, e=sum(hv), reg=reg, a_inv=reg - dim)


def hilbert_record(J: MonomialIdeal, nvars: Optional[int] = None) -> HilbertRecord:
    n = len(J.ambient) if nvars is None else nvars
    h, dim = normalize(hilbert_numerator(J, n), n)
    return invariants_from_h(h, dim)


def series_coefficients(num: Sequence[int], nvars: int, upto: int) -> List[int]:
    """Coefficients of ``num / (1 - z)^nvars`` in degrees ``0..upto``."""
    out = []
    for d in range(upto + 1):
        if nvars == 0:
            out.append(num[d] if d < len(num) else 0)
            continue
        out.append(sum(c * comb(nvars - 1 + d - i, nvars - 1) for i, c in enumerate(num) if i <= d))
    return out


def hilbert_function(J: MonomialIdeal, upto: int, nvars: Optional[int] = None) -> List[int]:
    n = len(J.ambient) if nvars is None else nvars
    return series_coefficients(hilbert_numerator(J, n), n, upto)


def hilbert_function_oracle(J: MonomialIdeal, d: int, nvars: Optional[int] = None,
                            budget: int = ENUMERATION_BUDGET) -> int:
    """Count degree-``d`` standard monomials by brute-force enumeration."""
    n = len(J.ambient) if nvars is None else nvars
    total = comb(n + d - 1, d) if n else int(d == 0)
    if total > budget:
        raise BudgetExceeded(f"{total} monomials of degree {d} in {n} variables exceeds budget {budget}")
    gens, _ = _to_sparse(J)
    dense_gens = []
    for g in gens:
        vec = [0] * n
        for v, e in g:
            vec[v] = e
        dense_gens.append(vec)
    count = 0
    for combo in combinations_with_replacement(range(n), d):
        vec = [0] * n
        for v in combo:
            vec[v] += 1
        if not any(all(a <= b for a, b in zip(g, vec)) for g in dense_gens):
            count += 1
    return count
