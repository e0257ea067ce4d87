"""Monomial ideals with minimal generating sets."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable, Optional, Tuple

from .poly import Monomial, Var


def minimalize(gens: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    """Drop generators divisible by another; deterministic order."""
    uniq = sorted(set(gens), key=Monomial.display_key)
    out = []
    for m in uniq:  # increasing degree, so a divisor is seen first
        if not any(g.divides(m) for g in out):
            out.append(m)
    return tuple(out)


class MonomialIdeal:
    """Ideal generated by monomials in a fixed ambient polynomial ring."""

    __slots__ = ("gens", "ambient")

    def __init__(self, gens: Iterable[Monomial], ambient: Optional[Iterable[Var]] = None):
        self.gens = minimalize(gens)
        used = {v for m in self.gens for v in m.variables()}
        self.ambient = tuple(sorted(set(ambient) | used)) if ambient is not None else tuple(sorted(used))

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(m.is_one() for m in self.gens)

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def __contains__(self, m: Monomial) -> bool:
        return self.contains(m)

    def _amb(self, other: "MonomialIdeal") -> Tuple[Var, ...]:
        return tuple(sorted(set(self.ambient) | set(other.ambient)))

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.gens + other.gens, self._amb(other))

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal([a * b for a in self.gens for b in other.gens], self._amb(other))

    def power(self, k: int) -> "MonomialIdeal":
        if k < 0:
            raise ValueError("negative power")
        if k == 0:
            return MonomialIdeal([Monomial()], self.ambient)
        prods = []
        for combo in combinations_with_replacement(self.gens, k):
            p = Monomial()
            for m in combo:
                p = p * m
            prods.append(p)
        return MonomialIdeal(prods, self.ambient)

    def colon(self, m: Monomial) -> "MonomialIdeal":
        """``(J : m)``, generated by ``g / gcd(g, m)``."""
        return MonomialIdeal([g // g.gcd(m) for g in self.gens], self.ambient)

    def add_monomial(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(self.gens + (m,), self.ambient)

    def degree_counts(self) -> dict:
        out: dict = {}
        for m in self.gens:
            out[m.degree] = out.get(m.degree, 0) + 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialIdeal) and set(self.gens) == set(other.gens)

    def equals(self, other: "MonomialIdeal") -> bool:
        return self == other

    def __hash__(self) -> int:
        return hash(frozenset(self.gens))

    def __repr__(self) -> str:
        return "MonomialIdeal(" + ", ".join(map(str, self.gens)) + ")"
