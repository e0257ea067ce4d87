"""Linear-algebra oracles shared by the engine tests and the acceptance suite."""

from fractions import Fraction
from itertools import combinations_with_replacement

from sparserees.poly import Monomial, Polynomial


def rank(rows):
    rows = [dict(r) for r in rows if r]
    pivots = {}
    for r in rows:
        r = {k: Fraction(v) for k, v in r.items() if v}
        while r:
            lead = max(r)
            if lead not in pivots:
                pivots[lead] = r
                break
            p = pivots[lead]
            c = r[lead] / p[lead]
            for k, v in p.items():
                nv = r.get(k, 0) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


def vec(f, vs):
    return {tuple(m.exponent(v) for v in vs): c for m, c in f.terms()}


def in_span_oracle(f, gens, vs):
    """Homogeneous membership at degree deg f by linear algebra."""
    d = f.degree()
    rows = []
    for g in gens:
        k = d - g.degree()
        if k < 0:
            continue
        for combo in combinations_with_replacement(vs, k):
            m = Monomial()
            for v in combo:
                m = m * Monomial.var(v)
            rows.append(vec(g * Polynomial.monomial(m), vs))
    return rank(rows + [vec(f, vs)]) == rank(rows)


def homog(vs, deg, coeffs):
    mons = list(combinations_with_replacement(vs, deg))
    out = Polynomial()
    for combo, c in zip(mons, coeffs):
        m = Monomial()
        for v in combo:
            m = m * Monomial.var(v)
        out = out + Polynomial.monomial(m, c)
    return out
