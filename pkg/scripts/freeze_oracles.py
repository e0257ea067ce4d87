"""Compute reference values with sympy and brute-force enumeration, and
freeze them to tests/data/oracles.json.

Nothing here uses the package's own algebra: matrices, minors, ladders and
relations are rebuilt from the index rules, Groebner bases come from
sympy, and Hilbert functions come from counting standard monomials.

    python3 scripts/freeze_oracles.py
"""

from __future__ import annotations

import json
import time
from itertools import combinations, combinations_with_replacement
from pathlib import Path

import sympy as sp

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "oracles.json"


def xs(n, r, s):
    row1 = {i: sp.Symbol(f"x1_{i}") for i in range(1, r + s + 1)}
    row2 = {j: sp.Symbol(f"x2_{j}") for j in range(r + 1, n + 1)}
    return row1, row2


def minor_polys(n, r, s):
    row1, row2 = xs(n, r, s)
    out = {}
    for i, j in combinations(range(1, n + 1), 2):
        f = sp.expand(row1.get(i, 0) * row2.get(j, 0) - row1.get(j, 0) * row2.get(i, 0))
        if f != 0:
            out[(i, j)] = f
    return out


def ysym(i, j):
    return sp.Symbol(f"y{i}_{j}")


def ladder_cells(n, r, s, extended):
    """Reading order of the (extended) ladder, top row first."""
    cols = list(range(n, r, -1))
    cells = []
    if extended:
        cells += [sp.Symbol(f"x2_{j}") for j in cols]
    for i in range(1, r + s + 1):
        if extended:
            cells.append(sp.Symbol(f"x1_{i}"))
        cells += [ysym(i, j) for j in cols if j > max(r, i)]
    return cells


def ladder_minor_polys(n, r, s, extended):
    grid = {}
    cols = (["x"] if extended else []) + list(range(n, r, -1))
    rows = ([0] if extended else []) + list(range(1, r + s + 1))
    for a in rows:
        for c in cols:
            if c == "x":
                if a >= 1:
                    grid[(a, c)] = sp.Symbol(f"x1_{a}")
            elif a == 0:
                grid[(a, c)] = sp.Symbol(f"x2_{c}")
            elif c > max(r, a):
                grid[(a, c)] = ysym(a, c)
    out = []
    for a, b in combinations(rows, 2):
        for p, q in combinations(cols, 2):
            keys = [(a, p), (a, q), (b, p), (b, q)]
            if all(k in grid for k in keys):
                out.append(grid[(a, p)] * grid[(b, q)] - grid[(a, q)] * grid[(b, p)])
    return out


def leading_exponents(polys, gens, order="lex"):
    out = []
    for f in polys:
        P = sp.Poly(f, *gens)
        out.append(P.monoms(order=order)[0])
    return out


def count_standard(leads, nvars, d):
    """Degree-d monomials in nvars variables divisible by no lead."""
    count = 0
    for combo in combinations_with_replacement(range(nvars), d):
        vec = [0] * nvars
        for v in combo:
            vec[v] += 1
        if not any(all(a <= b for a, b in zip(m, vec)) for m in leads):
            count += 1
    return count


def h_from_hf(hf, max_dim):
    """Smallest c with ``(1 - z)^c * sum hf_d z^d`` vanishing in the top
    half of the computed range; returns (h, c)."""
    D = len(hf) - 1
    for c in range(max_dim + 1):
        coeffs = [sum((-1) ** i * sp.binomial(c, i) * hf[d - i] for i in range(0, min(c, d) + 1)) for d in range(D + 1)]
        coeffs = [int(v) for v in coeffs]
        if all(v == 0 for v in coeffs[D // 2 + 1:]):
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            return coeffs, c
    raise RuntimeError("degree range too small to read off the h-vector")


def invariants(h, dim):
    reg = len(h) - 1
    return {"h": h, "dim": dim, "e": sum(h), "reg": reg, "a": reg - dim}


def ladder_hf(n, r, s, extended, D):
    cells = ladder_cells(n, r, s, extended)
    G = sp.groebner(ladder_minor_polys(n, r, s, extended), *cells, order="lex")
    leads = leading_exponents(G.exprs, cells)
    return [count_standard(leads, len(cells), d) for d in range(D + 1)], len(cells)


def fiber_invariants(n, r, s, D):
    hf, nv = ladder_hf(n, r, s, False, D)
    h, dim = h_from_hf(hf, nv)
    return invariants(h, dim)


def rees_invariants(n, r, s, D):
    hf, nv = ladder_hf(n, r, s, True, D)
    h, dim = h_from_hf(hf, nv)
    return invariants(h, dim)


def rees_kernel(n, r, s):
    """HF of S/J and the count of y-only generators, from a sympy elimination
    followed by a grevlex basis."""
    f = minor_polys(n, r, s)
    t = sp.Symbol("t")
    row1, row2 = xs(n, r, s)
    x_all = list(row1.values()) + list(row2.values())
    ys = [ysym(i, j) for (i, j) in f]
    gens = [ysym(i, j) - fij * t for (i, j), fij in f.items()]
    G = sp.groebner(gens, t, *ys, *x_all, order="lex")
    elim = [g for g in G.exprs if t not in g.free_symbols]
    Gk = sp.groebner(elim, *ys, *x_all, order="grevlex")
    leads = leading_exponents(Gk.exprs, ys + x_all, order="grevlex")
    nv = len(ys) + len(x_all)
    hf = [count_standard(leads, nv, d) for d in range(7)]
    y_only = [g for g in Gk.exprs if not (g.free_symbols & set(x_all))]
    return {"hf_upto_6": hf, "y_only_generators": len(y_only), "variables": nv}


def fiber_kernel(n, r, s, use_initial):
    f = minor_polys(n, r, s)
    row1, row2 = xs(n, r, s)
    x_all = list(row1.values()) + list(row2.values())
    ys = [ysym(i, j) for (i, j) in f]
    if use_initial:
        f = {k: sp.Poly(v, *x_all).terms(order="lex")[0] for k, v in f.items()}
        f = {k: sp.Mul(c, *[xv ** e for xv, e in zip(x_all, m)]) for k, (m, c) in f.items()}
    gens = [ysym(i, j) - fij for (i, j), fij in f.items()]
    G = sp.groebner(gens, *x_all, *ys, order="lex")
    K = [g for g in G.exprs if not (g.free_symbols & set(x_all))]
    return {"kernel_generators": len(K), "kernel": sorted(str(sp.expand(g)) for g in K)}


def relation_count(n, r, s):
    """Distinct nonzero linear and Pluecker relations, up to sign."""
    row1, row2 = xs(n, r, s)
    f = minor_polys(n, r, s)

    def y(i, j):
        if i == j:
            return 0
        if i > j:
            return -y(j, i)
        return ysym(i, j) if (i, j) in f else 0

    def uniq(polys):
        seen = set()
        for g in polys:
            g = sp.expand(g)
            if g != 0 and -g not in seen:
                seen.add(g)
        return len(seen)

    xv = {1: row1, 2: row2}
    lin = [xv[u].get(i, 0) * y(j, k) - xv[u].get(j, 0) * y(i, k) + xv[u].get(k, 0) * y(i, j)
           for u in (1, 2) for i, j, k in combinations(range(1, n + 1), 3)]
    plu = [y(i, j) * y(k, l) - y(i, k) * y(j, l) + y(i, l) * y(j, k) for i, j, k, l in combinations(range(1, n + 1), 4)]
    return {"linear": uniq(lin), "plucker": uniq(plu)}


def sagbi_dims(n, r, s, D):
    """dim span of d-fold products of minors at degree 2d, by rank of the
    coefficient matrix over a prime field."""
    p = 2_147_483_647
    f = list(minor_polys(n, r, s).values())
    row1, row2 = xs(n, r, s)
    x_all = list(row1.values()) + list(row2.values())
    out = []
    for d in range(1, D + 1):
        rows = []
        for combo in combinations_with_replacement(range(len(f)), d):
            P = sp.Poly(sp.Mul(*[f[i] for i in combo]), *x_all)
            rows.append({m: int(c) % p for m, c in P.terms()})
        out.append(_rank_mod(rows, p))
    return out


def _rank_mod(rows, p):
    pivots = {}
    rank = 0
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            lead = max(row)
            if lead not in pivots:
                inv = pow(row[lead], p - 2, p)
                pivots[lead] = {k: v * inv % p for k, v in row.items()}
                rank += 1
                break
            piv = pivots[lead]
            c = row[lead]
            for k, v in piv.items():
                nv = (row.get(k, 0) - c * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def main():
    t0 = time.time()
    data = {
        "fiber_invariants": {},
        "rees_invariants": {},
        "rees_kernel": {},
        "fiber_kernel": {},
        "fiber_kernel_initial": {},
        "sagbi_dims": {},
        "relation_counts": {},
    }
    for shape in [(3, 1, 1), (4, 1, 2), (5, 2, 2), (5, 3, 1), (6, 2, 2), (7, 3, 2), (4, 1, 3), (4, 3, 1)]:
        data["fiber_invariants"][str(shape)] = fiber_invariants(*shape, D=7)
    for shape in [(3, 1, 1), (4, 1, 2), (4, 2, 1), (5, 2, 2)]:
        data["rees_invariants"][str(shape)] = rees_invariants(*shape, D=7)
    for shape in [(3, 1, 1), (4, 1, 2), (4, 2, 1)]:
        data["rees_kernel"][str(shape)] = rees_kernel(*shape)
    for shape in [(3, 1, 1), (4, 1, 2), (5, 2, 1)]:
        data["fiber_kernel"][str(shape)] = fiber_kernel(*shape, use_initial=False)
        data["fiber_kernel_initial"][str(shape)] = fiber_kernel(*shape, use_initial=True)
    for shape in [(3, 1, 1), (4, 1, 2), (5, 2, 1), (4, 2, 2)]:
        data["relation_counts"][str(shape)] = relation_count(*shape)
    for shape in [(3, 1, 1), (4, 1, 2), (5, 2, 1)]:
        data["sagbi_dims"][str(shape)] = sagbi_dims(*shape, D=3)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT} in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
