"""The sparse 2 x n matrix determined by (n, r, s) and everything built on it.

Row 1 carries ``x[1,i]`` for ``i <= r+s``, row 2 carries ``x[2,j]`` for
``j >= r+1``; all other entries are structural zeros and never become
variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from importlib import resources
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

from .monomial_ideal import MonomialIdeal
from .poly import Lex, Monomial, Polynomial, T_VAR, TermOrder, Var, Weighting, x, y


class ShapeError(ValueError):
    """The triple violates the normal form of the sparse matrix."""


@dataclass(frozen=True, order=True)
class Shape:
    n: int
    r: int
    s: int

    def __post_init__(self):
        n, r, s = self.n, self.r, self.s
        if not all(isinstance(v, int) for v in (n, r, s)):
            raise ShapeError("n, r, s must be integers")
        if n < 3:
            raise ShapeError(f"n must be at least 3 (got n={n})")
        if r < 1:
            raise ShapeError(f"r must be at least 1 (got r={r}); r = 0 is the generic matrix")
        if s < 0:
            raise ShapeError(f"s must be nonnegative (got s={s})")
        if r >= n:
            raise ShapeError(f"r must be less than n (got r={r}, n={n})")
        if r + s > n:
            raise ShapeError(f"r+s exceeds n (r+s={r + s}, n={n})")
        if n - r - s > r:
            raise ShapeError(f"n-r-s exceeds r (n-r-s={n - r - s}, r={r})")

    def astuple(self) -> Tuple[int, int, int]:
        return (self.n, self.r, self.s)

    def __str__(self) -> str:
        return f"({self.n},{self.r},{self.s})"

    @property
    def trivial(self) -> bool:
        """No column carries two variables, so every minor is a monomial."""
        return self.s == 0

    # -- variables ---------------------------------------------------------
    def has_x(self, u: int, i: int) -> bool:
        if u == 1:
            return 1 <= i <= self.r + self.s
        return self.r + 1 <= i <= self.n

    def has_y(self, i: int, j: int) -> bool:
        """``y[i,j]`` survives the zero conventions iff ``f_ij`` is nonzero."""
        return 1 <= i < j <= self.n and i <= self.r + self.s and j > self.r

    def x_vars(self) -> Tuple[Var, ...]:
        row1 = [x(1, i) for i in range(1, self.r + self.s + 1)]
        row2 = [x(2, j) for j in range(self.r + 1, self.n + 1)]
        return tuple(row1 + row2)

    def y_vars(self) -> Tuple[Var, ...]:
        return tuple(y(i, j) for i, j in combinations(range(1, self.n + 1), 2) if self.has_y(i, j))

    def rees_vars(self) -> Tuple[Var, ...]:
        """Variables of ``S``: the matrix entries and the nonzero ``y``'s."""
        return self.x_vars() + self.y_vars()

    def xv(self, u: int, i: int) -> Polynomial:
        return Polynomial.var(x(u, i)) if self.has_x(u, i) else Polynomial()

    def yv(self, i: int, j: int) -> Polynomial:
        """``y[i,j]`` with the conventions ``y[j,i] = -y[i,j]`` and zeros."""
        if i == j:
            return Polynomial()
        if i > j:
            return -self.yv(j, i)
        return Polynomial.var(y(i, j)) if self.has_y(i, j) else Polynomial()


def shape_validate(n: int, r: int, s: int) -> Shape:
    return Shape(n, r, s)


def valid_shapes(nmax: int, nmin: int = 3, include_trivial: bool = False) -> List[Shape]:
    """All normalized triples with ``nmin <= n <= nmax``, in (n, r, s) order."""
    out = []
    for n in range(max(3, nmin), nmax + 1):
        for r in range(1, n):
            for s in range(0 if include_trivial else 1, n - r + 1):
                if 0 <= n - r - s <= r:
                    out.append(Shape(n, r, s))
    return out


def named_shapes() -> Dict[str, Shape]:
    """Fixture shapes shipped with the package (``name n r s`` per line)."""
    text = resources.files("sparserees").joinpath("data/shapes.txt").read_text()
    out = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, n, r, s = line.split()
        out[name] = Shape(int(n), int(r), int(s))
    return out


# ---------------------------------------------------------------------------
# matrix and minors


def entry(shape: Shape, u: int, i: int) -> Optional[Var]:
    return x(u, i) if shape.has_x(u, i) else None


class MinorClass(Enum):
    ZERO = "zero"
    MONOMIAL = "monomial"
    BINOMIAL = "binomial"


def minor_class(shape: Shape, i: int, j: int) -> MinorClass:
    r, s = shape.r, shape.s
    if j <= r or i > r + s:
        return MinorClass.ZERO
    if r + 1 <= i < j <= r + s:
        return MinorClass.BINOMIAL
    return MinorClass.MONOMIAL


def minor(shape: Shape, i: int, j: int) -> Tuple[MinorClass, Polynomial]:
    """``f_ij = x_{1i} x_{2j} - x_{1j} x_{2i}`` with zeros substituted."""
    if not 1 <= i < j <= shape.n:
        raise ValueError(f"minor indices out of range: ({i},{j}) for n={shape.n}")
    f = shape.xv(1, i) * shape.xv(2, j) - shape.xv(1, j) * shape.xv(2, i)
    return minor_class(shape, i, j), f


def minor_table(shape: Shape) -> Dict[Tuple[int, int], Tuple[MinorClass, Polynomial]]:
    return {(i, j): minor(shape, i, j) for i, j in combinations(range(1, shape.n + 1), 2)}


def minors(shape: Shape) -> Dict[Tuple[int, int], Polynomial]:
    """Nonzero minors keyed by column pair."""
    return {ij: f for ij, (_, f) in minor_table(shape).items() if not f.is_zero()}


def minor_counts(shape: Shape) -> Dict[MinorClass, int]:
    counts = {c: 0 for c in MinorClass}
    for cls, _ in minor_table(shape).values():
        counts[cls] += 1
    return counts


def diagonal_order(shape: Shape) -> TermOrder:
    """Lex with ``x11 > ... > x1,r+s > x2,r+1 > ... > x2n``."""
    return Lex(shape.x_vars())


def initial_ideal_gens(shape: Shape) -> MonomialIdeal:
    """Closed form ``(x_{1i} x_{2j} : i <= r+s, max(r, i) < j <= n)``."""
    gens = [
        Monomial({x(1, i): 1, x(2, j): 1})
        for i in range(1, shape.r + shape.s + 1)
        for j in range(max(shape.r, i) + 1, shape.n + 1)
    ]
    return MonomialIdeal(gens, shape.x_vars())


def ferrers_partition(shape: Shape) -> Tuple[int, ...]:
    """``(n-r)`` repeated r times, then ``n-r-1, ..., n-r-s``.

    The last part is 0 when ``n = r+s``; it is kept so the partition always
    has ``r+s`` parts, one per row variable.
    """
    n, r, s = shape.astuple()
    return tuple([n - r] * r + [n - r - i for i in range(1, s + 1)])


# ---------------------------------------------------------------------------
# ladders

X1_COL = "x1"  # marker for the added left column of the extended ladder


@dataclass(frozen=True)
class Ladder:
    """Boxes ``(i, j)`` carrying ``y[i,j]``; the extended ladder also has a
    top row of ``x[2,j]`` (row 0) and a left column of ``x[1,i]``."""

    shape: Shape
    extended: bool
    boxes: frozenset

    @property
    def rows(self) -> Tuple[int, ...]:
        first = 0 if self.extended else 1
        return tuple(range(first, self.shape.r + self.shape.s + 1))

    @property
    def columns(self) -> Tuple[object, ...]:
        """Left to right: the x-column (extended only), then ``j = n, ..., r+1``."""
        ys = tuple(range(self.shape.n, self.shape.r, -1))
        return ((X1_COL,) + ys) if self.extended else ys

    def cell(self, row: int, col) -> Optional[Var]:
        if col == X1_COL:
            return x(1, row) if row >= 1 else None
        if row == 0:
            return x(2, col)
        return y(row, col) if (row, col) in self.boxes else None

    def cells(self) -> Iterator[Tuple[int, object, Var]]:
        for row in self.rows:
            for col in self.columns:
                v = self.cell(row, col)
                if v is not None:
                    yield row, col, v

    def variables(self) -> Tuple[Var, ...]:
        return tuple(sorted(v for _, _, v in self.cells()))

    def reading_order(self) -> TermOrder:
        """Lex by reading the ladder row by row, left to right.  The leading
        term of every 2x2 minor is then its main diagonal."""
        return Lex([v for _, _, v in self.cells()])

    def extra_boxes(self) -> Tuple[int, int]:
        """Sizes of the added top row and left column."""
        if not self.extended:
            return (0, 0)
        return (self.shape.n - self.shape.r, self.shape.r + self.shape.s)

    def render(self) -> str:
        return render_ladder(self)


def ladder(shape: Shape, extended: bool = False) -> Ladder:
    boxes = frozenset(
        (i, j) for i in range(1, shape.r + shape.s + 1) for j in range(shape.r + 1, shape.n + 1) if j > max(shape.r, i)
    )
    return Ladder(shape, extended, boxes)


@dataclass(frozen=True)
class LadderMinor:
    """A 2x2 minor, main diagonal minus antidiagonal.  ``label`` is
    ``("E1", i, j, k)``, ``("E2", i, j, k)`` or ``("F", i, j, k, l)``."""

    label: tuple
    poly: Polynomial


def labelled_ladder_minors(L: Ladder) -> List[LadderMinor]:
    out = []
    rows, cols = L.rows, L.columns
    for a, b in combinations(rows, 2):
        for p, q in combinations(cols, 2):
            tl, tr, bl, br = L.cell(a, p), L.cell(a, q), L.cell(b, p), L.cell(b, q)
            if None in (tl, tr, bl, br):
                continue
            f = Polynomial.var(tl) * Polynomial.var(br) - Polynomial.var(tr) * Polynomial.var(bl)
            if p == X1_COL:
                label = ("E1", a, b, q)
            elif a == 0:
                label = ("E2", b, q, p)
            else:
                label = ("F", a, b, q, p)
            out.append(LadderMinor(label, f))
    return out


def ladder_minors(L: Ladder) -> List[Polynomial]:
    return [m.poly for m in labelled_ladder_minors(L)]


def _label(prefix: str, a: int, b: int, n: int) -> str:
    return f"{prefix}{a},{b}" if n >= 10 else f"{prefix}{a}{b}"


def render_ladder(L: Ladder) -> str:
    """ASCII picture: columns ``x2j`` with j descending, rows ``x1i``;
    boxes drawn as ``[y14]``."""
    sh = L.shape
    cols = [c for c in L.columns if c != X1_COL]
    w = len(_label("y", sh.r + sh.s, sh.n, sh.n)) + 2
    margin = " " * 6 + (" " * w if L.extended else "")
    lines = [(margin + "".join(_label("x", 2, c, sh.n).center(w) for c in cols)).rstrip()]
    if L.extended:
        lines.append((margin + "".join(f"[{_label('x', 2, c, sh.n)}]".center(w) for c in cols)).rstrip())
    for i in range(1, sh.r + sh.s + 1):
        row = _label("x", 1, i, sh.n).ljust(6)
        if L.extended:
            row += f"[{_label('x', 1, i, sh.n)}]".center(w)
        for c in cols:
            row += f"[{_label('y', i, c, sh.n)}]".center(w) if (i, c) in L.boxes else " " * w
        lines.append(row.rstrip())
    return "\n".join(lines)


def render_matrix(shape: Shape) -> str:
    cells = []
    for u in (1, 2):
        cells.append([str(x(u, i)) if shape.has_x(u, i) else "0" for i in range(1, shape.n + 1)])
    w = max(len(c) for row in cells for c in row)
    return "\n".join("[ " + "  ".join(c.rjust(w) for c in row) + " ]" for row in cells)


def render_ferrers(shape: Shape) -> str:
    lam = ferrers_partition(shape)
    return "\n".join(f"x1{i + 1}".ljust(6) + "[]" * part for i, part in enumerate(lam))


# ---------------------------------------------------------------------------
# relations


@dataclass(frozen=True)
class Relation:
    kind: str  # "l" or "p"
    index: tuple  # (u, i, j, k) or (i, j, k, l)
    poly: Polynomial

    def name(self) -> str:
        return f"{self.kind}_{{{','.join(map(str, self.index))}}}"


@dataclass(frozen=True)
class RelationSet:
    linear: Tuple[Relation, ...]
    plucker: Tuple[Relation, ...]

    def all(self) -> Tuple[Relation, ...]:
        return self.linear + self.plucker

    def polys(self) -> List[Polynomial]:
        return [rel.poly for rel in self.all()]


def _dedup(rels: List[Relation]) -> Tuple[Relation, ...]:
    seen = set()
    out = []
    for rel in rels:
        if rel.poly.is_zero() or rel.poly in seen or -rel.poly in seen:
            continue
        seen.add(rel.poly)
        out.append(rel)
    return tuple(out)


def linear_relations(shape: Shape) -> Tuple[Relation, ...]:
    """``l_{uijk} = x_ui y_jk - x_uj y_ik + x_uk y_ij`` after zero conventions."""
    xv, yv = shape.xv, shape.yv
    rels = []
    for u in (1, 2):
        for i, j, k in combinations(range(1, shape.n + 1), 3):
            f = xv(u, i) * yv(j, k) - xv(u, j) * yv(i, k) + xv(u, k) * yv(i, j)
            rels.append(Relation("l", (u, i, j, k), f))
    return _dedup(rels)


def plucker_relations(shape: Shape) -> Tuple[Relation, ...]:
    """``p_{ijkl} = y_ij y_kl - y_ik y_jl + y_il y_jk`` after zero conventions."""
    yv = shape.yv
    rels = []
    for i, j, k, l in combinations(range(1, shape.n + 1), 4):
        f = yv(i, j) * yv(k, l) - yv(i, k) * yv(j, l) + yv(i, l) * yv(j, k)
        rels.append(Relation("p", (i, j, k, l), f))
    return _dedup(rels)


def relations(shape: Shape) -> RelationSet:
    return RelationSet(linear_relations(shape), plucker_relations(shape))


def weights(shape: Shape) -> Tuple[Weighting, Weighting]:
    """``omega`` on R[t] and ``pi`` on S:  x1j -> 1, x2j -> j, t -> 1,
    y_ij -> j + 2."""
    base = {}
    for v in shape.x_vars():
        base[v] = 1 if v.a == 1 else v.b
    omega = dict(base)
    omega[T_VAR] = 1
    pi = dict(base)
    for v in shape.y_vars():
        pi[v] = v.b + 2
    return Weighting(omega), Weighting(pi)


# ---------------------------------------------------------------------------
# ring maps


def rees_images(shape: Shape) -> Dict[Var, Polynomial]:
    """``y_ij -> f_ij * t``."""
    tt = Polynomial.var(T_VAR)
    return {y(i, j): f * tt for (i, j), f in minors(shape).items()}


def fiber_images(shape: Shape) -> Dict[Var, Polynomial]:
    """``y_ij -> f_ij``."""
    return {y(i, j): f for (i, j), f in minors(shape).items()}


def initial_fiber_images(shape: Shape) -> Dict[Var, Polynomial]:
    """``y_ij -> in(f_ij)`` under the diagonal order."""
    order = diagonal_order(shape)
    return {y(i, j): Polynomial.monomial(f.leading_monomial(order)) for (i, j), f in minors(shape).items()}
