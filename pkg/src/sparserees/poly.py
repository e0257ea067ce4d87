"""Exact sparse multivariate polynomials over the rationals.

Variables are the matrix entries ``x[u,i]``, the minor symbols ``y[i,j]``
and the Rees variable ``t``.  Monomials are sparse exponent maps, polynomials
are sparse maps from monomials to :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from enum import IntEnum
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Callable, Dict, Iterable, Iterator, Mapping, NamedTuple, Sequence, Tuple, Union


class MalformedInput(ValueError):
    """Raised for unknown variables, bad indices or unparsable text."""


class EmptyPolynomial(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


class VarKind(IntEnum):
    X = 0
    Y = 1
    T = 2


class Var(NamedTuple):
    """A ring variable.  Tuple order is the canonical enumeration:
    all ``x[1,*]``, then ``x[2,*]``, then ``y[i,j]`` lexicographically, then ``t``."""

    kind: VarKind
    a: int = 0
    b: int = 0

    def __str__(self) -> str:
        if self.kind is VarKind.X:
            return f"x[{self.a},{self.b}]"
        if self.kind is VarKind.Y:
            return f"y[{self.a},{self.b}]"
        return "t"


def x(u: int, i: int) -> Var:
    if u not in (1, 2) or i < 1:
        raise MalformedInput(f"invalid x index ({u},{i})")
    return Var(VarKind.X, u, i)


def y(i: int, j: int) -> Var:
    if not 1 <= i < j:
        raise MalformedInput(f"invalid y index ({i},{j}); need 1 <= i < j")
    return Var(VarKind.Y, i, j)


T_VAR = Var(VarKind.T)


def t() -> Var:
    return T_VAR


def _lex_key_global(exps: Tuple[Tuple[Var, int], ...]):
    # canonical lex with earlier variables larger; used only for printing
    return tuple(((-v.kind, -v.a, -v.b), e) for v, e in exps)


class Monomial:
    """Immutable sparse monomial; ``Monomial()`` is 1."""

    __slots__ = ("_exps", "_hash", "_deg")

    def __init__(self, exps: Union[Mapping[Var, int], Iterable[Tuple[Var, int]], None] = None):
        if exps is None:
            items: Iterable[Tuple[Var, int]] = ()
        elif isinstance(exps, Mapping):
            items = exps.items()
        else:
            items = exps
        acc: Dict[Var, int] = {}
        for v, e in items:
            if e < 0:
                raise MalformedInput(f"negative exponent for {v}")
            if e:
                acc[v] = acc.get(v, 0) + e
        self._exps = tuple(sorted(acc.items()))
        self._hash = hash(self._exps)
        self._deg = sum(acc.values())

    @classmethod
    def _raw(cls, exps: Tuple[Tuple[Var, int], ...]) -> "Monomial":
        m = object.__new__(cls)
        m._exps = exps
        m._hash = hash(exps)
        m._deg = sum(e for _, e in exps)
        return m

    @classmethod
    def var(cls, v: Var, e: int = 1) -> "Monomial":
        return cls(((v, e),))

    @property
    def exponents(self) -> Tuple[Tuple[Var, int], ...]:
        return self._exps

    @property
    def degree(self) -> int:
        return self._deg

    def variables(self) -> Tuple[Var, ...]:
        return tuple(v for v, _ in self._exps)

    def exponent(self, v: Var) -> int:
        for w, e in self._exps:
            if w == v:
                return e
        return 0

    def as_dict(self) -> Dict[Var, int]:
        return dict(self._exps)

    def is_one(self) -> bool:
        return not self._exps

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        d = dict(self._exps)
        for v, e in other._exps:
            d[v] = d.get(v, 0) + e
        return Monomial._raw(tuple(sorted(d.items())))

    def __pow__(self, k: int) -> "Monomial":
        return Monomial._raw(tuple((v, e * k) for v, e in self._exps)) if k else Monomial()

    def divides(self, other: "Monomial") -> bool:
        od = dict(other._exps)
        return all(od.get(v, 0) >= e for v, e in self._exps)

    def __floordiv__(self, other: "Monomial") -> "Monomial":
        d = dict(self._exps)
        for v, e in other._exps:
            left = d.get(v, 0) - e
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            if left:
                d[v] = left
            else:
                del d[v]
        return Monomial._raw(tuple(sorted(d.items())))

    def lcm(self, other: "Monomial") -> "Monomial":
        d = dict(self._exps)
        for v, e in other._exps:
            if e > d.get(v, 0):
                d[v] = e
        return Monomial._raw(tuple(sorted(d.items())))

    def gcd(self, other: "Monomial") -> "Monomial":
        od = dict(other._exps)
        return Monomial._raw(tuple((v, min(e, od[v])) for v, e in self._exps if v in od))

    def coprime(self, other: "Monomial") -> bool:
        od = dict(other._exps)
        return not any(v in od for v, _ in self._exps)

    def without(self, drop: Iterable[Var]) -> "Monomial":
        ds = set(drop)
        return Monomial._raw(tuple((v, e) for v, e in self._exps if v not in ds))

    def restrict(self, keep: Iterable[Var]) -> "Monomial":
        ks = set(keep)
        return Monomial._raw(tuple((v, e) for v, e in self._exps if v in ks))

    def weight(self, w: "Weighting") -> int:
        return w.of(self)

    def display_key(self):
        return (self._deg, _lex_key_global(self._exps))

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"

    def __str__(self) -> str:
        if not self._exps:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self._exps)


ONE = Monomial()

Coeff = Union[int, Fraction]


class Polynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[Monomial, Coeff], Iterable[Tuple[Monomial, Coeff]], None] = None):
        acc: Dict[Monomial, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for m, c in items:
                c = acc.get(m, 0) + Fraction(c)
                if c:
                    acc[m] = c
                else:
                    acc.pop(m, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Coeff) -> "Polynomial":
        return cls({ONE: c}) if c else cls()

    @classmethod
    def var(cls, v: Var) -> "Polynomial":
        return cls._raw({Monomial.var(v): Fraction(1)})

    @classmethod
    def monomial(cls, m: Monomial, c: Coeff = 1) -> "Polynomial":
        return cls({m: c})

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse_polynomial(text)

    # -- inspection -------------------------------------------------------
    def terms(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def monomials(self) -> Tuple[Monomial, ...]:
        return tuple(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def variables(self) -> Tuple[Var, ...]:
        vs = set()
        for m in self._terms:
            vs.update(m.variables())
        return tuple(sorted(vs))

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(m.degree for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self._terms}) <= 1

    def degree_in(self, group: Iterable[Var]) -> int:
        """Maximal degree of a term in the given variables."""
        gs = set(group)
        return max((sum(e for v, e in m.exponents if v in gs) for m in self._terms), default=-1)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return Polynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial()
            return Polynomial._raw({m: c * other for m, c in self._terms.items()})
        if isinstance(other, Monomial):
            return Polynomial._raw({m * other: c for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        acc: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                s = acc.get(m, 0) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return Polynomial._raw(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: Coeff) -> "Polynomial":
        return self * Fraction(c)

    def monic(self, order: "TermOrder") -> "Polynomial":
        _, c = self.leading_term(order)
        return self * (1 / c)

    # -- order-dependent --------------------------------------------------
    def leading_term(self, order: "TermOrder") -> Tuple[Monomial, Fraction]:
        if not self._terms:
            raise EmptyPolynomial("leading term of the zero polynomial")
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def leading_monomial(self, order: "TermOrder") -> Monomial:
        return self.leading_term(order)[0]

    def initial_form(self, w: "Weighting") -> "Polynomial":
        if not self._terms:
            raise EmptyPolynomial("initial form of the zero polynomial")
        ws = {m: w.of(m) for m in self._terms}
        top = max(ws.values())
        return Polynomial._raw({m: c for m, c in self._terms.items() if ws[m] == top})

    def substitute(self, assignment: Mapping[Var, "Polynomial"]) -> "Polynomial":
        cache: Dict[Tuple[Var, int], Polynomial] = {}
        result = Polynomial()
        for m, c in self._terms.items():
            keep = []
            prod = Polynomial.constant(c)
            for v, e in m.exponents:
                if v in assignment:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = assignment[v] ** e
                    prod = prod * cache[key]
                else:
                    keep.append((v, e))
            if keep:
                prod = prod * Monomial._raw(tuple(keep))
            result = result + prod
        return result

    # -- identity ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def _coerce(other) -> "Polynomial | None":
    if isinstance(other, Polynomial):
        return other
    if isinstance(other, (int, Fraction)):
        return Polynomial.constant(other)
    if isinstance(other, Monomial):
        return Polynomial.monomial(other)
    if isinstance(other, Var):
        return Polynomial.var(other)
    return None


def var(v: Var) -> Polynomial:
    return Polynomial.var(v)


# ---------------------------------------------------------------------------
# term orders


class TermOrder:
    """A monomial order over a fixed tuple of variables.

    Subclasses build a key on dense exponent vectors; ``key(m)`` compares
    monomials by that key and ``dense_key`` lets the Groebner kernel reuse it
    on its own vector layout.
    """

    variables: Tuple[Var, ...]

    def dense_key(self, index: Mapping[Var, int]) -> Callable[[Tuple[int, ...]], object]:
        raise NotImplementedError

    def _own_key(self):
        k = self.__dict__.get("_okey")
        if k is None:
            idx = {v: p for p, v in enumerate(self.variables)}
            k = (idx, self.dense_key(idx))
            self.__dict__["_okey"] = k
        return k

    def key(self, m: Monomial):
        idx, f = self._own_key()
        vec = [0] * len(idx)
        for v, e in m.exponents:
            p = idx.get(v)
            if p is None:
                raise MalformedInput(f"variable {v} not in the order's variables")
            vec[p] = e
        return f(tuple(vec))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._ident()))

    def _ident(self):
        raise NotImplementedError


def _picker(positions: Sequence[int]) -> Callable[[Tuple[int, ...]], Tuple[int, ...]]:
    ps = tuple(positions)
    if not ps:
        return lambda ev: ()
    if len(ps) == 1:
        p0 = ps[0]
        return lambda ev: (ev[p0],)
    from operator import itemgetter

    return itemgetter(*ps)


class Lex(TermOrder):
    """Lexicographic order; earlier variables in the sequence are larger."""

    def __init__(self, variables: Sequence[Var]):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise MalformedInput("repeated variable in lex order")

    def dense_key(self, index):
        return _picker([index[v] for v in self.variables])

    def _ident(self):
        return self.variables

    def __repr__(self) -> str:
        return f"Lex({', '.join(map(str, self.variables))})"


class DegThen(TermOrder):
    """Total degree first, ties broken by ``inner``."""

    def __init__(self, inner: TermOrder):
        self.inner = inner
        self.variables = inner.variables

    def dense_key(self, index):
        ps = [index[v] for v in self.variables]
        inner = self.inner.dense_key(index)
        if len(ps) == len(index):
            return lambda ev: (sum(ev), inner(ev))
        pick = _picker(ps)
        return lambda ev: (sum(pick(ev)), inner(ev))

    def _ident(self):
        return ("deg", self.inner._ident())

    def __repr__(self) -> str:
        return f"DegThen({self.inner!r})"


class Block(TermOrder):
    """Product order: blocks compared in sequence, each by its own order."""

    def __init__(self, blocks: Sequence[TermOrder]):
        self.blocks = tuple(blocks)
        self.variables = tuple(v for b in self.blocks for v in b.variables)
        if len(set(self.variables)) != len(self.variables):
            raise MalformedInput("blocks overlap")

    def dense_key(self, index):
        keys = [b.dense_key(index) for b in self.blocks]
        return lambda ev: tuple(k(ev) for k in keys)

    def _ident(self):
        return tuple(b._ident() for b in self.blocks)

    def __repr__(self) -> str:
        return f"Block({', '.join(map(repr, self.blocks))})"


class TExtended(TermOrder):
    """``a*t^i < b*t^j`` iff ``i < j``, or ``i == j`` and ``a < b`` in ``inner``."""

    def __init__(self, inner: TermOrder):
        if T_VAR in inner.variables:
            raise MalformedInput("inner order already contains t")
        self.inner = inner
        self.variables = inner.variables + (T_VAR,)

    def dense_key(self, index):
        tp = index[T_VAR]
        inner = self.inner.dense_key(index)
        return lambda ev: (ev[tp], inner(ev))

    def _ident(self):
        return ("t", self.inner._ident())

    def __repr__(self) -> str:
        return f"TExtended({self.inner!r})"


class WeightThen(TermOrder):
    """Weight first, ties broken by ``inner``.  A term order when every
    weight is positive."""

    def __init__(self, weighting: "Weighting", inner: TermOrder):
        missing = [v for v in inner.variables if v not in weighting.weights]
        if missing:
            raise MalformedInput(f"no weight for {missing[0]}")
        if any(weighting.weights[v] <= 0 for v in inner.variables):
            raise MalformedInput("weights must be positive to refine to a term order")
        self.weighting = weighting
        self.inner = inner
        self.variables = inner.variables

    def dense_key(self, index):
        pw = [(index[v], self.weighting.weights[v]) for v in self.variables]
        inner = self.inner.dense_key(index)
        return lambda ev: (sum(ev[p] * w for p, w in pw), inner(ev))

    def _ident(self):
        return ("w", tuple(sorted((v, self.weighting.weights[v]) for v in self.variables)), self.inner._ident())

    def __repr__(self) -> str:
        return f"WeightThen({self.inner!r})"


def deglex(variables: Sequence[Var]) -> TermOrder:
    return DegThen(Lex(variables))


class Weighting:
    """Nonnegative integer weights on variables."""

    def __init__(self, weights: Mapping[Var, int]):
        for v, w in weights.items():
            if w < 0:
                raise MalformedInput(f"negative weight for {v}")
        self.weights = dict(weights)

    def __getitem__(self, v: Var) -> int:
        return self.weights[v]

    def of(self, m: Monomial) -> int:
        try:
            return sum(e * self.weights[v] for v, e in m.exponents)
        except KeyError as exc:
            raise MalformedInput(f"no weight for variable {exc.args[0]}") from None

    def __repr__(self) -> str:
        return "Weighting({" + ", ".join(f"{v}: {w}" for v, w in sorted(self.weights.items())) + "})"


# ---------------------------------------------------------------------------
# text format


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(f: Polynomial, order: "TermOrder | None" = None) -> str:
    """Render ``f`` as ``3*x[1,1]*y[2,3]^2 - t``.  Terms descend by total
    degree then canonical lex unless an order is given."""
    if f.is_zero():
        return "0"
    key = order.key if order is not None else Monomial.display_key
    parts = []
    for m in sorted(f.monomials(), key=key, reverse=True):
        c = f.coefficient(m)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if m.is_one():
            body = _fmt_coeff(a)
        elif a == 1:
            body = str(m)
        else:
            body = f"{_fmt_coeff(a)}*{m}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(
    r"\s*(?:(?P<var>[xy]\[\s*\d+\s*,\s*\d+\s*\]|t(?![\w\[]))|(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise MalformedInput(f"cannot parse polynomial near {text[pos:pos + 12]!r}")
        pos = m.end()
        if m.group("var"):
            out.append(("var", m.group("var")))
        elif m.group("num"):
            out.append(("num", m.group("num")))
        else:
            out.append(("op", m.group("op")))
    return out


def _var_from_token(tok: str) -> Var:
    if tok == "t":
        return T_VAR
    kind = tok[0]
    a, b = (int(s) for s in tok[2:-1].split(","))
    return x(a, b) if kind == "x" else y(a, b)


class _Parser:
    # expr := ['+'|'-'] term (('+'|'-') term)* ; term := factor ('*' factor)* ;
    # factor := atom ['^' num] ; atom := var | num | '(' expr ')'
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise MalformedInput("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "var":
            return Polynomial.var(_var_from_token(val))
        if kind == "num":
            return Polynomial.constant(Fraction(val))
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise MalformedInput("unbalanced parenthesis")
            return inner
        raise MalformedInput(f"unexpected token {val!r}")


def parse_polynomial(text: str) -> Polynomial:
    """Parse the text format produced by :func:`format_polynomial`."""
    p = _Parser(_tokenize(text))
    if not p.toks:
        raise MalformedInput("empty polynomial text")
    out = p.expr()
    if p.i != len(p.toks):
        raise MalformedInput(f"trailing input at token {p.toks[p.i][1]!r}")
    return out


def common_denominator(polys: Iterable[Polynomial]) -> int:
    dens = [c.denominator for f in polys for _, c in f.terms()]
    return reduce(lcm, dens, 1)
