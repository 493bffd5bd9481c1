"""Polynomial maps between model corners and their germ classification.

Concrete maps are given by rational-coefficient polynomials in the
source coordinates x1..xm.  At the origin each constrained component is
either identically zero, a positive unit times a monomial in boundary
variables (a b-map row), or neither; the classifier sorts the map into
one of four kinds and lowers the good ones to germs.

Polynomials are stored sparsely with exponent-vector keys and printed in
graded-lexicographic order, so textual output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg
from .errors import ModelMismatch, NotSmoothAtOrigin, ParseError
from .germ import CornerMapGerm
from .model import ModelCorner

_ZERO = Fraction(0)
_ONE = Fraction(1)

NOT_INTO_MODEL = "not-into-model"
WEAKLY_SMOOTH_ONLY = "weakly-smooth-only"
B_MAP = "b-map"
SMOOTH = "smooth"

#: Grid scale for the negativity probe near the origin.
SAMPLE_SCALE = Fraction(1, 1024)
#: Dyadic subdivisions per coordinate: values eps/2^t for t in this range.
SAMPLE_LEVELS = 4
#: Probe point budget; the grid is thinned once it would exceed this.
SAMPLE_BUDGET = 20000


def _grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial over the rationals in a fixed number of variables."""

    nvars: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def make(cls, nvars: int, coeffs: Mapping[tuple[int, ...], object]) -> "Polynomial":
        clean = {}
        for exps, c in coeffs.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            c = Fraction(c)
            if c != 0:
                clean[exps] = clean.get(exps, _ZERO) + c
        terms = tuple(
            (e, c)
            for e, c in sorted(clean.items(), key=lambda t: _grlex_key(t[0]), reverse=True)
            if c != 0
        )
        return cls(nvars, terms)

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, ())

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls.make(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        """The coordinate polynomial x_i (1-based)."""
        exps = tuple(1 if t == i - 1 else 0 for t in range(nvars))
        return cls.make(nvars, {exps: 1})

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, _ZERO) + c
        return Polynomial.make(self.nvars, acc)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        acc: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, _ZERO) + c1 * c2
        return Polynomial.make(self.nvars, acc)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial.make(self.nvars, {e: c * k for e, k in self.terms})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, point: Sequence) -> Fraction:
        vals = [Fraction(x) for x in point]
        out = _ZERO
        for e, c in self.terms:
            term = c
            for v, k in zip(vals, e):
                term *= v ** k
            out += term
        return out

    def constant_term(self) -> Fraction:
        for e, c in self.terms:
            if all(k == 0 for k in e):
                return c
        return _ZERO

    def linear_coefficient(self, i: int) -> Fraction:
        """Coefficient of x_i (1-based) in the degree-one part."""
        want = tuple(1 if t == i - 1 else 0 for t in range(self.nvars))
        for e, c in self.terms:
            if e == want:
                return c
        return _ZERO

    def monomial_content(self) -> tuple[int, ...]:
        """Coordinatewise minimum exponent over the support."""
        if self.is_zero:
            raise ValueError("content of the zero polynomial")
        return tuple(min(e[t] for e, _ in self.terms) for t in range(self.nvars))

    def divide_monomial(self, exps: Sequence[int]) -> "Polynomial":
        return Polynomial(
            self.nvars,
            tuple((tuple(a - b for a, b in zip(e, exps)), c) for e, c in self.terms),
        )

    def substitute(
        self, args: Sequence["Polynomial"], nvars: Optional[int] = None
    ) -> "Polynomial":
        """Plug polynomials into the variables; exact composition.

        ``nvars`` pins the output arity when there are no arguments to
        infer it from.
        """
        if len(args) != self.nvars:
            raise ValueError("wrong number of substitution arguments")
        n = args[0].nvars if args else (nvars or 0)
        out = Polynomial.zero(n)
        for e, c in self.terms:
            term = Polynomial.constant(n, c)
            for arg, k in zip(args, e):
                if k:
                    term = term * arg ** k
            out = out + term
        return out

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.terms:
            factors = []
            if c != 1 or all(k == 0 for k in e):
                factors.append(str(c) if c > 0 else f"({c})" if parts else str(c))
            for t, k in enumerate(e):
                if k == 1:
                    factors.append(f"x{t + 1}")
                elif k > 1:
                    factors.append(f"x{t + 1}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)


# -- parsing -----------------------------------------------------------


class _Parser:
    """Recursive descent for '+ - * ^' over rationals and variables x<i>."""

    def __init__(self, text: str, nvars: int):
        self.tokens = self._lex(text)
        self.pos = 0
        self.nvars = nvars

    @staticmethod
    def _lex(text: str) -> list[str]:
        out = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "+-*^()/":
                out.append(ch)
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                out.append(text[i:j])
                i = j
            elif ch == "x":
                j = i + 1
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j == i + 1:
                    raise ParseError("variable must be x<index>")
                out.append(text[i:j])
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}")
        return out

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek() in ("+", "-"):
            if self.take() == "+":
                p = p + self.term()
            else:
                p = p - self.term()
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek() == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        p = self.base()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ParseError("exponent must be a natural number")
            p = p ** int(tok)
        return p

    def base(self) -> Polynomial:
        tok = self.take()
        if tok == "-":
            return -self.factor()
        if tok == "(":
            p = self.expr()
            if self.take() != ")":
                raise ParseError("unbalanced parenthesis")
            return p
        if tok.isdigit():
            num = int(tok)
            if self.peek() == "/":
                self.take()
                den = self.take()
                if not den.isdigit() or int(den) == 0:
                    raise ParseError("bad rational literal")
                return Polynomial.constant(self.nvars, Fraction(num, int(den)))
            return Polynomial.constant(self.nvars, num)
        if tok.startswith("x"):
            i = int(tok[1:])
            if not 1 <= i <= self.nvars:
                raise ParseError(f"variable {tok} out of range (nvars={self.nvars})")
            return Polynomial.variable(self.nvars, i)
        raise ParseError(f"unexpected token {tok!r}")


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    return _Parser(text, nvars).parse()


# -- polynomial maps ---------------------------------------------------


@dataclass(frozen=True)
class PolyMap:
    """A map given by one polynomial per target coordinate."""

    source: ModelCorner
    target: ModelCorner
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.components) != self.target.dim:
            raise ValueError("one component polynomial per target coordinate")
        for q in self.components:
            if q.nvars != self.source.dim:
                raise ValueError("component arity != source dimension")
        for j in range(self.target.depth):
            if self.components[j].constant_term() != 0:
                raise ValueError(
                    f"component {j + 1} must vanish at the origin (maps to the corner)"
                )

    @classmethod
    def parse(cls, source: ModelCorner, target: ModelCorner, texts: Sequence[str]) -> "PolyMap":
        comps = tuple(parse_polynomial(t, source.dim) for t in texts)
        return cls(source, target, comps)

    def jacobian_at_origin(self) -> linalg.Matrix:
        return tuple(
            tuple(q.linear_coefficient(i) for i in range(1, self.source.dim + 1))
            for q in self.components
        )


@dataclass(frozen=True)
class BMapGerm:
    """Exponent-matrix germ for a map whose rows are all b-map rows.

    ``exponents[j-1]`` lists, per source boundary variable, the power of
    that variable in the monomial content of target component j; rows in
    ``flat_rows`` pull back to the zero germ instead.
    """

    source: ModelCorner
    target: ModelCorner
    exponents: tuple[tuple[int, ...], ...]
    flat_rows: frozenset
    jacobian: linalg.Matrix


@dataclass(frozen=True)
class Classification:
    """Result of classifying a polynomial map at the origin."""

    kind: str
    germ: Optional[CornerMapGerm] = None
    b_germ: Optional[BMapGerm] = None
    negativity_witness: Optional[tuple[int, tuple[Fraction, ...]]] = None
    failing_rows: frozenset = frozenset()


def _row_analysis(q: Polynomial, a: int):
    """Classify one constrained component.

    Returns ("flat", None), ("smooth", (i, lam)), ("b", exponents) or
    ("bad", None); exponents are restricted to the boundary variables.
    """
    if q.is_zero:
        return "flat", None
    content = q.monomial_content()
    unit = q.divide_monomial(content)
    lam = unit.constant_term()
    if lam <= 0 or any(e > 0 for e in content[a:]):
        return "bad", None
    support = [t for t, e in enumerate(content) if e > 0]
    if len(support) == 1 and content[support[0]] == 1:
        return "smooth", (support[0] + 1, lam)
    return "b", content[:a]


def _sample_grid(m: ModelCorner) -> Iterable[tuple[Fraction, ...]]:
    """Deterministic rational probe points in the model near the origin.

    Boundary coordinates range over {0} and eps/2^t; interior ones also
    take the negated values.  The dyadic depth shrinks for high-arity
    maps to respect the point budget.
    """
    levels = SAMPLE_LEVELS
    while levels > 1:
        per_bnd = 1 + levels
        per_int = 1 + 2 * levels
        total = per_bnd ** m.depth * per_int ** (m.dim - m.depth)
        if total <= SAMPLE_BUDGET:
            break
        levels -= 1
    bnd_vals = [_ZERO] + [SAMPLE_SCALE / 2 ** t for t in range(levels)]
    int_vals = bnd_vals + [-v for v in bnd_vals[1:]]
    axes = [bnd_vals] * m.depth + [int_vals] * (m.dim - m.depth)
    return iproduct(*axes)


def classify_at_origin(q: PolyMap) -> Classification:
    """Sort a polynomial map into one of the four origin classes.

    All constrained rows passing the b-map test give a "b-map" (or
    "smooth" when every content is a single boundary variable); the
    verdict is exact and no sampling runs.  Otherwise a deterministic
    grid probes for negative values inside the model: a hit yields
    "not-into-model", and silence leaves "weakly-smooth-only".  The probe
    is sound but incomplete; a component with only nonnegative
    coefficients is accepted as never negative without sampling.
    """
    a = q.source.depth
    rows = [_row_analysis(q.components[j], a) for j in range(q.target.depth)]
    bad = frozenset(j + 1 for j, (kind, _) in enumerate(rows) if kind == "bad")
    if not bad:
        jac = q.jacobian_at_origin()
        if all(kind in ("flat", "smooth") for kind, _ in rows):
            pairs = tuple(
                (j + 1, data[0]) for j, (kind, data) in enumerate(rows) if kind == "smooth"
            )
            return Classification(
                SMOOTH, germ=CornerMapGerm(q.source, q.target, pairs, jac)
            )
        exps = []
        flats = set()
        for j, (kind, data) in enumerate(rows):
            if kind == "flat":
                flats.add(j + 1)
                exps.append((0,) * a)
            elif kind == "smooth":
                i, _ = data
                exps.append(tuple(1 if t == i - 1 else 0 for t in range(a)))
            else:
                exps.append(tuple(data))
        return Classification(
            B_MAP,
            b_germ=BMapGerm(q.source, q.target, tuple(exps), frozenset(flats), jac),
        )

    def certified_nonnegative(comp: Polynomial) -> bool:
        # nonnegative coefficients keep the value nonnegative wherever
        # all the involved variables are, so interior variables must
        # only appear with even exponents
        return all(
            coeff > 0 and all(e % 2 == 0 for e in exps[a:])
            for exps, coeff in comp.terms
        )

    suspects = [
        j
        for j in range(q.target.depth)
        if not certified_nonnegative(q.components[j])
    ]
    if suspects:
        for point in _sample_grid(q.source):
            for j in suspects:
                if q.components[j].evaluate(point) < 0:
                    return Classification(
                        NOT_INTO_MODEL,
                        negativity_witness=(j + 1, tuple(point)),
                        failing_rows=bad,
                    )
    return Classification(WEAKLY_SMOOTH_ONLY, failing_rows=bad)


def germ_of(q: PolyMap) -> CornerMapGerm:
    """Lower a polynomial map to its germ; the map must classify smooth."""
    cls = classify_at_origin(q)
    if cls.kind != SMOOTH:
        raise NotSmoothAtOrigin(f"classified as {cls.kind}")
    assert cls.germ is not None
    return cls.germ


def compose_poly(g: PolyMap, f: PolyMap) -> PolyMap:
    """g after f by exact polynomial substitution."""
    if f.target != g.source:
        raise ModelMismatch(f"cannot compose {g.source} after {f.target}")
    comps = tuple(
        qg.substitute(list(f.components), nvars=f.source.dim) for qg in g.components
    )
    return PolyMap(f.source, g.target, comps)
