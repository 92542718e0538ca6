"""Exact sparse multivariate polynomials over Q (or a large prime field).

A :class:`RingContext` fixes an ordered list of variable names together
with a positive integer weight per variable.  A :class:`Polynomial` is a
mapping from exponent tuples (one entry per context variable) to nonzero
coefficients.  Coefficients are Python ``int`` or ``fractions.Fraction``
values in characteristic zero, and reduced ``int`` residues in the prime
field mode.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from .errors import (
    ContextMismatch,
    ExponentOverflow,
    MissingImage,
    ParseError,
    UnknownVariable,
)

Coeff = Union[int, Fraction]
Exps = tuple

MAX_EXPONENT = 2**31 - 1
MIN_PRIME = 2**30


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class RingContext:
    """Ordered variables, per-variable weights and the coefficient field.

    ``default_order`` only affects printing (terms are listed in
    descending order under it); it does not take part in equality.
    """

    variables: tuple[str, ...]
    weights: tuple[int, ...] = ()
    characteristic: int = 0
    default_order: object = field(default=None, compare=False, repr=False)
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        weights = tuple(self.weights) if self.weights else (1,) * len(variables)
        if len(weights) != len(variables):
            raise ValueError("one weight per variable is required")
        if any(not isinstance(w, int) or w <= 0 for w in weights):
            raise ValueError(f"weights must be positive integers, got {weights}")
        object.__setattr__(self, "weights", weights)
        p = self.characteristic
        if p != 0 and (p <= MIN_PRIME or not _is_probable_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime > 2^30, got {p}")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(variables)})

    # -- structure -------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"{name!r} is not a variable of {self.variables}") from None

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def weight(self, exps: Exps) -> int:
        return sum(map(operator.mul, exps, self.weights))

    def with_order(self, order) -> "RingContext":
        return replace(self, default_order=order)

    def subcontext(self, keep: Iterable[str]) -> "RingContext":
        """Context on the variables in ``keep``, in this context's order."""
        keep = set(keep)
        for name in keep:
            self.index(name)
        names = [v for v in self.variables if v in keep]
        weights = [w for v, w in zip(self.variables, self.weights) if v in keep]
        return RingContext(tuple(names), tuple(weights), self.characteristic)

    # -- coefficients ----------------------------------------------------

    def coerce(self, c) -> Coeff:
        p = self.characteristic
        if p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, p) % p
            return int(c) % p
        if isinstance(c, Fraction):
            return c.numerator if c.denominator == 1 else c
        if isinstance(c, int):
            return c
        raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")

    def cdiv(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        if p:
            return a * pow(b, -1, p) % p
        q = Fraction(a, b) if isinstance(a, int) and isinstance(b, int) else Fraction(a) / b
        return q.numerator if q.denominator == 1 else q

    # -- constructors ----------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return Polynomial(self, {tuple(exps): 1}, _trusted=True)

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exps: Iterable[int], c=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): c})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


def _check_exps(ctx: RingContext, exps) -> tuple:
    exps = tuple(exps)
    if len(exps) != ctx.nvars:
        raise ValueError(f"exponent vector {exps} has wrong length for {ctx.variables}")
    for e in exps:
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponents must be nonnegative integers, got {exps}")
        if e > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
    return exps


@dataclass(frozen=True)
class Monomial:
    """A power product, interpreted in ``ctx``."""

    ctx: RingContext
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", _check_exps(self.ctx, self.exponents))

    @classmethod
    def of(cls, f: "Polynomial") -> "Monomial":
        """The monomial of a single-term polynomial."""
        if len(f.terms) != 1:
            raise ValueError("expected a single-term polynomial")
        (exps,) = f.terms
        return cls(f.ctx, exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        _same_ctx(self.ctx, other.ctx)
        return Monomial(self.ctx, tuple(map(operator.add, self.exponents, other.exponents)))

    def divides(self, other: "Monomial") -> bool:
        return all(map(operator.le, self.exponents, other.exponents))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(self.ctx, tuple(map(max, self.exponents, other.exponents)))

    @property
    def weight(self) -> int:
        return self.ctx.weight(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def support(self) -> frozenset[str]:
        return frozenset(v for v, e in zip(self.ctx.variables, self.exponents) if e)

    def to_polynomial(self, c=1) -> "Polynomial":
        return self.ctx.monomial(self.exponents, c)

    def __str__(self) -> str:
        return _format_power_product(self.ctx.variables, self.exponents) or "1"


def _same_ctx(a: RingContext, b: RingContext) -> None:
    if a is not b and a != b:
        raise ContextMismatch(f"{a.variables} != {b.variables}")


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ctx", "terms", "_lead", "_hash", "_deg")

    def __init__(self, ctx: RingContext, terms: Mapping | None = None, *, _trusted: bool = False):
        self.ctx = ctx
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for exps, c in (terms or {}).items():
                exps = _check_exps(ctx, exps)
                c = ctx.coerce(c)
                if c:
                    clean[exps] = ctx.coerce(clean.get(exps, 0) + c)
                    if not clean[exps]:
                        del clean[exps]
            self.terms = clean
        self._lead = {}
        self._hash = None
        self._deg = None

    # -- basic protocol --------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            if self.ctx is not other.ctx and self.ctx != other.ctx:
                return False
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ctx.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    # -- arithmetic ------------------------------------------------------

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            _same_ctx(self.ctx, other.ctx)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other._combine(self, -1)

    def __neg__(self) -> "Polynomial":
        coerce = self.ctx.coerce
        return Polynomial(self.ctx, {e: coerce(-c) for e, c in self.terms.items()}, _trusted=True)

    def _combine(self, other: "Polynomial", sign: int) -> "Polynomial":
        coerce = self.ctx.coerce
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = coerce(out.get(e, 0) + sign * c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ctx, out, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.total_degree + other.total_degree > MAX_EXPONENT:
            raise ExponentOverflow("product degree exceeds the exponent limit")
        coerce = self.ctx.coerce
        add = operator.add
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(add, e1, e2))
                v = out.get(e, 0) + c1 * c2
                out[e] = v
        out = {e: c for e, c in ((e, coerce(c)) for e, c in out.items()) if c}
        return Polynomial(self.ctx, out, _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        if n and self.total_degree * n > MAX_EXPONENT:
            raise ExponentOverflow("power degree exceeds the exponent limit")
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ctx.coerce(c)
        if not c:
            return self.ctx.zero()
        coerce = self.ctx.coerce
        return Polynomial(self.ctx, {e: coerce(v * c) for e, v in self.terms.items()}, _trusted=True)

    def mul_term(self, exps: Exps, c) -> "Polynomial":
        """Multiply by the single term ``c * x**exps``."""
        if not c:
            return self.ctx.zero()
        coerce = self.ctx.coerce
        add = operator.add
        return Polynomial(
            self.ctx,
            {tuple(map(add, e, exps)): coerce(v * c) for e, v in self.terms.items()},
            _trusted=True,
        )

    # -- inspection ------------------------------------------------------

    @property
    def total_degree(self) -> int:
        if self._deg is None:
            self._deg = max((sum(e) for e in self.terms), default=0)
        return self._deg

    def used_variables(self) -> frozenset[str]:
        used = [0] * self.ctx.nvars
        for e in self.terms:
            used = [u or x for u, x in zip(used, e)]
        return frozenset(v for v, u in zip(self.ctx.variables, used) if u)

    def degree_in(self, names: Iterable[str]) -> int:
        """Largest total degree in the given block of variables."""
        idx = [self.ctx.index(n) for n in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=0)

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * self.ctx.nvars, 0)

    def monomials(self) -> list[Monomial]:
        return [Monomial(self.ctx, e) for e in self.terms]

    def is_weight_homogeneous(self, weights: Iterable[int] | None = None) -> bool:
        w = tuple(weights) if weights is not None else self.ctx.weights
        return len({sum(map(operator.mul, e, w)) for e in self.terms}) <= 1

    # -- maps ------------------------------------------------------------

    def recontext(self, ctx: RingContext) -> "Polynomial":
        """The same polynomial viewed in another context, matching variables by name."""
        if ctx is self.ctx or ctx == self.ctx:
            return Polynomial(ctx, self.terms, _trusted=True)
        used = self.used_variables()
        for name in used:
            ctx.index(name)
        pos = [(self.ctx.index(v), ctx.index(v)) for v in used]
        out = {}
        for e, c in self.terms.items():
            new = [0] * ctx.nvars
            for i, j in pos:
                new[j] = e[i]
            out[tuple(new)] = ctx.coerce(c)
        return Polynomial(ctx, {k: v for k, v in out.items() if v}, _trusted=True)

    def substitute(self, assignment: Mapping[str, "Polynomial"]) -> "Polynomial":
        return substitute(self, assignment)

    def diff(self, name: str) -> "Polynomial":
        return partial_derivative(self, name)


# -- spec-level operations -----------------------------------------------

_OPS: dict[str, Callable] = {"add": operator.add, "sub": operator.sub, "mul": operator.mul}


def ring_arithmetic(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    _same_ctx(f.ctx, g.ctx)
    try:
        return _OPS[op](f, g)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


def substitute(f: Polynomial, assignment: Mapping[str, Polynomial]) -> Polynomial:
    """Apply the ring homomorphism sending each variable of ``f.ctx`` to its image.

    Every variable needs an image (even unused ones), and all images must
    live in one target context.
    """
    ctx = f.ctx
    missing = [v for v in ctx.variables if v not in assignment]
    if missing:
        raise MissingImage(f"no image for {missing}")
    images = [assignment[v] for v in ctx.variables]
    target = images[0].ctx if images else ctx
    for img in images:
        _same_ctx(target, img.ctx)
    powers: list[dict[int, Polynomial]] = [{1: img} for img in images]

    def power(i: int, n: int) -> Polynomial:
        cache = powers[i]
        if n not in cache:
            cache[n] = images[i] ** n
        return cache[n]

    result = target.zero()
    for exps, c in f.terms.items():
        term = target.const(c)
        for i, n in enumerate(exps):
            if n:
                term = term * power(i, n)
                if not term:
                    break
        result = result + term
    return result


def partial_derivative(f: Polynomial, name: str) -> Polynomial:
    i = f.ctx.index(name)
    coerce = f.ctx.coerce
    out = {}
    for e, c in f.terms.items():
        n = e[i]
        if n:
            v = coerce(c * n)
            if v:
                out[e[:i] + (n - 1,) + e[i + 1 :]] = v
    return Polynomial(f.ctx, out, _trusted=True)


# -- text form -----------------------------------------------------------


def _format_power_product(variables, exps) -> str:
    parts = []
    for v, n in zip(variables, exps):
        if n == 1:
            parts.append(v)
        elif n:
            parts.append(f"{v}^{n}")
    return "*".join(parts)


def _default_key(ctx: RingContext):
    def key(exps):
        return (ctx.weight(exps),) + tuple(-e for e in reversed(exps))

    return key


def sorted_terms(f: Polynomial) -> list[tuple[tuple, Coeff]]:
    """Terms in descending order under the context's default order."""
    order = f.ctx.default_order
    key = order.key if order is not None else _default_key(f.ctx)
    return sorted(f.terms.items(), key=lambda item: key(item[0]), reverse=True)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for k, (exps, c) in enumerate(sorted_terms(f)):
        neg = c < 0 if not f.ctx.characteristic else False
        mag = -c if neg else c
        pp = _format_power_product(f.ctx.variables, exps)
        if not pp:
            body = str(mag)
        elif mag == 1:
            body = pp
        else:
            body = f"{mag}*{pp}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*(?:\[[-0-9,]*\])?)|([-+*/^()])")


def _tokenize(text: str) -> list[tuple[str, str]]:
    text = "".join(text.split())
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("var", name))
        else:
            tokens.append(("sym", sym))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: RingContext):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected token {tok[1]!r} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial text")
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return result

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in (("sym", "+"), ("sym", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        result = self.term().scale(sign)
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek() == ("sym", "*"):
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        kind, value = self.peek()
        if kind == "num":
            self.take()
            c = Fraction(int(value))
            if self.peek() == ("sym", "/"):
                self.take()
                den = int(self.take("num")[1])
                if den == 0:
                    raise ParseError("zero denominator")
                c = c / den
            base = self.ctx.const(c)
        elif kind == "var":
            self.take()
            base = self.ctx.var(value)
        elif (kind, value) == ("sym", "("):
            self.take()
            base = self.expr()
            self.take("sym", ")")
        else:
            raise ParseError(f"unexpected token {value!r} in {self.text!r}")
        if self.peek() == ("sym", "^"):
            self.take()
            n = int(self.take("num")[1])
            if n > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {n} exceeds {MAX_EXPONENT}")
            base = base**n
        return base


def parse_polynomial(text: str, ctx: RingContext) -> Polynomial:
    """Parse the canonical text grammar (``3/4*X1^2*F[1,2] - t``)."""
    return _Parser(text, ctx).parse()
