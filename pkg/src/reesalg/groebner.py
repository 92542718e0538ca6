"""Division, S-polynomials, Buchberger's algorithm and ideal comparisons.

Only Buchberger's first criterion (coprime leading monomials) is used to
skip pairs.  Every operation is exact.
"""

from __future__ import annotations

import heapq
import itertools
import operator
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import Monomial, Polynomial, RingContext
from .errors import (
    ContextMismatch,
    NotAGroebnerBasis,
    OrderNotEliminating,
    ResourceLimit,
    ZeroPolynomial,
)
from .orders import OrderSpec, eliminates, leading_exps, monic, restricted_order

DEFAULT_MAX_STEPS = 10**6

_le = operator.le
_add = operator.add
_sub = operator.sub


class DivisionAudit:
    """Opt-in checking of the division invariant on every call to the reducer.

    While enabled, each reduction tracks its quotients and afterwards
    asserts ``f == sum(q_i g_i) + r``, that no term of ``r`` is divisible
    by a leading monomial of the divisors, and that ``LM(q_i g_i) <= LM(f)``.
    """

    def __init__(self) -> None:
        self.enabled = False
        self.count = 0

    def __enter__(self) -> "DivisionAudit":
        self._saved = self.enabled
        self.enabled = True
        return self

    def __exit__(self, *exc) -> None:
        self.enabled = self._saved


AUDIT = DivisionAudit()


@dataclass(frozen=True)
class IdealPresentation:
    generators: tuple[Polynomial, ...]
    order: OrderSpec

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("an ideal presentation needs at least one generator")
        ctx = gens[0].ctx
        for g in gens:
            if g.ctx is not ctx and g.ctx != ctx:
                raise ContextMismatch("generators must share one context")
            if not g:
                raise ZeroPolynomial("generators must be nonzero")
        self.order.check_context(ctx)

    @property
    def ctx(self) -> RingContext:
        return self.generators[0].ctx


@dataclass(frozen=True)
class SPairCertificate:
    i: int
    j: int
    coprime_skipped: bool
    remainder: Polynomial
    steps: int

    @property
    def confirmed(self) -> bool:
        return not self.remainder

    def to_dict(self) -> dict:
        return {
            "pair": [self.i, self.j],
            "coprime_skipped": self.coprime_skipped,
            "remainder": str(self.remainder),
            "steps": self.steps,
        }


@dataclass
class IdealEquality:
    forward: bool
    backward: bool
    forward_failures: list[Polynomial] = field(default_factory=list)
    backward_failures: list[Polynomial] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.forward and self.backward

    def to_dict(self) -> dict:
        return {
            "forward": self.forward,
            "backward": self.backward,
            "forward_failures": [str(f) for f in self.forward_failures],
            "backward_failures": [str(f) for f in self.backward_failures],
        }


# -- reduction -------------------------------------------------------------


class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, limit: int | None):
        self.limit = limit
        self.left = limit if limit is not None else -1

    def spend(self, n: int = 1) -> None:
        if self.limit is None:
            return
        self.left -= n
        if self.left < 0:
            raise ResourceLimit(f"reduction step limit {self.limit} exceeded")


def _reduce(f: Polynomial, basis: Sequence[Polynomial], order: OrderSpec, budget: _Budget | None = None,
            track: bool = False):
    """Full multivariate division of ``f`` by ``basis``.

    Returns ``(quotients or None, remainder, steps)``.
    """
    ctx = f.ctx
    coerce = ctx.coerce
    cdiv = ctx.cdiv
    key = order.key
    track = track or AUDIT.enabled
    heads = []
    for g in basis:
        lm = leading_exps(g, order)
        heads.append((lm, g.terms[lm], g))
    quotients = [dict() for _ in basis] if track else None

    p = dict(f.terms)
    heap = [(tuple(-k for k in key(e)), e) for e in p]
    heapq.heapify(heap)
    rem = {}
    steps = 0
    while heap:
        _, e = heapq.heappop(heap)
        c = p.get(e)
        if c is None:
            continue
        for idx, (lm, lc, g) in enumerate(heads):
            if all(map(_le, lm, e)):
                shift = tuple(map(_sub, e, lm))
                factor = cdiv(c, lc)
                for ge, gc in g.terms.items():
                    te = tuple(map(_add, ge, shift))
                    old = p.get(te)
                    if old is None:
                        p[te] = coerce(-factor * gc)
                        heapq.heappush(heap, (tuple(-k for k in key(te)), te))
                    else:
                        v = coerce(old - factor * gc)
                        if v:
                            p[te] = v
                        else:
                            del p[te]
                if track:
                    q = quotients[idx]
                    v = coerce(q.get(shift, 0) + factor)
                    if v:
                        q[shift] = v
                    else:
                        q.pop(shift, None)
                steps += 1
                if budget is not None:
                    budget.spend()
                break
        else:
            rem[e] = c
            del p[e]
    remainder = Polynomial(ctx, rem, _trusted=True)
    qs = [Polynomial(ctx, q, _trusted=True) for q in quotients] if track else None
    if AUDIT.enabled:
        _audit(f, basis, order, qs, remainder)
    return qs, remainder, steps


def _audit(f, basis, order, quotients, remainder) -> None:
    AUDIT.count += 1
    total = remainder
    for q, g in zip(quotients, basis):
        if q:
            total = total + q * g
    assert total == f, "division identity f = sum q_i g_i + r violated"
    lms = [leading_exps(g, order) for g in basis]
    for e in remainder.terms:
        assert not any(all(map(_le, lm, e)) for lm in lms), "remainder term divisible by a leading monomial"
    if f:
        top = order.key(leading_exps(f, order))
        for q, g in zip(quotients, basis):
            if q:
                assert order.key(leading_exps(q * g, order)) <= top, "quotient product exceeds LM(f)"


def divide(f: Polynomial, basis: Sequence[Polynomial], order: OrderSpec) -> tuple[list[Polynomial], Polynomial]:
    """Quotients and remainder of ``f`` on division by ``basis``."""
    for g in basis:
        if not g:
            raise ZeroPolynomial("cannot divide by the zero polynomial")
    order.check_context(f.ctx)
    quotients, remainder, _ = _reduce(f, basis, order, track=True)
    return quotients, remainder


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: OrderSpec) -> Polynomial:
    return _reduce(f, basis, order)[1]


# -- S-polynomials and Buchberger ---------------------------------------------


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(map(max, a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return not any(x and y for x, y in zip(a, b))


def s_polynomial(f: Polynomial, g: Polynomial, order: OrderSpec) -> Polynomial:
    if not f or not g:
        raise ZeroPolynomial("S-polynomial of the zero polynomial")
    lf, lg = leading_exps(f, order), leading_exps(g, order)
    lcm = _lcm(lf, lg)
    ctx = f.ctx
    sf = f.mul_term(tuple(map(_sub, lcm, lf)), ctx.cdiv(1, f.terms[lf]))
    sg = g.mul_term(tuple(map(_sub, lcm, lg)), ctx.cdiv(1, g.terms[lg]))
    return sf - sg


def _weighted(e, weights) -> int:
    return sum(map(operator.mul, e, weights))


def buchberger(ideal: IdealPresentation, strategy: str = "normal", max_steps: int | None = DEFAULT_MAX_STEPS
               ) -> list[Polynomial]:
    """A Groebner basis (monic, not reduced) of the ideal.

    Pairs are processed by smallest lcm (``normal``) or smallest weighted
    sugar then lcm (``sugar``); ties break on pair indices so the output is
    deterministic.
    """
    if strategy not in ("normal", "sugar"):
        raise ValueError(f"unknown strategy {strategy!r}")
    order = ideal.order
    key = order.key
    weights = order.weights
    budget = _Budget(max_steps)

    basis: list[Polynomial] = []
    lms: list[tuple] = []
    sugar: list[int] = []
    heap: list = []

    def push_pairs(new: int) -> None:
        for i in range(new):
            lcm = _lcm(lms[i], lms[new])
            if strategy == "sugar":
                s = max(sugar[i] + _weighted(lcm, weights) - _weighted(lms[i], weights),
                        sugar[new] + _weighted(lcm, weights) - _weighted(lms[new], weights))
            else:
                s = 0
            heapq.heappush(heap, (s, key(lcm), i, new))

    def add(g: Polynomial, s: int) -> None:
        g = monic(g, order)
        basis.append(g)
        lms.append(leading_exps(g, order))
        sugar.append(s)
        push_pairs(len(basis) - 1)

    for g in ideal.generators:
        add(g, max(_weighted(e, weights) for e in g.terms))

    while heap:
        s, _, i, j = heapq.heappop(heap)
        if _coprime(lms[i], lms[j]):
            continue
        try:
            budget.spend()
            _, r, _ = _reduce(s_polynomial(basis[i], basis[j], order), basis, order, budget)
        except ResourceLimit as exc:
            exc.state = {
                "basis": [str(g) for g in basis],
                "pending_pairs": sorted((p[2], p[3]) for p in heap) + [(i, j)],
            }
            raise
        if r:
            add(r, s)
    return basis


def is_groebner_basis(polys: Sequence[Polynomial], order: OrderSpec) -> tuple[bool, list[SPairCertificate]]:
    """Buchberger's criterion with a certificate for every pair."""
    polys = list(polys)
    if not polys or any(not g for g in polys):
        raise ZeroPolynomial("the candidate basis must be nonempty with nonzero members")
    lms = [leading_exps(g, order) for g in polys]
    certs = []
    ok = True
    zero = polys[0].ctx.zero()
    for i, j in itertools.combinations(range(len(polys)), 2):
        if _coprime(lms[i], lms[j]):
            certs.append(SPairCertificate(i, j, True, zero, 0))
            continue
        _, r, steps = _reduce(s_polynomial(polys[i], polys[j], order), polys, order)
        certs.append(SPairCertificate(i, j, False, r, steps))
        ok = ok and not r
    return ok, certs


def minimalize(gb: Sequence[Polynomial], order: OrderSpec) -> list[Polynomial]:
    """Drop members whose leading monomial is divisible by another's.

    Members are kept as given (not made monic); among equal leading
    monomials the first one in input order survives.
    """
    key = order.key
    indexed = sorted(enumerate(gb), key=lambda item: (key(leading_exps(item[1], order)), item[0]))
    kept: list[tuple[int, Polynomial]] = []
    for idx, g in indexed:
        lm = leading_exps(g, order)
        if not any(all(map(_le, leading_exps(h, order), lm)) for _, h in kept):
            kept.append((idx, g))
    return [g for _, g in sorted(kept)]


def minimalize_and_reduce(gb: Sequence[Polynomial], order: OrderSpec, check: bool = True) -> list[Polynomial]:
    """The reduced Groebner basis, sorted by descending leading monomial."""
    gb = [g for g in gb if g]
    if not gb:
        return []
    if check and not is_groebner_basis(gb, order)[0]:
        raise NotAGroebnerBasis("input is not a Groebner basis for this order")
    minimal = [monic(g, order) for g in minimalize(gb, order)]
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        lm = leading_exps(g, order)
        tail = Polynomial(g.ctx, {e: c for e, c in g.terms.items() if e != lm}, _trusted=True)
        r = _reduce(tail, others, order)[1] if others else tail
        reduced.append(r + g.ctx.monomial(lm, 1))
    key = order.key
    reduced.sort(key=lambda g: key(leading_exps(g, order)), reverse=True)
    return reduced


def reduced_groebner_basis(polys: Iterable[Polynomial], order: OrderSpec, strategy: str = "normal",
                           max_steps: int | None = DEFAULT_MAX_STEPS) -> list[Polynomial]:
    gb = buchberger(IdealPresentation(tuple(p for p in polys if p), order), strategy, max_steps)
    return minimalize_and_reduce(gb, order, check=False)


# -- elimination and comparisons ----------------------------------------------


def elimination_subring(order: OrderSpec, ctx: RingContext, drop: Iterable[str]) -> tuple[RingContext, OrderSpec]:
    drop = set(drop)
    sub = ctx.subcontext(v for v in ctx.variables if v not in drop)
    sub_order = restricted_order(order, sub)
    return sub.with_order(sub_order), sub_order


def eliminate(gb: Sequence[Polynomial], drop: Iterable[str], order: OrderSpec) -> list[Polynomial]:
    """Members of ``gb`` free of the ``drop`` variables, moved to the subring."""
    drop = set(drop)
    if not drop:
        return list(gb)
    if not eliminates(order, drop):
        raise OrderNotEliminating(f"the order does not eliminate {sorted(drop)}")
    if not gb:
        return []
    ctx = gb[0].ctx
    sub, _ = elimination_subring(order, ctx, drop)
    return [g.recontext(sub) for g in gb if not (g.used_variables() & drop)]


def ideal_membership(f: Polynomial, gb: Sequence[Polynomial], order: OrderSpec) -> bool:
    if not f:
        return True
    if not gb:
        return False
    return not _reduce(f, gb, order)[1]


def ideal_equality(a: IdealPresentation, b: IdealPresentation, max_steps: int | None = DEFAULT_MAX_STEPS
                   ) -> IdealEquality:
    """Two-sided membership: generators of each ideal against a GB of the other."""
    if a.ctx != b.ctx:
        raise ContextMismatch("ideals live in different rings")
    gb_b = buchberger(b, max_steps=max_steps)
    gb_a = buchberger(a, max_steps=max_steps)
    fwd = [r for r in (_reduce(f, gb_b, b.order)[1] for f in a.generators) if r]
    bwd = [r for r in (_reduce(f, gb_a, a.order)[1] for f in b.generators) if r]
    return IdealEquality(not fwd, not bwd, fwd, bwd)


def ideals_equal(a: IdealPresentation, b: IdealPresentation, max_steps: int | None = DEFAULT_MAX_STEPS) -> bool:
    return bool(ideal_equality(a, b, max_steps))


# -- dimension ----------------------------------------------------------------


def monomial_ideal_dimension(lt_generators: Iterable[Monomial], ctx: RingContext) -> int:
    """Krull dimension of a monomial ideal: the largest independent variable set.

    A set V is independent when no generator has its support inside V.
    Returns -1 for the unit ideal.
    """
    n = ctx.nvars
    masks = set()
    for m in lt_generators:
        if m.ctx != ctx:
            raise ContextMismatch("monomial from another ring")
        masks.add(sum(1 << i for i, e in enumerate(m.exponents) if e))
    if 0 in masks:
        return -1
    best = 0
    full = (1 << n) - 1
    for v in range(full + 1):
        size = bin(v).count("1")
        if size > best and all(s & ~v for s in masks):
            best = size
    return best
