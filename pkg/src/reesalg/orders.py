"""Monomial orders: weighted reverse-lex and the seven-tier elimination order.

The elimination order works on ``S = R_b[t]`` with monomials written as
``t^d X^alpha Psi^beta Phi^gamma`` and compares, in turn:

1. the t-degree ``d``;
2. the weight of the t-free part;
3. the total Psi-degree;
4. reverse-lex on the Psi exponents;
5. the total Phi-degree;
6. reverse-lex on the Phi exponents;
7. reverse-lex on the X exponents in the sequence (X1, X2, X3, X0).

"Reverse-lex" here means: in ``u - v`` the rightmost nonzero entry is
negative when ``u`` is the larger monomial.

Every comparator is also available as a sort key (``OrderSpec.key``); the
engine uses the key, :func:`compare` walks the tiers explicitly and the
test suite checks that the two agree.
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass
from enum import Enum

from .algebra import Monomial, Polynomial, RingContext
from .errors import ContextMismatch, NotASubcontext, ZeroPolynomial

WEIGHTED_REVLEX = "weighted_revlex"
ELIMINATION_SEVEN = "elimination_seven"

BLOCK_NAMES = ("t", "X", "Psi", "Phi")


class Cmp(Enum):
    GREATER = 1
    EQUAL = 0
    LESS = -1


@dataclass(frozen=True)
class ComparisonTrace:
    """The tier at which a comparison was decided and the values compared there.

    ``tier`` is 0 when the monomials are equal (no tier resolves them).
    """

    tier: int
    left: object
    right: object


@dataclass(frozen=True)
class OrderSpec:
    """Declarative monomial order over the variables of one context.

    For ``weighted_revlex`` only ``blocks[0]`` is used: the reverse-lex
    tie-break sequence.  For ``elimination_seven`` the blocks are
    ``(t, X, Psi, Phi)`` in that order; any of them may be empty.
    """

    kind: str
    variables: tuple[str, ...]
    weights: tuple[int, ...]
    blocks: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if self.kind not in (WEIGHTED_REVLEX, ELIMINATION_SEVEN):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if len(self.weights) != len(self.variables):
            raise ValueError("one weight per variable is required")
        flat = [v for block in self.blocks for v in block]
        if sorted(flat) != sorted(self.variables) or len(set(flat)) != len(flat):
            raise ValueError("every variable must appear in exactly one block")
        if self.kind == ELIMINATION_SEVEN and len(self.blocks) != 4:
            raise ValueError("the elimination order needs blocks (t, X, Psi, Phi)")
        if self.kind == WEIGHTED_REVLEX and len(self.blocks) != 1:
            raise ValueError("weighted reverse-lex takes a single sequence block")
        pos = {v: i for i, v in enumerate(self.variables)}
        object.__setattr__(self, "_pos", pos)
        object.__setattr__(
            self, "_block_idx", tuple(tuple(pos[v] for v in block) for block in self.blocks)
        )
        object.__setattr__(self, "key", self._make_key())
        object.__setattr__(self, "_hash", hash((self.kind, self.variables, self.weights, self.blocks)))

    def __hash__(self) -> int:
        return self._hash

    # -- construction helpers ---------------------------------------------

    @classmethod
    def weighted_revlex(cls, ctx: RingContext, sequence=None) -> "OrderSpec":
        seq = tuple(sequence) if sequence is not None else ctx.variables
        return cls(WEIGHTED_REVLEX, ctx.variables, ctx.weights, (seq,))

    @classmethod
    def elimination_seven(cls, ctx: RingContext, t, x, psi, phi) -> "OrderSpec":
        return cls(ELIMINATION_SEVEN, ctx.variables, ctx.weights, (tuple(t), tuple(x), tuple(psi), tuple(phi)))

    def block(self, name: str) -> tuple[str, ...]:
        if self.kind == WEIGHTED_REVLEX:
            return self.blocks[0] if name == "X" else ()
        return self.blocks[BLOCK_NAMES.index(name)]

    def weight_of(self, name: str) -> int:
        return self.weights[self._pos[name]]

    def check_context(self, ctx: RingContext) -> None:
        if ctx.variables != self.variables:
            raise ContextMismatch(f"order is over {self.variables}, monomial over {ctx.variables}")

    # -- sort key -----------------------------------------------------------

    def _make_key(self):
        w = self.weights
        mul = operator.mul
        if self.kind == WEIGHTED_REVLEX:
            rev = tuple(reversed(self._block_idx[0]))

            def key(e):
                return (sum(map(mul, e, w)),) + tuple(-e[i] for i in rev)

            return key
        t_idx, x_idx, psi_idx, phi_idx = self._block_idx
        free = tuple(i for i in range(len(w)) if i not in t_idx)
        free_w = tuple(w[i] for i in free)
        psi_rev = tuple(reversed(psi_idx))
        phi_rev = tuple(reversed(phi_idx))
        x_rev = tuple(reversed(x_idx))

        def key(e):
            return (
                (sum(e[i] for i in t_idx), sum(map(mul, (e[i] for i in free), free_w)), sum(e[i] for i in psi_idx))
                + tuple(-e[i] for i in psi_rev)
                + (sum(e[i] for i in phi_idx),)
                + tuple(-e[i] for i in phi_rev)
                + tuple(-e[i] for i in x_rev)
            )

        return key

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        if self.kind == WEIGHTED_REVLEX:
            blocks = {"sequence": list(self.blocks[0])}
        else:
            blocks = {name: list(b) for name, b in zip(BLOCK_NAMES, self.blocks)}
        return {
            "kind": self.kind,
            "blocks": blocks,
            "weights": {v: w for v, w in zip(self.variables, self.weights)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _revlex(u, v) -> int:
    """+1 if the rightmost nonzero entry of u - v is negative, -1 if positive, 0 if equal."""
    for a, b in zip(reversed(u), reversed(v)):
        if a != b:
            return 1 if a < b else -1
    return 0


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def compare(u: Monomial, v: Monomial, spec: OrderSpec) -> tuple[Cmp, ComparisonTrace]:
    """Compare two monomials tier by tier, reporting where the decision fell."""
    spec.check_context(u.ctx)
    spec.check_context(v.ctx)
    eu, ev = u.exponents, v.exponents
    pos = spec._pos

    def pick(e, block):
        return tuple(e[pos[x]] for x in block)

    if spec.kind == WEIGHTED_REVLEX:
        wu = sum(map(operator.mul, eu, spec.weights))
        wv = sum(map(operator.mul, ev, spec.weights))
        if wu != wv:
            return Cmp(_sign(wu - wv)), ComparisonTrace(2, wu, wv)
        seq = spec.blocks[0]
        au, av = pick(eu, seq), pick(ev, seq)
        r = _revlex(au, av)
        return Cmp(r), ComparisonTrace(7 if r else 0, au, av)

    t, x, psi, phi = spec.blocks
    du, dv = sum(pick(eu, t)), sum(pick(ev, t))
    if du != dv:
        return Cmp(_sign(du - dv)), ComparisonTrace(1, du, dv)
    t_pos = {pos[s] for s in t}
    wu = sum(e * w for i, (e, w) in enumerate(zip(eu, spec.weights)) if i not in t_pos)
    wv = sum(e * w for i, (e, w) in enumerate(zip(ev, spec.weights)) if i not in t_pos)
    if wu != wv:
        return Cmp(_sign(wu - wv)), ComparisonTrace(2, wu, wv)
    bu, bv = pick(eu, psi), pick(ev, psi)
    if sum(bu) != sum(bv):
        return Cmp(_sign(sum(bu) - sum(bv))), ComparisonTrace(3, sum(bu), sum(bv))
    r = _revlex(bu, bv)
    if r:
        return Cmp(r), ComparisonTrace(4, bu, bv)
    gu, gv = pick(eu, phi), pick(ev, phi)
    if sum(gu) != sum(gv):
        return Cmp(_sign(sum(gu) - sum(gv))), ComparisonTrace(5, sum(gu), sum(gv))
    r = _revlex(gu, gv)
    if r:
        return Cmp(r), ComparisonTrace(6, gu, gv)
    au, av = pick(eu, x), pick(ev, x)
    r = _revlex(au, av)
    return Cmp(r), ComparisonTrace(7 if r else 0, au, av)


def leading_exps(f: Polynomial, spec: OrderSpec) -> tuple:
    """Exponent tuple of the leading monomial (cached on the polynomial)."""
    cache = f._lead
    lm = cache.get(spec)
    if lm is None:
        if not f.terms:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        lm = max(f.terms, key=spec.key)
        cache[spec] = lm
    return lm


def leading_term(f: Polynomial, spec: OrderSpec) -> tuple[Monomial, object]:
    spec.check_context(f.ctx)
    lm = leading_exps(f, spec)
    return Monomial(f.ctx, lm), f.terms[lm]


def leading_monomial(f: Polynomial, spec: OrderSpec) -> Monomial:
    return leading_term(f, spec)[0]


def monic(f: Polynomial, spec: OrderSpec) -> Polynomial:
    lc = f.terms[leading_exps(f, spec)]
    if lc == 1:
        return f
    return f.scale(f.ctx.cdiv(1, lc))


def restricted_order(spec: OrderSpec, subcontext: RingContext) -> OrderSpec:
    """The order induced on a subring generated by a subset of the variables.

    When only the X block survives, the result is the plain weighted
    reverse-lex order on that block.
    """
    missing = [v for v in subcontext.variables if v not in spec._pos]
    if missing:
        raise NotASubcontext(f"{missing} are not variables of the order")
    for v, w in zip(subcontext.variables, subcontext.weights):
        if spec.weight_of(v) != w:
            raise NotASubcontext(f"weight of {v} differs: {w} vs {spec.weight_of(v)}")
    keep = set(subcontext.variables)
    blocks = tuple(tuple(v for v in block if v in keep) for block in spec.blocks)
    if spec.kind == ELIMINATION_SEVEN and not (blocks[0] or blocks[2] or blocks[3]):
        return OrderSpec(WEIGHTED_REVLEX, subcontext.variables, subcontext.weights, (blocks[1],))
    return OrderSpec(spec.kind, subcontext.variables, subcontext.weights, blocks)


def eliminates(spec: OrderSpec, drop) -> bool:
    """True when every monomial involving ``drop`` beats every monomial free of it.

    Only the t block of the seven-tier order has this property (tier 1),
    and only when the whole block is dropped.
    """
    drop = set(drop)
    if not drop:
        return True
    if spec.kind != ELIMINATION_SEVEN:
        return False
    return drop == set(spec.blocks[0])
