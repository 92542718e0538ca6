"""Rees algebra presentation of the monomial curve and its defining ideal.

The fiber variables are ``Psi(b, j)`` (printed ``P[b,j]``) for the psi
binomials and ``Phi(i, j)`` (printed ``F[i,j]``) for the phi binomials.
``R_b`` is the ring on the X and fiber variables, ``S = R_b[t]``.  The
ideal ``a_b`` of ``S`` is generated by ``t*phi(i,j) - Phi(i,j)`` and
``t*psi(b,l) - Psi(b,l)``; its intersection with ``R_b`` is the defining
ideal ``E_b`` of the Rees algebra.

All family constructors apply the zero conventions: X_k = 0 outside
[0, 3], Phi(i, j) = 0 unless i, j are both in [1, 2], Psi(b, j) = 0
outside [0, 3-b], and Phi is symmetric.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .algebra import Polynomial, RingContext
from .curves import (
    P,
    X_NAMES,
    CurveParams,
    epsilon,
    phi_gen,
    phi_name,
    psi_gen,
    psi_name,
    ring_R,
    x_var,
)
from .groebner import (
    DEFAULT_MAX_STEPS,
    IdealPresentation,
    buchberger,
    eliminate,
    minimalize_and_reduce,
)
from .orders import OrderSpec, restricted_order

PHI_NAMES = (phi_name(2, 2), phi_name(1, 2), phi_name(1, 1))


@dataclass(frozen=True)
class ReesContext:
    params: CurveParams
    ring_R: RingContext
    ring_Rb: RingContext
    ring_S: RingContext
    order_S: OrderSpec
    order_Rb: OrderSpec
    order_R: OrderSpec

    @property
    def psi_names(self) -> tuple[str, ...]:
        b = self.params.b
        return tuple(psi_name(b, j) for j in range(0, P - b + 1))

    @property
    def fiber_names(self) -> tuple[str, ...]:
        return self.psi_names + PHI_NAMES

    def to_Rb(self, f: Polynomial) -> Polynomial:
        return f.recontext(self.ring_Rb)

    def to_S(self, f: Polynomial) -> Polynomial:
        return f.recontext(self.ring_S)


@lru_cache(maxsize=None)
def build_ambient(params: CurveParams) -> ReesContext:
    a, b, m = params.a, params.b, params.m
    psis = tuple(psi_name(b, j) for j in range(0, P - b + 1))
    weights = {f"X{i}": m[i] for i in range(4)}
    for j in range(0, P - b + 1):
        weights[psi_name(b, j)] = a * m[3] + m[b + j]
    for i, j in ((2, 2), (1, 2), (1, 1)):
        weights[phi_name(i, j)] = m[i] + m[j]
    weights["t"] = 1
    s_vars = ("t",) + X_NAMES + psis + PHI_NAMES
    ring_S = RingContext(s_vars, tuple(weights[v] for v in s_vars))
    order_S = OrderSpec.elimination_seven(ring_S, ("t",), X_NAMES, psis, PHI_NAMES)
    ring_Rb = ring_S.subcontext(s_vars[1:])
    order_Rb = restricted_order(order_S, ring_Rb)
    r = ring_R(params)
    order_R = restricted_order(order_S, r.subcontext(X_NAMES))
    return ReesContext(
        params,
        r,
        ring_Rb.with_order(order_Rb),
        ring_S.with_order(order_S),
        order_S,
        order_Rb,
        order_R,
    )


@dataclass(frozen=True)
class FamilyName:
    """A family tag with its index tuple, e.g. ``FamilyName("A", (1, 0))`` for A(1;b,0)."""

    tag: str
    indices: tuple[int, ...] = ()

    TAGS = ("P", "PPsi", "M", "L", "B", "A", "D", "Q")

    def __post_init__(self) -> None:
        if self.tag not in self.TAGS:
            raise ValueError(f"unknown family tag {self.tag!r}")
        object.__setattr__(self, "indices", tuple(self.indices))

    def label(self, b: int) -> str:
        idx = self.indices
        if self.tag == "PPsi":
            return f"P(Psi({b},{idx[0]}))"
        if self.tag == "A":
            return f"A({idx[0]};{b},{idx[1]})"
        if self.tag in ("M", "Q"):
            return f"{self.tag}({b},{idx[0]})"
        if self.tag == "D":
            return "D"
        return f"{self.tag}({','.join(map(str, idx))})"


class Families:
    """Constructors for the explicit polynomials, all in ``S``."""

    def __init__(self, rc: ReesContext):
        self.rc = rc
        self.ctx = rc.ring_S
        self.a = rc.params.a
        self.b = rc.params.b
        self.d = rc.params.d

    # -- building blocks ------------------------------------------------------

    def X(self, k: int) -> Polynomial:
        return x_var(k, self.ctx)

    def Phi(self, i: int, j: int) -> Polynomial:
        if 1 <= i <= 2 and 1 <= j <= 2:
            return self.ctx.var(phi_name(i, j))
        return self.ctx.zero()

    def Psi(self, j: int) -> Polynomial:
        if 0 <= j <= P - self.b:
            return self.ctx.var(psi_name(self.b, j))
        return self.ctx.zero()

    @property
    def t(self) -> Polynomial:
        return self.ctx.var("t")

    def phi(self, i: int, j: int) -> Polynomial:
        return phi_gen(i, j, self.rc.params, self.ctx)

    def psi(self, j: int) -> Polynomial:
        return psi_gen(self.b, j, self.rc.params, self.ctx)

    # -- families ---------------------------------------------------------------

    def P(self, i: int, j: int) -> Polynomial:
        if not (1 <= i <= 2 and 1 <= j <= 2):
            return self.ctx.zero()
        return self.t * self.phi(i, j) - self.Phi(i, j)

    def PPsi(self, l: int) -> Polynomial:
        if not 0 <= l <= P - self.b:
            return self.ctx.zero()
        return self.t * self.psi(l) - self.Psi(l)

    def D(self) -> Polynomial:
        return self.phi(1, 1) * self.Phi(1, 2) - self.phi(1, 2) * self.Phi(1, 1)

    def B(self, i: int, j: int) -> Polynomial:
        """phi(i,j) Psi(b,3-b) - psi(b,3-b) Phi(i,j)."""
        if not (1 <= i <= 2 and 1 <= j <= 2):
            return self.ctx.zero()
        top = P - self.b
        return self.phi(i, j) * self.Psi(top) - self.psi(top) * self.Phi(i, j)

    def B_printed(self, i: int, j: int) -> Polynomial:
        """Variant with cofactor X3^a X_b - X0^(a+d+1) on Phi(i,j)."""
        if not (1 <= i <= 2 and 1 <= j <= 2):
            return self.ctx.zero()
        a, b, d = self.a, self.b, self.d
        cof = self.X(3) ** a * self.X(b) - self.X(0) ** (a + d + 1)
        return self.phi(i, j) * self.Psi(P - b) - cof * self.Phi(i, j)

    def A(self, i: int, j: int) -> Polynomial:
        a, b, d = self.a, self.b, self.d
        if not (1 <= i <= 3 and 0 <= j <= 2 - b and b != 3):
            return self.ctx.zero()
        e = epsilon(i, b + j)
        X, Phi = self.X, self.Phi
        return (
            X(i) * self.Psi(j)
            - X(b + i + j - e) * self.Psi(e - b)
            - X(3) ** a * Phi(i, b + j)
            + X(0) ** (a + d) * (Phi(i, j) - Phi(b + i + j - 3, 3 - b))
        )

    def L(self, i: int) -> Polynomial:
        if not 0 <= i <= 1:
            return self.ctx.zero()
        X, Phi = self.X, self.Phi
        return X(i) * Phi(2, 2) - X(i + 1) * Phi(1, 2) + X(i + 2) * Phi(1, 1)

    def Q(self, i: int) -> Polynomial:
        a, b, d = self.a, self.b, self.d
        X, Phi, Psi = self.X, self.Phi, self.Psi
        if b == 1 and i == 1:
            return Psi(0) * Phi(2, 2) + Psi(2) * Phi(1, 1) - Psi(1) * Phi(1, 2)
        if b == 1 and i == 2:
            return (
                Psi(1) ** 2
                - Psi(2) * Psi(0)
                - X(3) ** (a - 1) * Psi(2) * Phi(2, 2)
                + X(0) ** (a + d - 1) * Psi(0) * Phi(1, 1)
                - X(3) ** (a - 1) * X(0) ** (a + d - 1) * (Phi(1, 2) ** 2 - Phi(2, 2) * Phi(1, 1))
            )
        if b == 2 and i == 1:
            # the printed exponent "a+h-1" on the sixth term is read as a+d-1
            return (
                Psi(0) ** 2 * Phi(2, 2)
                - X(3) ** (a - 1) * Psi(1) * Phi(2, 2) ** 2
                - Psi(1) * Psi(0) * Phi(1, 2)
                - X(3) ** (a - 1) * X(0) ** (a + d - 1) * Phi(1, 2) ** 3
                + Psi(1) ** 2 * Phi(1, 1)
                + X(3) ** (a - 1) * X(0) ** (a + d - 1) * Phi(2, 2) * Phi(1, 2) * Phi(1, 1)
                + X(0) ** (a + d - 1) * Psi(0) * Phi(1, 1) ** 2
            )
        return self.ctx.zero()

    def M(self, i: int) -> Polynomial:
        a, b, d = self.a, self.b, self.d
        if not (0 <= i <= 2 - b and b != 3):
            return self.ctx.zero()
        X, Phi, Psi, t = self.X, self.Phi, self.Psi, self.t
        sign = 1 if (i + 1) % 2 == 0 else -1
        return (
            t * X(0) ** (a + d + 1) * Psi(i)
            + Psi(0) * Psi(i)
            - t * X(3) ** (a - 1) * X(1 + b + i) * X(b - 1) * Psi(P - b)
            - t * X(3) ** (2 * a) * Phi(b, b + i)
            + sign * t * X(3) ** (a - 1) * X(0) ** (a + d) * X(3 * b + 3 * i - 3) * Phi(3 - b - i, 3 - b - i)
        )

    def get(self, name: FamilyName) -> Polynomial:
        fn = getattr(self, name.tag)
        return fn(*name.indices)


def paper_family(name: FamilyName, params: CurveParams) -> Polynomial:
    return Families(build_ambient(params)).get(name)


def _family_index(b: int) -> dict[str, list[tuple[int, ...]]]:
    """Declared index ranges of each family (P and B over unordered pairs)."""
    pairs = [(1, 1), (1, 2), (2, 2)]
    ranges = {
        "P": pairs,
        "PPsi": [(l,) for l in range(0, P - b + 1)],
        "M": [(i,) for i in range(0, 3 - b)] if b != 3 else [],
        "L": [(0,), (1,)],
        "B": pairs,
        "A": [(i, j) for i in range(1, 4) for j in range(0, 3 - b)] if b != 3 else [],
        "D": [()],
        "Q": {1: [(1,), (2,)], 2: [(1,)]}.get(b, []),
    }
    return ranges


def family_members(params: CurveParams, tags) -> list[tuple[FamilyName, Polynomial]]:
    """All nonzero, pairwise distinct members of the given families, in tag order."""
    fam = Families(build_ambient(params))
    ranges = _family_index(params.b)
    out: list[tuple[FamilyName, Polynomial]] = []
    seen = set()
    for tag in tags:
        for idx in ranges[tag]:
            name = FamilyName(tag, idx)
            f = fam.get(name)
            if f and f not in seen:
                seen.add(f)
                out.append((name, f))
    return out


def rees_generators(params: CurveParams) -> list[Polynomial]:
    return [f for _, f in family_members(params, ("P", "PPsi"))]


HAT_A_TAGS = ("P", "PPsi", "M", "L", "B", "A", "D", "Q")
HAT_E_TAGS = ("A", "B", "D", "L", "Q")
HAT_Q_TAGS = ("L", "B")


def hat_a_b(params: CurveParams) -> list[Polynomial]:
    return [f for _, f in family_members(params, HAT_A_TAGS)]


def hat_E_b(params: CurveParams) -> list[Polynomial]:
    """The explicit generators of E_b (A, B, D, L, Q families) in R_b."""
    rc = build_ambient(params)
    return [rc.to_Rb(f) for _, f in family_members(params, HAT_E_TAGS)]


def hat_Q_b(params: CurveParams) -> list[Polynomial]:
    """Generators P(i,j), P(Psi(b,3-b)), L(i), B(i,j), D of the smaller ideal Q_b."""
    fam = Families(build_ambient(params))
    out = [fam.P(1, 1), fam.P(1, 2), fam.P(2, 2), fam.PPsi(P - params.b)]
    out += [fam.L(0), fam.L(1), fam.B(1, 1), fam.B(1, 2), fam.B(2, 2), fam.D()]
    return out


def q_generators(params: CurveParams) -> list[Polynomial]:
    fam = Families(build_ambient(params))
    return [fam.P(1, 1), fam.P(1, 2), fam.P(2, 2), fam.PPsi(P - params.b)]


def _shuffled(polys: list[Polynomial], seed: int | None) -> list[Polynomial]:
    polys = list(polys)
    if seed is not None:
        random.Random(seed).shuffle(polys)
    return polys


def eliminate_t(gens: list[Polynomial], rc: ReesContext, strategy: str = "normal",
                max_steps: int | None = DEFAULT_MAX_STEPS) -> tuple[list[Polynomial], list[Polynomial]]:
    """GB of the ideal in S, and the reduced GB of its intersection with R_b."""
    gb = buchberger(IdealPresentation(tuple(gens), rc.order_S), strategy, max_steps)
    part = [rc.to_Rb(g) for g in eliminate(gb, {"t"}, rc.order_S)]
    return gb, minimalize_and_reduce(part, rc.order_Rb, check=False)


@lru_cache(maxsize=None)
def _compute_E_b_cached(params: CurveParams, seed: int | None, strategy: str, max_steps: int | None):
    rc = build_ambient(params)
    return eliminate_t(_shuffled(rees_generators(params), seed), rc, strategy, max_steps)


def compute_a_b_gb(params: CurveParams, seed: int | None = None, strategy: str = "normal",
                   max_steps: int | None = DEFAULT_MAX_STEPS) -> list[Polynomial]:
    return list(_compute_E_b_cached(params, seed, strategy, max_steps)[0])


def compute_E_b(params: CurveParams, seed: int | None = None, strategy: str = "normal",
                max_steps: int | None = DEFAULT_MAX_STEPS) -> list[Polynomial]:
    """Reduced Groebner basis of E_b in R_b, by eliminating t from a_b."""
    return list(_compute_E_b_cached(params, seed, strategy, max_steps)[1])


@lru_cache(maxsize=None)
def _compute_q_b_cached(params: CurveParams, seed: int | None, max_steps: int | None):
    rc = build_ambient(params)
    return eliminate_t(_shuffled(q_generators(params), seed), rc, max_steps=max_steps)


def compute_q_b(params: CurveParams, seed: int | None = None,
                max_steps: int | None = DEFAULT_MAX_STEPS) -> list[Polynomial]:
    """Reduced Groebner basis of q_b = Q_b intersected with R_b."""
    return list(_compute_q_b_cached(params, seed, max_steps)[1])
