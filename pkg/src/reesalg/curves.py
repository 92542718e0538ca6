"""Monomial curves in A^4 with exponents in arithmetic progression.

The curve is ``X_i = T^(m_i)`` with ``m_i = m0 + i*d`` for i = 0..3.
Writing ``m0 = 3a + b`` with ``a >= 1`` and ``1 <= b <= 3``, the defining
prime of the curve is generated by the binomials

    phi(i, j) = X_i X_j - X_eps(i,j) X_(i+j-eps(i,j)),   i, j in [1, 2]
    psi(b, j) = X_(b+j) X_3^a - X_j X_0^(a+d),           j in [0, 3-b]

where ``eps(i, j) = min(i + j, 3)``.  Out-of-range indices give zero.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .algebra import Polynomial, RingContext, substitute
from .errors import ContextMismatch, NotCoprime, NotMinimal, OutOfRange
from .orders import OrderSpec
from .report import VerificationReport

P = 3
X_NAMES = ("X1", "X2", "X3", "X0")


def psi_name(b: int, j: int) -> str:
    return f"P[{b},{j}]"


def phi_name(i: int, j: int) -> str:
    i, j = sorted((i, j))
    return f"F[{i},{j}]"


@dataclass(frozen=True)
class CurveParams:
    m0: int
    d: int
    a: int
    b: int
    m: tuple[int, int, int, int]

    def weight_of_x(self, i: int) -> int:
        return self.m[i]

    def to_dict(self) -> dict:
        return {"m0": self.m0, "d": self.d, "a": self.a, "b": self.b, "m": list(self.m)}


def _in_semigroup(n: int, gens) -> bool:
    reach = [False] * (n + 1)
    reach[0] = True
    for k in range(1, n + 1):
        reach[k] = any(g <= k and reach[k - g] for g in gens)
    return reach[n]


def derive_params(m0: int, d: int) -> CurveParams:
    if m0 < 1 or d < 1:
        raise OutOfRange(f"need m0 >= 1 and d >= 1, got m0={m0}, d={d}")
    if gcd(m0, d) != 1:
        raise NotCoprime(f"gcd(m0, d) = {gcd(m0, d)} for m0={m0}, d={d}")
    a, b = divmod(m0 - 1, P)
    b += 1
    m = tuple(m0 + i * d for i in range(P + 1))
    if a < 1:
        raise NotMinimal(f"m0={m0} gives a=0: {m} cannot generate the semigroup minimally")
    for i, mi in enumerate(m):
        if _in_semigroup(mi, [mj for j, mj in enumerate(m) if j != i]):
            raise NotMinimal(f"{mi} lies in the semigroup generated by the other exponents of {m}")
    return CurveParams(m0, d, a, b, m)


def epsilon(i: int, j: int) -> int:
    return i + j if i + j < P else P


# -- rings -------------------------------------------------------------------


@lru_cache(maxsize=None)
def ring_R(params: CurveParams) -> RingContext:
    """K[X1, X2, X3, X0] with weights m_i and the weighted reverse-lex order."""
    ctx = RingContext(X_NAMES, tuple(params.m[int(v[1])] for v in X_NAMES))
    return ctx.with_order(OrderSpec.weighted_revlex(ctx))


@lru_cache(maxsize=None)
def ring_Rt(params: CurveParams) -> RingContext:
    """K[X1, X2, X3, X0, t]: the target of the kernel oracle."""
    ctx = RingContext(X_NAMES + ("t",), tuple(params.m[int(v[1])] for v in X_NAMES) + (1,))
    return ctx.with_order(OrderSpec.weighted_revlex(ctx, ("t",) + X_NAMES))


@lru_cache(maxsize=None)
def ring_T(with_t: bool = False) -> RingContext:
    return RingContext(("T", "t") if with_t else ("T",))


def x_var(k: int, ctx: RingContext) -> Polynomial:
    """X_k, or zero when k is outside [0, 3]."""
    return ctx.var(f"X{k}") if 0 <= k <= P else ctx.zero()


# -- generators --------------------------------------------------------------


def phi_gen(i: int, j: int, params: CurveParams, ctx: RingContext | None = None) -> Polynomial:
    ctx = ctx or ring_R(params)
    if not (1 <= i <= P - 1 and 1 <= j <= P - 1):
        return ctx.zero()
    e = epsilon(i, j)
    return x_var(i, ctx) * x_var(j, ctx) - x_var(e, ctx) * x_var(i + j - e, ctx)


def psi_gen(b: int, j: int, params: CurveParams, ctx: RingContext | None = None) -> Polynomial:
    ctx = ctx or ring_R(params)
    if not 0 <= j <= P - b:
        return ctx.zero()
    a, d = params.a, params.d
    return x_var(b + j, ctx) * x_var(P, ctx) ** a - x_var(j, ctx) * x_var(0, ctx) ** (a + d)


def patil_basis(params: CurveParams) -> list[Polynomial]:
    gens = [phi_gen(1, 1, params), phi_gen(1, 2, params), phi_gen(2, 2, params)]
    gens += [psi_gen(params.b, j, params) for j in range(0, P - params.b + 1)]
    out: list[Polynomial] = []
    for g in gens:
        if g and g not in out:
            out.append(g)
    return out


# -- substitution maps -----------------------------------------------------------


def eta(f: Polynomial, params: CurveParams) -> Polynomial:
    """X_i -> T^(m_i), keeping t when the source ring has it."""
    has_t = "t" in f.ctx
    target = ring_T(has_t)
    T = target.var("T")
    assignment = {}
    for v in f.ctx.variables:
        if v == "t":
            assignment[v] = target.var("t")
        elif v in X_NAMES:
            assignment[v] = T ** params.m[int(v[1])]
        else:
            raise ContextMismatch(f"eta is only defined on X variables and t, got {v}")
    return substitute(f, assignment)


def _fiber_image(name: str, params: CurveParams, target: RingContext) -> Polynomial | None:
    t = target.var("t")
    if name.startswith("F["):
        i, j = (int(x) for x in name[2:-1].split(","))
        return phi_gen(i, j, params, target) * t
    if name.startswith("P["):
        bb, j = (int(x) for x in name[2:-1].split(","))
        if bb != params.b:
            return None
        return psi_gen(bb, j, params, target) * t
    return None


def kernel_oracle_phi_b(f: Polynomial, params: CurveParams) -> Polynomial:
    """Image under X_i -> X_i, Phi(i,j) -> phi(i,j) t, Psi(b,j) -> psi(b,j) t, t -> t."""
    target = ring_Rt(params)
    assignment = {}
    for v in f.ctx.variables:
        if v in X_NAMES or v == "t":
            assignment[v] = target.var(v)
            continue
        img = _fiber_image(v, params, target)
        if img is None:
            raise ContextMismatch(f"{v} is not a variable of R_b[t] for b={params.b}")
        assignment[v] = img
    return substitute(f, assignment)


def composed_oracle(f: Polynomial, params: CurveParams) -> Polynomial:
    """The kernel oracle followed by X_i -> T^(m_i): lands in K[T, t].

    Every fiber variable goes to zero here (eta kills phi and psi), so a zero
    image only says the X-part vanishes; membership needs the first stage.
    """
    return eta(kernel_oracle_phi_b(f, params), params)


def in_kernel(f: Polynomial, params: CurveParams) -> bool:
    """Membership in E_b: the phi_b image vanishes, and so does its eta image."""
    image = kernel_oracle_phi_b(f, params)
    return image.is_zero() and eta(image, params).is_zero()


# -- verification ------------------------------------------------------------


def verify_patil_groebner(params: CurveParams, gens: list[Polynomial] | None = None) -> VerificationReport:
    """Check that the Patil generators form a Groebner basis under weighted reverse-lex.

    The order is the weighted reverse-lex order with X0 last.  A failure
    is reported as an order-convention mismatch, not a mathematical one.
    """
    from .groebner import is_groebner_basis

    start = time.perf_counter()
    gens = gens if gens is not None else patil_basis(params)
    order = ring_R(params).default_order
    ok, certs = is_groebner_basis(gens, order)
    eta_ok = all(not eta(g, params) for g in gens)
    report = VerificationReport(
        target="patil-gb",
        params=params.to_dict(),
        passed=ok and eta_ok,
        certificates=[c.to_dict() for c in certs],
        details={"generators": [str(g) for g in gens], "order": order.to_dict(), "eta_vanishes": eta_ok},
    )
    if not ok:
        report.notes.append("order-convention mismatch: generators are not a Groebner basis under this order")
    report.wall_time_ms = (time.perf_counter() - start) * 1000
    return report
