"""Jacobian criterion at the fiber prime of the Rees algebra.

The fiber prime is generated by every variable of ``R_b`` except one,
``theta`` (``Phi(2,2)`` for b = 1, 2 and ``Psi(3,0)`` for b = 3).  Modulo
that prime the residue ring is ``K[theta]``, so the Jacobian of any
generating set of ``E_b`` reduces to a matrix of univariate polynomials
whose rank is taken over ``K(theta)``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import Polynomial, RingContext
from .curves import CurveParams, phi_name, psi_name
from .errors import NotContained
from .groebner import DEFAULT_MAX_STEPS, divide, monomial_ideal_dimension
from .orders import OrderSpec, leading_monomial
from .rees import build_ambient, compute_E_b, hat_E_b


@dataclass(frozen=True)
class FiberPrime:
    theta: str
    generators: tuple[str, ...]
    ring: RingContext

    def contains(self, f: Polynomial) -> bool:
        """Every term involves some generator variable (so no constant or pure theta power)."""
        ti = f.ctx.index(self.theta)
        return all(any(e for k, e in enumerate(exps) if k != ti) for exps in f.terms)


@dataclass
class JacobianReport:
    b: int
    params: dict
    nonzero_columns: list[str]
    rank: int
    codim: int
    verdict: str
    seeds: list[int]
    residue_matrix: list[list[str]]
    columns: list[str] = field(default_factory=list)
    rank_numeric: int = 0
    rank_printed: int | None = None
    columns_by_scan: list[str] = field(default_factory=list)
    wall_time_ms: float | None = None

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "schema": "rees-report/1",
            "b": self.b,
            "params": self.params,
            "nonzero_columns": self.nonzero_columns,
            "rank": self.rank,
            "codim": self.codim,
            "verdict": self.verdict,
            "seeds": self.seeds,
            "residue_matrix": self.residue_matrix,
            "columns": self.columns,
            "rank_numeric": self.rank_numeric,
            "rank_printed_families": self.rank_printed,
            "columns_by_scan": self.columns_by_scan,
            "wall_time_ms": round(self.wall_time_ms, 3) if timing and self.wall_time_ms is not None else None,
        }


def fiber_prime(params: CurveParams) -> FiberPrime:
    rc = build_ambient(params)
    theta = psi_name(3, 0) if params.b == 3 else phi_name(2, 2)
    gens = tuple(v for v in rc.ring_Rb.variables if v != theta)
    return FiberPrime(theta, gens, rc.ring_Rb)


def _theta_ring(theta: str) -> RingContext:
    return RingContext((theta,))


def jacobian_mod_prime(gens: Sequence[Polynomial], prime: FiberPrime) -> list[list[Polynomial]]:
    """Rows of partial derivatives with every prime generator set to zero.

    Columns follow the variable order of the generators' ring.
    """
    univ = _theta_ring(prime.theta)
    rows = []
    for g in gens:
        if not prime.contains(g):
            raise NotContained(f"{g} is not in the fiber prime")
        ctx = g.ctx
        ti = ctx.index(prime.theta)
        row = []
        for v in ctx.variables:
            df = g.diff(v)
            kept = {}
            for exps, c in df.terms.items():
                if not any(e for k, e in enumerate(exps) if k != ti):
                    kept[(exps[ti],)] = c
            row.append(Polynomial(univ, kept))
        rows.append(row)
    return rows


def nonzero_columns(matrix: Sequence[Sequence[Polynomial]], columns: Sequence[str]) -> list[str]:
    return [v for k, v in enumerate(columns) if any(row[k] for row in matrix)]


def nonzero_columns_by_scan(gens: Sequence[Polynomial], prime: FiberPrime) -> list[str]:
    """Columns whose variable zeta appears in some term ``k * zeta * theta^l``."""
    if not gens:
        return []
    ctx = gens[0].ctx
    ti = ctx.index(prime.theta)
    hit = set()
    for g in gens:
        for exps in g.terms:
            others = [(k, e) for k, e in enumerate(exps) if k != ti and e]
            if len(others) == 1 and others[0][1] == 1:
                hit.add(others[0][0])
    return [v for k, v in enumerate(ctx.variables) if k in hit]


def _exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    order = _univariate_order(f.ctx)
    (q,), r = divide(f, [g], order)
    if r:
        raise ArithmeticError(f"inexact division of {f} by {g}")
    return q


def _univariate_order(ctx: RingContext) -> OrderSpec:
    return OrderSpec.weighted_revlex(ctx)


def rank_over_function_field(matrix: Sequence[Sequence[Polynomial]]) -> int:
    """Rank over K(theta) by fraction-free (Bareiss) elimination in K[theta]."""
    rows = [list(r) for r in matrix if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    one = rows[0][0].ctx.one()
    prev = one
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            lead = rows[i][col]
            for k in range(col, ncols):
                val = p * rows[i][k] - lead * rows[rank][k]
                rows[i][k] = _exact_quotient(val, prev) if val else val
        prev = p
        rank += 1
        col += 1
    return rank


def _rational_rank(mat: list[list[Fraction]]) -> int:
    rows = [list(r) for r in mat]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col] / rows[rank][col]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _evaluate(f: Polynomial, x: Fraction) -> Fraction:
    return sum((Fraction(c) * x ** e[0] for e, c in f.terms.items()), Fraction(0))


def rank_at_random_points(matrix: Sequence[Sequence[Polynomial]], seed: int, points: int = 3) -> tuple[int, list[Fraction]]:
    """Max rank of the matrix after substituting seeded random rationals for theta."""
    rng = random.Random(seed)
    xs = [Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)) for _ in range(points)]
    if not matrix:
        return 0, xs
    best = 0
    for x in xs:
        best = max(best, _rational_rank([[_evaluate(f, x) for f in row] for row in matrix]))
    return best, xs


def codimension(params: CurveParams, gb: Sequence[Polynomial]) -> int:
    """Height of E_b: number of variables minus the dimension of its leading-monomial ideal."""
    rc = build_ambient(params)
    lms = [leading_monomial(g, rc.order_Rb) for g in gb]
    return rc.ring_Rb.nvars - monomial_ideal_dimension(lms, rc.ring_Rb)


def smoothness_verdict(params: CurveParams, seed: int = 0, max_steps: int | None = DEFAULT_MAX_STEPS) -> JacobianReport:
    start = time.perf_counter()
    rc = build_ambient(params)
    gb = compute_E_b(params, max_steps=max_steps)
    prime = fiber_prime(params)
    columns = list(rc.ring_Rb.variables)
    matrix = jacobian_mod_prime(gb, prime)
    rank = rank_over_function_field(matrix)
    rank_num, _ = rank_at_random_points(matrix, seed)
    printed = hat_E_b(params)
    rank_printed = rank_over_function_field(jacobian_mod_prime(printed, prime))
    codim = codimension(params, gb)
    report = JacobianReport(
        b=params.b,
        params=params.to_dict(),
        nonzero_columns=nonzero_columns(matrix, columns),
        rank=rank,
        codim=codim,
        verdict="regular" if rank == codim else "not_regular",
        seeds=[seed],
        residue_matrix=[[str(f) for f in row] for row in matrix],
        columns=columns,
        rank_numeric=rank_num,
        rank_printed=rank_printed,
        columns_by_scan=nonzero_columns_by_scan(gb, prime),
    )
    report.wall_time_ms = (time.perf_counter() - start) * 1000
    return report
