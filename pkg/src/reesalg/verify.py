"""Verification targets for the Groebner and structural claims about E_b.

Each target returns a :class:`VerificationReport`; a failed claim is
report content, never an exception.  Targets that do not apply to the
given ``b`` come back as skipped reports.
"""

from __future__ import annotations

import time
from typing import Callable

from .algebra import Polynomial
from .curves import CurveParams, in_kernel, verify_patil_groebner
from .groebner import (
    DEFAULT_MAX_STEPS,
    IdealPresentation,
    divide,
    ideal_equality,
    is_groebner_basis,
    minimalize,
    monomial_ideal_dimension,
)
from .orders import OrderSpec, leading_monomial
from .report import VerificationReport
from .rees import (
    HAT_A_TAGS,
    Families,
    FamilyName,
    build_ambient,
    compute_E_b,
    compute_q_b,
    family_members,
    hat_E_b,
    q_generators,
    rees_generators,
)

TARGETS = ("rees-gb", "q-gb", "q-minimal", "e3-basis", "e-basis", "b-identity", "linear-type", "patil-gb")


def _lm_strings(polys, order: OrderSpec) -> list[str]:
    return sorted({str(leading_monomial(g, order)) for g in polys})


def _lm_diff(computed, printed, order: OrderSpec) -> list[str]:
    got, want = set(_lm_strings(computed, order)), set(_lm_strings(printed, order))
    return [f"+{m}" for m in sorted(got - want)] + [f"-{m}" for m in sorted(want - got)]


def _oracle_failures(named: list[tuple[str, Polynomial]], params: CurveParams) -> list[str]:
    return [label for label, f in named if not in_kernel(f, params)]


def _skip(target: str, params: CurveParams, why: str) -> VerificationReport:
    return VerificationReport(target, params.to_dict(), True, skipped=True, notes=[why])


def _fiber_degree(f: Polynomial, fiber: set[str]) -> int:
    idx = [k for k, v in enumerate(f.ctx.variables) if v in fiber]
    return max((sum(e[k] for k in idx) for e in f.terms), default=0)


# -- targets -----------------------------------------------------------------------


def check_rees_gb(params: CurveParams, max_steps: int | None = DEFAULT_MAX_STEPS) -> VerificationReport:
    """The explicit family set is a Groebner basis of a_b and generates the same ideal."""
    rc = build_ambient(params)
    members = family_members(params, HAT_A_TAGS)
    named = [(n.label(params.b), f) for n, f in members]
    flagged = [lab for lab in _oracle_failures(named, params) if lab.startswith("M(")]
    other_bad = [lab for lab in _oracle_failures(named, params) if not lab.startswith("M(")]
    kept = [f for n, f in members if n.label(params.b) not in flagged]
    ok, certs = is_groebner_basis(kept, rc.order_S)
    eq = ideal_equality(IdealPresentation(tuple(kept), rc.order_S),
                        IdealPresentation(tuple(rees_generators(params)), rc.order_S), max_steps)
    report = VerificationReport(
        "rees-gb", params.to_dict(), ok and bool(eq) and not other_bad,
        certificates=[c.to_dict() for c in certs if not c.coprime_skipped],
        ideal_equality=eq.to_dict(),
        details={
            "members": [lab for lab, _ in named],
            "oracle_failures": other_bad,
            "m_flagged": flagged,
            "is_groebner_basis": ok,
            "coprime_pairs_skipped": sum(c.coprime_skipped for c in certs),
        },
    )
    if flagged:
        report.notes.append(f"M members {flagged} fail the kernel oracle and were left out of the basis check")
        e_eq = check_e_basis(params, max_steps)
        report.details["e_basis_with_m_flagged"] = e_eq.passed
        report.passed = report.passed and e_eq.passed
    return report


def check_q_gb(params: CurveParams, max_steps: int | None = DEFAULT_MAX_STEPS) -> VerificationReport:
    """{P(i,j), P(Psi(b,3-b)), L, B, D} is a Groebner basis of the ideal its P-members generate."""
    rc = build_ambient(params)
    fam = Families(rc)
    names = [FamilyName("P", (1, 1)), FamilyName("P", (1, 2)), FamilyName("P", (2, 2)),
             FamilyName("PPsi", (3 - params.b,)), FamilyName("L", (0,)), FamilyName("L", (1,)),
             FamilyName("B", (1, 1)), FamilyName("B", (1, 2)), FamilyName("B", (2, 2)), FamilyName("D")]
    polys = [fam.get(n) for n in names]
    ok, certs = is_groebner_basis(polys, rc.order_S)
    eq = ideal_equality(IdealPresentation(tuple(polys), rc.order_S),
                        IdealPresentation(tuple(q_generators(params)), rc.order_S), max_steps)
    bad = _oracle_failures([(n.label(params.b), f) for n, f in zip(names, polys)], params)
    return VerificationReport(
        "q-gb", params.to_dict(), ok and bool(eq) and not bad,
        certificates=[c.to_dict() for c in certs if not c.coprime_skipped],
        ideal_equality=eq.to_dict(),
        details={"members": [n.label(params.b) for n in names], "oracle_failures": bad, "is_groebner_basis": ok},
    )


def _printed_minimal(params: CurveParams) -> tuple[list[str], list[Polynomial]]:
    rc = build_ambient(params)
    fam = Families(rc)
    names = [FamilyName("L", (0,)), FamilyName("L", (1,)),
             FamilyName("B", (1, 1)), FamilyName("B", (1, 2)), FamilyName("B", (2, 2))]
    return [n.label(params.b) for n in names], [rc.to_Rb(fam.get(n)) for n in names]


def _d_relation(params: CurveParams) -> dict:
    """D = X0 L(1) - X1 L(0), and the remainder of D on division by {L(0), L(1)}."""
    rc = build_ambient(params)
    fam = Families(rc)
    D, L0, L1 = (rc.to_Rb(f) for f in (fam.D(), fam.L(0), fam.L(1)))
    X0, X1 = rc.ring_Rb.var("X0"), rc.ring_Rb.var("X1")
    _, r = divide(D, [L0, L1], rc.order_Rb)
    kept = minimalize([L0, L1, D], rc.order_Rb)
    return {
        "identity_holds": D == X0 * L1 - X1 * L0,
        "division_remainder": str(r),
        "lm_D": str(leading_monomial(D, rc.order_Rb)),
        "lm_L": [str(leading_monomial(g, rc.order_Rb)) for g in (L0, L1)],
        "minimalize_keeps_D": any(g == D for g in kept),
    }


def _minimal_basis_report(target: str, params: CurveParams, computed: list[Polynomial],
                          max_steps: int | None) -> VerificationReport:
    rc = build_ambient(params)
    labels, printed = _printed_minimal(params)
    eq = ideal_equality(IdealPresentation(tuple(computed), rc.order_Rb),
                        IdealPresentation(tuple(printed), rc.order_Rb), max_steps)
    diff = _lm_diff(computed, printed, rc.order_Rb)
    ok_gb, certs = is_groebner_basis(printed, rc.order_Rb)
    report = VerificationReport(
        target, params.to_dict(), bool(eq) and not diff,
        certificates=[c.to_dict() for c in certs if not c.coprime_skipped],
        ideal_equality=eq.to_dict(),
        lm_set_diff=diff,
        details={
            "printed": labels,
            "computed_lms": _lm_strings(computed, rc.order_Rb),
            "printed_lms": _lm_strings(printed, rc.order_Rb),
            "printed_is_groebner_basis": ok_gb,
            "computed_size": len(computed),
            "d_relation": _d_relation(params),
        },
    )
    if diff:
        report.notes.append("computed reduced basis has leading monomials outside the printed set; "
                            "the printed set generates the ideal but is not a Groebner basis")
    return report


def check_q_minimal(params: CurveParams, max_steps: int | None = DEFAULT_MAX_STEPS) -> VerificationReport:
    """{L(i), B(i,j)} is a minimal Groebner basis of q_b."""
    return _minimal_basis_report("q-minimal", params, compute_q_b(params, max_steps=max_steps), max_steps)


def check_e3_basis(params: CurveParams, max_steps: int | None = DEFAULT_MAX_STEPS) -> VerificationReport:
    """For b = 3, {L(i), B(i,j)} is a minimal Groebner basis of E_3."""
    if params.b != 3:
        return _skip("e3-basis", params, "only defined for b = 3")
    return _minimal_basis_report("e3-basis", params, compute_E_b(params, max_steps=max_steps), max_steps)


def check_e_basis(params: CurveParams, max_steps: int | None = DEFAULT_MAX_STEPS) -> VerificationReport:
    """The A, B, D, L, Q families generate E_b."""
    rc = build_ambient(params)
    computed = compute_E_b(params, max_steps=max_steps)
    printed = hat_E_b(params)
    eq = ideal_equality(IdealPresentation(tuple(computed), rc.order_Rb),
                        IdealPresentation(tuple(printed), rc.order_Rb), max_steps)
    labels = [n.label(params.b) for n, _ in family_members(params, ("A", "B", "D", "L", "Q"))]
    bad = _oracle_failures(list(zip(labels, printed)), params)
    ok_gb, _ = is_groebner_basis(printed, rc.order_Rb)
    return VerificationReport(
        "e-basis", params.to_dict(), bool(eq) and not bad,
        ideal_equality=eq.to_dict(),
        lm_set_diff=_lm_diff(computed, printed, rc.order_Rb),
        details={
            "printed": labels,
            "computed_size": len(computed),
            "oracle_failures": bad,
            "printed_is_groebner_basis": ok_gb,
        },
    )


def b_identity_rhs(fam: Families, i: int, j: int) -> Polynomial:
    """X_(i+1) A(j;b,l) - X_j A(i+1;b,l) - X3^a L(i+j-1) - X0^(a+d) L(2i+2j-5b) + X0^(a+d) L(7-b-i-j)."""
    a, b, d = fam.a, fam.b, fam.d
    l = 2 - b
    X, A, L = fam.X, fam.A, fam.L
    return (
        X(i + 1) * A(j, l) - X(j) * A(i + 1, l)
        - X(3) ** a * L(i + j - 1)
        - X(0) ** (a + d) * L(2 * i + 2 * j - 5 * b)
        + X(0) ** (a + d) * L(7 - b - i - j)
    )


def check_b_identity(params: CurveParams, max_steps: int | None = DEFAULT_MAX_STEPS) -> VerificationReport:
    """B(i,j) against its expression in the A and L families.

    Passes when every side (and every mismatch) lies in E_b by the kernel
    oracle; exact equality per pair is reported in ``details``.
    """
    if params.b == 3:
        return _skip("b-identity", params, "only defined for b in {1, 2}")
    rc = build_ambient(params)
    fam = Families(rc)
    cases = {}
    diffs = []
    oracle_ok = True
    for i in (1, 2):
        for j in (1, 2):
            lhs, rhs, printed = fam.B(i, j), b_identity_rhs(fam, i, j), fam.B_printed(i, j)
            delta = lhs - rhs
            lhs_in = in_kernel(lhs, params)
            rhs_in = in_kernel(rhs, params)
            oracle_ok = oracle_ok and lhs_in and rhs_in
            cases[f"{i},{j}"] = {
                "equal": not delta,
                "lhs_in_E": lhs_in,
                "rhs_in_E": rhs_in,
                "printed_variant_in_E": in_kernel(printed, params),
                "printed_variant_equal": not (printed - rhs),
            }
            if delta:
                diffs.append(f"B({i},{j}) - rhs = {rc.to_Rb(delta)}")
    report = VerificationReport("b-identity", params.to_dict(), oracle_ok, term_diffs=diffs, details={"cases": cases})
    if diffs:
        report.notes.append("identity holds only up to the itemized differences; both sides lie in E_b")
    return report


def check_linear_type(params: CurveParams, max_steps: int | None = DEFAULT_MAX_STEPS) -> VerificationReport:
    """Every reduced Groebner basis member has degree at most 1 in the fiber variables.

    For b = 3 the basis is that of E_3; otherwise that of q_b.  The height
    of q_b is reported; its minimal number of generators is not asserted.
    """
    rc = build_ambient(params)
    fiber = set(rc.fiber_names)
    gb = compute_E_b(params, max_steps=max_steps) if params.b == 3 else compute_q_b(params, max_steps=max_steps)
    degrees = [_fiber_degree(g, fiber) for g in gb]
    q = compute_q_b(params, max_steps=max_steps)
    lms = [leading_monomial(g, rc.order_Rb) for g in q]
    height = rc.ring_Rb.nvars - monomial_ideal_dimension(lms, rc.ring_Rb)
    return VerificationReport(
        "linear-type", params.to_dict(), all(deg <= 1 for deg in degrees) and height == 3,
        details={
            "ideal": "E_3" if params.b == 3 else "q_b",
            "fiber_degrees": degrees,
            "height_q": height,
            "q_generator_count": len(q_generators(params)),
            "mu_q": "not asserted",
        },
    )


def check_patil_gb(params: CurveParams, max_steps: int | None = DEFAULT_MAX_STEPS) -> VerificationReport:
    return verify_patil_groebner(params)


CHECKS: dict[str, Callable[..., VerificationReport]] = {
    "rees-gb": check_rees_gb,
    "q-gb": check_q_gb,
    "q-minimal": check_q_minimal,
    "e3-basis": check_e3_basis,
    "e-basis": check_e_basis,
    "b-identity": check_b_identity,
    "linear-type": check_linear_type,
    "patil-gb": check_patil_gb,
}


def verify_theorem(which: str, params: CurveParams, max_steps: int | None = DEFAULT_MAX_STEPS
                   ) -> list[VerificationReport]:
    """Run one target, or every target for ``"all"``."""
    names = TARGETS if which == "all" else (which,)
    out = []
    for name in names:
        if name not in CHECKS:
            raise KeyError(f"unknown target {name!r}; choose from {', '.join(TARGETS)} or all")
        start = time.perf_counter()
        report = CHECKS[name](params, max_steps)
        report.wall_time_ms = (time.perf_counter() - start) * 1000
        out.append(report)
    return out
