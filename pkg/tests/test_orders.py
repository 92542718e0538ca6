import random

import pytest

from reesalg.algebra import Monomial, RingContext
from reesalg.curves import derive_params, ring_R
from reesalg.errors import ContextMismatch, NotASubcontext, ZeroPolynomial
from reesalg.orders import (
    Cmp,
    OrderSpec,
    compare,
    eliminates,
    leading_monomial,
    leading_term,
    restricted_order,
)
from reesalg.rees import HAT_A_TAGS, Families, build_ambient, family_members

from conftest import MATRIX

N_TRIPLES = 10_000


def mono(ctx, text):
    return Monomial.of(ctx.parse(text))


def _contexts():
    out = []
    for mp in [(4, 1), (5, 1), (6, 1)]:
        rc = build_ambient(derive_params(*mp))
        out.append((f"S{mp}", rc.ring_S, rc.order_S))
    rc = build_ambient(derive_params(4, 1))
    out.append(("Rb(4,1)", rc.ring_Rb, rc.order_Rb))
    out.append(("R(4,1)", rc.ring_R, rc.ring_R.default_order))
    return out


CONTEXTS = _contexts()


def _random_exps(rng, n):
    return tuple(rng.choice((0, 0, 0, 1, 1, 2, 3)) for _ in range(n))


def _cmp(u, v, spec):
    return compare(Monomial(spec_ctx[spec], u), Monomial(spec_ctx[spec], v), spec)[0].value


spec_ctx = {spec: ctx for _, ctx, spec in CONTEXTS}


# -- hand-walked examples (m = 4,5,6,7) -----------------------------------------------------


@pytest.fixture
def S41():
    rc = build_ambient(derive_params(4, 1))
    return rc.ring_S, rc.order_S


def test_t_degree_decides_first(S41):
    S, order = S41
    res, trace = compare(mono(S, "t*X0"), mono(S, "X3^2"), order)
    assert res is Cmp.GREATER and trace.tier == 1 and (trace.left, trace.right) == (1, 0)


def test_weight_decides_second(S41):
    S, order = S41
    res, trace = compare(mono(S, "t*X2*X3"), mono(S, "t*X1*X3"), order)
    # t-free weights m2 + m3 = 13 against m1 + m3 = 12
    assert res is Cmp.GREATER and trace.tier == 2 and (trace.left, trace.right) == (13, 12)


def test_x0_last_in_revlex(S41):
    S, order = S41
    res, trace = compare(mono(S, "t*X1*X3"), mono(S, "t*X0^3"), order)
    assert res is Cmp.GREATER and trace.tier == 7


def test_equal_monomials(S41):
    S, order = S41
    u = mono(S, "t*X1*P[1,2]*F[1,1]^2")
    res, trace = compare(u, u, order)
    assert res is Cmp.EQUAL and trace.tier == 0


def test_psi_block_before_phi_block(S41):
    S, order = S41
    u, v = mono(S, "P[1,0]*X1"), mono(S, "F[1,2]*X2")
    # both weigh 17 (12 + 5 and 11 + 6); Psi-degree 1 beats 0
    assert S.weight(u.exponents) == S.weight(v.exponents) == 17
    res, trace = compare(u, v, order)
    assert res is Cmp.GREATER and trace.tier == 3


def test_trace_tiers_are_consistent(S41):
    """Resolution at tier k means all earlier tier values agree."""
    S, order = S41
    rng = random.Random(7)
    for _ in range(2000):
        u = Monomial(S, _random_exps(rng, S.nvars))
        v = Monomial(S, _random_exps(rng, S.nvars))
        res, trace = compare(u, v, order)
        if trace.tier == 0:
            assert u == v and res is Cmp.EQUAL
        else:
            ku, kv = order.key(u.exponents), order.key(v.exponents)
            assert ku != kv
            assert (res is Cmp.GREATER) == (ku > kv)


def test_leading_terms_match_printed_examples(S41):
    S, order = S41
    rc = build_ambient(derive_params(4, 1))
    fam = Families(rc)
    assert leading_monomial(fam.P(1, 1), order) == mono(S, "t*X1^2")
    assert leading_monomial(fam.D(), order) == mono(S, "X1^2*F[1,2]")
    m, c = leading_term(S.const(5), order)
    assert m.degree == 0 and c == 5
    with pytest.raises(ZeroPolynomial):
        leading_term(S.zero(), order)


def _underlined(fam, name):
    X, Psi, Phi, t = fam.X, fam.Psi, fam.Phi, fam.t
    a, b, d = fam.a, fam.b, fam.d
    i = name.indices
    table = {
        "P": lambda: t * X(i[0]) * X(i[1]),
        "PPsi": lambda: t * X(b + i[0]) * X(3) ** a,
        "D": lambda: X(1) ** 2 * Phi(1, 2),
        "B": lambda: X(i[0]) * X(i[1]) * Psi(3 - b),
        "A": lambda: X(i[0]) * Psi(i[1]),
        "L": lambda: X(i[0]) * Phi(2, 2),
        "Q": lambda: {(1, 1): Psi(0) * Phi(2, 2), (1, 2): Psi(1) ** 2, (2, 1): Psi(0) ** 2 * Phi(2, 2)}[(b, i[0])],
        "M": lambda: t * X(0) ** (a + d + 1) * Psi(i[0]),
    }
    return table[name.tag]()


@pytest.mark.parametrize("mp", MATRIX)
def test_underlined_monomials_lead(mp):
    p = derive_params(*mp)
    rc = build_ambient(p)
    fam = Families(rc)
    for name, f in family_members(p, HAT_A_TAGS):
        assert leading_monomial(f, rc.order_S).to_polynomial() == _underlined(fam, name), name.label(p.b)


# -- restriction and elimination ------------------------------------------------------------


def test_restriction_to_rb_drops_t_tier():
    rc = build_ambient(derive_params(4, 1))
    assert rc.order_Rb.blocks[0] == ()
    assert rc.order_Rb.blocks[1:] == rc.order_S.blocks[1:]


def test_restriction_to_r_is_weighted_revlex():
    p = derive_params(4, 1)
    rc = build_ambient(p)
    assert rc.order_R == ring_R(p).default_order
    assert rc.order_R.blocks == (("X1", "X2", "X3", "X0"),)


def test_restriction_to_full_context_is_identity():
    rc = build_ambient(derive_params(5, 1))
    same = restricted_order(rc.order_S, rc.ring_S)
    rng = random.Random(3)
    for _ in range(2000):
        u, v = _random_exps(rng, rc.ring_S.nvars), _random_exps(rng, rc.ring_S.nvars)
        assert (same.key(u) > same.key(v)) == (rc.order_S.key(u) > rc.order_S.key(v))


def test_restriction_errors():
    rc = build_ambient(derive_params(4, 1))
    with pytest.raises(NotASubcontext):
        restricted_order(rc.order_S, RingContext(("X1", "Y")))
    with pytest.raises(NotASubcontext):
        restricted_order(rc.order_S, RingContext(("X1",), (99,)))


def test_eliminates():
    rc = build_ambient(derive_params(4, 1))
    assert eliminates(rc.order_S, {"t"})
    assert eliminates(rc.order_S, set())
    assert not eliminates(rc.order_S, {"X0"})
    assert not eliminates(rc.order_Rb, {"X1"})


def test_compare_context_mismatch():
    rc = build_ambient(derive_params(4, 1))
    with pytest.raises(ContextMismatch):
        compare(mono(rc.ring_R, "X1"), mono(rc.ring_R, "X2"), rc.order_S)


def test_order_serialization():
    rc = build_ambient(derive_params(4, 1))
    d = rc.order_S.to_dict()
    assert d["kind"] == "elimination_seven"
    assert d["blocks"]["X"] == ["X1", "X2", "X3", "X0"]
    assert d["weights"]["P[1,0]"] == 1 * 7 + 5
    assert d["weights"]["F[1,2]"] == 5 + 6
    assert d["weights"]["t"] == 1


# -- axioms on 10^4 seeded triples per context ----------------------------------------------


@pytest.mark.parametrize("label,ctx,spec", CONTEXTS, ids=[c[0] for c in CONTEXTS])
def test_order_axioms(label, ctx, spec):
    rng = random.Random(hash(label) % 2**32)
    n = ctx.nvars
    one = (0,) * n
    t_idx = [spec._pos[v] for v in spec.block("t")]
    violations = []
    for _ in range(N_TRIPLES):
        u, v, w = (_random_exps(rng, n) for _ in range(3))
        cuv = _cmp(u, v, spec)
        # antisymmetry, equality and key agreement
        if cuv != -_cmp(v, u, spec) or (cuv == 0) != (u == v):
            violations.append(("antisymmetry", u, v))
        ku, kv = spec.key(u), spec.key(v)
        if cuv != (ku > kv) - (ku < kv):
            violations.append(("key", u, v))
        # transitivity
        cvw = _cmp(v, w, spec)
        if cuv > 0 and cvw > 0 and _cmp(u, w, spec) <= 0:
            violations.append(("transitivity", u, v, w))
        # multiplicativity
        uw = tuple(a + c for a, c in zip(u, w))
        vw = tuple(a + c for a, c in zip(v, w))
        if _cmp(uw, vw, spec) != cuv:
            violations.append(("multiplicativity", u, v, w))
        # 1 is the minimum
        if u != one and _cmp(u, one, spec) != 1:
            violations.append(("minimum", u))
        # t-block dominance
        if t_idx:
            du, dv = sum(u[i] for i in t_idx), sum(v[i] for i in t_idx)
            if du > dv and cuv != 1:
                violations.append(("t-dominance", u, v))
    assert violations == []
