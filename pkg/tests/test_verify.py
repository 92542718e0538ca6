import json

import pytest

from reesalg.curves import derive_params
from reesalg.verify import TARGETS, verify_theorem

from conftest import B12, B3, MATRIX


def _by_target(mp):
    return {r.target: r for r in verify_theorem("all", derive_params(*mp))}


@pytest.fixture(scope="module", params=MATRIX, ids=lambda mp: f"{mp[0]}-{mp[1]}")
def reports(request):
    return request.param, _by_target(request.param)


def test_every_target_reported(reports):
    _, reps = reports
    assert tuple(reps) == TARGETS


@pytest.mark.parametrize("target", ["rees-gb", "q-gb", "e-basis", "linear-type", "patil-gb"])
def test_passing_targets(reports, target):
    mp, reps = reports
    assert reps[target].passed and not reps[target].skipped, (mp, target)


def test_rees_gb_certificates_reduce_to_zero(reports):
    _, reps = reports
    r = reps["rees-gb"]
    assert r.details["is_groebner_basis"]
    assert r.details["m_flagged"] == []
    assert all(c["remainder"] == "0" for c in r.certificates)
    assert r.ideal_equality["forward"] and r.ideal_equality["backward"]


def test_minimal_basis_claim_fails_on_d(reports):
    """The computed reduced basis of q_b keeps X1^2*F[1,2], the leading monomial of D."""
    _, reps = reports
    r = reps["q-minimal"]
    assert not r.passed
    assert r.ideal_equality["forward"] and r.ideal_equality["backward"]
    assert r.lm_set_diff == ["+X1^2*F[1,2]"]
    rel = r.details["d_relation"]
    assert rel["identity_holds"] and rel["minimalize_keeps_D"]
    assert rel["division_remainder"] != "0"


def test_e3_basis_only_for_b3(reports):
    mp, reps = reports
    r = reps["e3-basis"]
    if mp in B3:
        assert not r.passed and not r.skipped
        assert r.lm_set_diff == ["+X1^2*F[1,2]"]
    else:
        assert r.skipped


def test_b_identity(reports):
    mp, reps = reports
    r = reps["b-identity"]
    if mp in B3:
        assert r.skipped
        return
    cases = r.details["cases"]
    assert set(cases) == {"1,1", "1,2", "2,1", "2,2"}
    assert all(c["lhs_in_E"] and c["rhs_in_E"] for c in cases.values())
    assert [k for k, c in cases.items() if not c["equal"]] == ["1,2"]
    assert len(r.term_diffs) == 1 and r.term_diffs[0].startswith("B(1,2) - rhs = ")
    assert r.passed


def test_linear_type_details(reports):
    mp, reps = reports
    d = reps["linear-type"].details
    assert d["height_q"] == 3
    assert max(d["fiber_degrees"]) <= 1
    assert d["ideal"] == ("E_3" if mp in B3 else "q_b")


def test_reports_serialize_deterministically(reports):
    mp, _ = reports
    a = [r.to_dict() for r in verify_theorem("all", derive_params(*mp))]
    b = [r.to_dict() for r in verify_theorem("all", derive_params(*mp))]
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert all(d["schema"] == "rees-report/1" and d["wall_time_ms"] is None for d in a)


def test_single_target_and_unknown():
    p = derive_params(4, 1)
    (r,) = verify_theorem("patil-gb", p)
    assert r.target == "patil-gb"
    with pytest.raises(KeyError):
        verify_theorem("no-such-target", p)
