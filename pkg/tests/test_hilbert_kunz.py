import json
from fractions import Fraction

import pytest

from errors import ParameterError
from ff_linalg import BinaryForm
from graded_ring import CurveRing
from hilbert_kunz import (
    DEVIATES,
    INCONCLUSIVE,
    MATCHES,
    colength_profile,
    crosscheck_star_identity,
    elliptic_formula,
    hk_closed_formula,
    hk_record,
    hk_summary,
    hk_table,
    hk_value,
    hk_value_uncapped,
    monsky_deviation_formula,
    semistable_baseline,
    strong_semistability_verdict,
)


# ---------- colengths ----------


def test_colength_of_maximal_ideal_is_one(cubic_f5):
    assert colength_profile(cubic_f5, 1) == [1]


def test_conic_profile_in_char_3(conic_f3):
    assert colength_profile(conic_f3, 3) == [1, 3, 5, 4]


def test_cubic_profile_in_char_5(cubic_f5):
    profile = colength_profile(cubic_f5, 5)
    assert sum(profile) == 55
    assert all(entry > 0 for entry in profile)


def test_hk_value_at_e0_is_one(quartic_f3):
    assert hk_value(quartic_f3, 0) == 1


@pytest.mark.parametrize(
    "d,p,e,expected",
    [
        (2, 3, 1, 13),
        (2, 7, 1, 73),
        (3, 5, 1, 55),
        (4, 7, 1, 145),
        (6, 11, 1, 541),
        pytest.param(5, 19, 1, 1351, marks=pytest.mark.slow),
        pytest.param(2, 3, 2, 121, marks=pytest.mark.slow),
        pytest.param(3, 5, 2, 1405, marks=pytest.mark.slow),
    ],
)
def test_hk_value_matches_closed_formula(d, p, e, expected):
    ring = CurveRing(p, d)
    assert hk_closed_formula(d, p, e) == expected
    assert hk_value(ring, e) == expected


@pytest.mark.parametrize(
    "p,e,expected",
    [
        (5, 1, 55),
        (7, 1, 109),
        (11, 1, 271),
        pytest.param(5, 2, 1405, marks=pytest.mark.slow),
        pytest.param(7, 2, 5401, marks=pytest.mark.slow),
        pytest.param(11, 2, 32941, marks=pytest.mark.slow),
    ],
)
def test_plane_cubics_follow_the_elliptic_formula(p, e, expected):
    assert elliptic_formula(p, e) == expected
    assert hk_value(CurveRing(p, 3), e) == expected


@pytest.mark.parametrize(
    "d,p,q",
    [
        (2, 3, 3),
        (2, 7, 7),
        (3, 5, 5),
        (4, 3, 3),
        (4, 7, 7),
        (3, 7, 7),
        (6, 11, 11),
        pytest.param(2, 3, 9, marks=pytest.mark.slow),
        pytest.param(3, 5, 25, marks=pytest.mark.slow),
        pytest.param(5, 19, 19, marks=pytest.mark.slow),
    ],
)
def test_colengths_agree_with_syzygy_identity(d, p, q):
    ring = CurveRing(p, d)
    profile = colength_profile(ring, q)
    for m in range(len(profile) + 2):
        assert crosscheck_star_identity(ring, q, m)


def test_identity_beyond_the_socle(cubic_f5):
    assert crosscheck_star_identity(cubic_f5, 5, 15)
    assert crosscheck_star_identity(cubic_f5, 5, 0)


@pytest.mark.parametrize("d,p", [(3, 5), (4, 3), (2, 7)])
def test_early_stop_matches_uncapped_sum(d, p):
    ring = CurveRing(p, d)
    assert hk_value_uncapped(ring, 1) == hk_value(ring, 1)


@pytest.mark.parametrize("e", [0, 1])
def test_hk_value_is_symmetric_in_x_and_y(e):
    form = BinaryForm((0, 1, 2, 0), 5)  # X Y^2 + 2 X^2 Y
    swapped = BinaryForm(tuple(reversed(form.coeffs)), 5)
    assert swapped != form
    assert hk_value(CurveRing(5, 3, form), e) == hk_value(CurveRing(5, 3, swapped), e)


def test_record_with_crosscheck(quartic_f3):
    record = hk_record(quartic_f3, 1, crosscheck=True)
    assert record.q == 3
    assert record.total == sum(record.profile)
    assert record.estimate == Fraction(record.total, 9)


# ---------- formulas ----------


def test_closed_formula_instances():
    assert hk_closed_formula(2, 3, 1) == 13
    assert hk_closed_formula(5, 19, 1) == 1351
    assert hk_closed_formula(3, 5, 0) == 1


def test_closed_formula_rejects_other_congruence_classes():
    with pytest.raises(ParameterError, match="formula out of range"):
        hk_closed_formula(3, 7, 1)


def test_elliptic_formula_edge_cases():
    assert elliptic_formula(3, 0) == 1
    with pytest.raises(ParameterError):
        elliptic_formula(2, 1)


def test_deviation_formulas():
    assert monsky_deviation_formula(4, 3) == 3 + Fraction(1, 9)
    assert monsky_deviation_formula(3, 3) == 3
    assert monsky_deviation_formula(4, 5) == 3 + Fraction(1, 25)
    with pytest.raises(ParameterError):
        monsky_deviation_formula(4, 7)


def test_semistable_baseline():
    assert semistable_baseline(4, 3) == 25
    assert semistable_baseline(3, 1) == 1


# ---------- verdicts ----------


def test_quartic_in_char_3_exceeds_baseline(quartic_f3):
    assert hk_value(quartic_f3, 1) > 25


def test_verdict_for_conic_in_char_3(conic_f3):
    assert strong_semistability_verdict(conic_f3, 1) == MATCHES


@pytest.mark.slow
def test_verdict_for_cubic_in_char_5(cubic_f5):
    assert strong_semistability_verdict(cubic_f5, 2) == MATCHES


@pytest.mark.slow
@pytest.mark.parametrize("p", [3, 5])
def test_quartic_deviation_approaches_known_multiplicity(p):
    summary = hk_summary(CurveRing(p, 4), 2)
    assert summary.verdict == DEVIATES
    for record in summary.records:
        assert record.total > semistable_baseline(4, record.q)
    assert summary.deviation_limit == monsky_deviation_formula(4, p)
    assert summary.deviations[1] <= summary.deviations[0]


def test_cubic_in_char_7_has_no_closed_formula_verdict():
    summary = hk_summary(CurveRing(7, 3), 1)
    assert summary.closed_formula == ()
    assert summary.verdict == INCONCLUSIVE


def test_summary_rejects_empty_range(cubic_f5):
    with pytest.raises(ParameterError):
        hk_summary(cubic_f5, 0)


def test_summary_serializes_with_exact_rationals(quartic_f3):
    data = hk_summary(quartic_f3, 1).to_dict()
    text = json.dumps(data, sort_keys=True)
    assert json.loads(text)["records"][0]["closed_formula"] is None
    assert data["deviation"]["limit"] == "28/9"
    assert data["records"][0]["ehk_estimate"] == str(Fraction(data["records"][0]["phi"], 9))


def test_hk_table_columns_and_csv(cubic_f5):
    table = hk_table(hk_summary(cubic_f5, 1))
    assert list(table.columns) == ["e", "q", "phi", "closed_formula", "match", "ehk_estimate", "verdict"]
    row = table.iloc[0]
    assert row["phi"] == 55
    assert row["closed_formula"] == "55"
    assert bool(row["match"]) is True
    assert "matches-closed-formula" in table.to_csv(index=False)
