import json

import numpy as np
import pytest

from errors import ParameterError
from ff_linalg import BinaryForm, fermat_form
from graded_ring import CurveRing, GradedElement, hilbert_dim, multiply, variable_power, zero
from periodicity import (
    EXHAUSTIVE,
    PAPER_REDUCTION,
    S_K,
    S_K1,
    DistinguishedSection,
    PeriodicityContext,
    char2_cubic_suite,
    decompose_syzygy,
    distinguished_section,
    double_cover_check,
    generating_sections,
    generation_check,
    lemma_map_phi,
    rational_points,
    step1_splitting,
    step1_splitting_check,
    step2_gcd_check,
    steps45_bookkeeping,
    steps45_ledger,
    twist_window,
    twist_window_check,
    verify_theorem,
)
from syzygy import GeneratorList, is_syzygy, pullback_compatibility, syzygy_basis, syzygy_dim


@pytest.fixture
def conic_ctx():
    return PeriodicityContext.create(2, 3)


@pytest.fixture
def cubic_ctx():
    return PeriodicityContext.create(3, 5)


# ---------- parameters ----------


def test_context_parameters(conic_ctx, cubic_ctx):
    assert (conic_ctx.k, conic_ctx.t, conic_ctx.shift) == (1, 1, 3)
    assert (cubic_ctx.k, cubic_ctx.t, cubic_ctx.shift) == (1, 2, 6)
    assert cubic_ctx.balanced_twist == 8
    assert conic_ctx.to_dict() == {"d": 2, "p": 3, "k": 1, "t": 1, "shift": 3}


def test_context_rejects_other_residues():
    with pytest.raises(ParameterError, match="theorem hypotheses not met"):
        PeriodicityContext.create(3, 7)
    with pytest.raises(ParameterError):
        PeriodicityContext.create(4, 5, exploratory=True)


def test_exploratory_context():
    ctx = PeriodicityContext.create(3, 7, exploratory=True)
    assert (ctx.k, ctx.t) == (2, 1)


# ---------- steps 1 and 2 ----------


def test_distinguished_section_on_the_conic(conic_ctx):
    section = distinguished_section(conic_ctx)
    ring = conic_ctx.ring
    x = variable_power(ring, 0, 1)
    y = variable_power(ring, 1, 1)
    h = multiply(y, y) - multiply(x, x)
    assert section.components == (x, -y, h)
    assert section.h_form == BinaryForm((1, 0, -1), 3)
    assert section.twist == 4
    assert is_syzygy(conic_ctx.s_k, section.components)


@pytest.mark.parametrize("d,p,twist", [(2, 7, 10), (3, 5, 6), (4, 7, 8)])
def test_distinguished_section_twist(d, p, twist):
    ctx = PeriodicityContext.create(d, p)
    section = distinguished_section(ctx)
    assert section.twist == twist == ctx.balanced_twist - ctx.t
    assert section.h_form.first_nonzero() == 1
    assert section.h_form.is_form_in_powers(d)


@pytest.mark.parametrize("d,p", [(2, 3), (2, 7), (3, 5), (4, 7)])
def test_h_is_coprime_to_the_fermat_form(d, p):
    assert step2_gcd_check(distinguished_section(PeriodicityContext.create(d, p)), d)


def test_gcd_check_detects_a_common_factor():
    h = fermat_form(2, 3) * BinaryForm.monomial(1, 0, 3)
    assert not step2_gcd_check(DistinguishedSection((), h), 2)


def test_step1_dimensions_on_the_conic(conic_ctx):
    rows = {(r.bundle, r.twist): (r.found, r.expected) for r in step1_splitting(conic_ctx).rows}
    assert rows == {
        (S_K, 4): (2, 2),
        (S_K, 3): (0, 0),
        (S_K1, 5): (2, 2),
        (S_K1, 4): (0, 0),
    }


def test_step1_dimensions_on_the_cubic(cubic_ctx):
    result = step1_splitting(cubic_ctx)
    rows = {(r.bundle, r.twist): r.found for r in result.rows}
    assert rows[(S_K, 6)] == 1
    assert rows[(S_K, 5)] == 0
    assert result.ok
    assert step1_splitting_check(cubic_ctx)


@pytest.mark.parametrize("d,p", [(2, 3), (3, 5), (2, 7)])
def test_splitting_bundles_are_pulled_back_from_the_line(d, p):
    ctx = PeriodicityContext.create(d, p)
    assert pullback_compatibility(ctx.ring, p, p, ctx.k).ok
    assert pullback_compatibility(ctx.ring, p, p, ctx.k + 1).ok


# ---------- the splitting map ----------


@pytest.mark.parametrize(
    "p,d,exponents,twists",
    [
        (3, 2, (3, 3, 3), range(3, 10)),
        (5, 3, (5, 5, 5), range(5, 12)),
        (7, 2, (2, 3, 5), range(2, 10)),
        (5, 3, (4, 2, 7), range(4, 12)),
    ],
)
def test_lemma_map_is_an_isomorphism_on_sections(p, d, exponents, twists):
    ring = CurveRing(p, d)
    for m in twists:
        verdict = lemma_map_phi(ring, exponents, m)
        assert verdict.ok, verdict.to_dict()


def test_lemma_map_with_t_zero_is_onto_from_the_first_summand():
    ring = CurveRing(3, 2)
    for m in range(4, 9):
        verdict = lemma_map_phi(ring, (3, 3, 4), m)
        assert verdict.surjective
        assert verdict.injective[0]


def random_parameter_sets(count, seed=31):
    rng = np.random.default_rng(seed)
    found = []
    while len(found) < count:
        d = int(rng.integers(2, 5))
        p = int(rng.choice([2, 3, 5, 7]))
        if d % p == 0:
            continue
        exponents = tuple(int(a) for a in rng.integers(1, 2 * p + 1, size=3))
        m = int(rng.integers(0, 3 * p + 1))
        found.append((p, d, exponents, m))
    return found


@pytest.mark.parametrize("p,d,exponents,m", random_parameter_sets(20))
def test_splitting_map_and_decomposition_on_random_parameters(p, d, exponents, m):
    ring = CurveRing(p, d)
    verdict = lemma_map_phi(ring, exponents, m)
    assert verdict.surjective
    assert all(verdict.injective)
    gens = GeneratorList.monomial_powers(ring, exponents)
    for section in syzygy_basis(gens, m).basis:
        components = decompose_syzygy(ring, section, exponents)
        for i in range(3):
            total = sum((c.section[i] for c in components), zero(ring, m - exponents[i]))
            assert total == section[i]
        assert all(is_syzygy(gens, c.section) for c in components)


def test_decomposition_of_a_koszul_sum(cubic_f5):
    x, y, z = (variable_power(cubic_f5, v, 1) for v in range(3))
    nil = zero(cubic_f5, 1)
    koszul = (y, -x, nil)
    assert [(c.level, c.source) for c in decompose_syzygy(cubic_f5, koszul, (1, 1, 1))] == [
        (0, S_K1)
    ]
    mixed = (y + z, -x, -x)
    components = decompose_syzygy(cubic_f5, mixed, (1, 1, 1))
    assert [(c.level, c.source) for c in components] == [(0, S_K1), (1, S_K)]
    assert components[1].section == (z, nil, -x)


def test_decomposition_rejects_non_syzygies(cubic_f5):
    x, y = (variable_power(cubic_f5, v, 1) for v in range(2))
    with pytest.raises(ParameterError, match="not a syzygy"):
        decompose_syzygy(cubic_f5, (y, x, zero(cubic_f5, 1)), (1, 1, 1))


@pytest.mark.parametrize("p,d,exponents,m", [(5, 3, (5, 5, 5), 9), (3, 2, (3, 3, 3), 6)])
def test_decomposition_sums_back_to_random_syzygies(p, d, exponents, m):
    ring = CurveRing(p, d)
    gens = GeneratorList.monomial_powers(ring, exponents)
    basis = syzygy_basis(gens, m).basis
    rng = np.random.default_rng(m)
    for _ in range(5):
        weights = rng.integers(0, p, size=len(basis))
        section = tuple(
            sum(
                (b[i].scale(int(w)) for b, w in zip(basis, weights)),
                zero(ring, m - exponents[i]),
            )
            for i in range(3)
        )
        components = decompose_syzygy(ring, section, exponents)
        total = tuple(
            sum((c.section[i] for c in components), zero(ring, m - exponents[i])) for i in range(3)
        )
        assert total == section
        for c in components:
            assert is_syzygy(gens, c.section)


# ---------- step 3 ----------


def test_generation_by_reduction(conic_ctx):
    assert generation_check(conic_ctx, PAPER_REDUCTION) is True


@pytest.mark.parametrize("d,p", [(2, 3), (3, 5)])
def test_generation_exhaustive(d, p):
    assert generation_check(PeriodicityContext.create(d, p), EXHAUSTIVE) is True


def test_generation_fails_when_sections_share_a_zero(conic_ctx):
    ring = conic_ctx.ring
    x = variable_power(ring, 0, 1)
    twisted = [tuple(multiply(x, c) for c in s) for s in generating_sections(conic_ctx)]
    assert generation_check(conic_ctx, EXHAUSTIVE, sections=twisted) is False


def test_generation_uses_a_supplied_section(conic_ctx):
    built = distinguished_section(conic_ctx)
    assert generation_check(conic_ctx, PAPER_REDUCTION, section=built) is True
    shared_factor = DistinguishedSection((), fermat_form(2, 3) * BinaryForm.monomial(1, 0, 3))
    assert generation_check(conic_ctx, PAPER_REDUCTION, section=shared_factor) is False
    assert len(generating_sections(conic_ctx, built)) == 3


def test_generation_rejects_unknown_mode(conic_ctx):
    with pytest.raises(ParameterError):
        generation_check(conic_ctx, "guess")


def test_rational_points_lie_on_the_curve(conic_f3):
    points = rational_points(conic_f3)
    # a smooth conic over F_3 has 4 points
    assert len(points) == 4
    for x, y, z in points:
        assert (x * x + y * y - z * z) % 3 == 0


# ---------- twist windows and bookkeeping ----------


def test_twist_window_on_the_conic(conic_ctx):
    rows, ok = twist_window_check(conic_ctx, (0, 12))
    assert ok
    assert [m for m, _, _ in rows] == list(range(13))


def test_twist_window_default_on_the_cubic(cubic_ctx):
    check = twist_window(cubic_ctx, max_workers=2)
    assert check.ok
    assert len(check.rows) == 19


@pytest.mark.parametrize("d,p,a,b,c", [(2, 3, 3, 1, 2), (3, 5, 5, 2, 4), (2, 7, 1, 7, 3)])
def test_window_dimensions_are_symmetric_in_x_and_y(d, p, a, b, c):
    ring = CurveRing(p, d)
    forward = GeneratorList.monomial_powers(ring, (a, b, c))
    backward = GeneratorList.monomial_powers(ring, (b, a, c))
    for m in range(0, 3 * p + 4):
        assert syzygy_dim(forward, m) == syzygy_dim(backward, m)


def test_steps45_ledger(conic_ctx):
    ledger = steps45_ledger(conic_ctx)
    assert ledger.determinant_degree == 2
    assert (ledger.shift_lhs, ledger.shift_rhs) == (3, 3)
    assert steps45_ledger(PeriodicityContext.create(2, 7)).shift_rhs == 9
    assert steps45_bookkeeping(conic_ctx)


# ---------- satellites ----------


def test_double_cover_of_the_conic():
    report = double_cover_check(2, 3, max_workers=2)
    assert report.ok
    assert len(report.window.rows) == 25
    assert report.degree_at_3 == 0
    assert report.sections_at_3 == 0


def test_double_cover_rejects_other_residues():
    with pytest.raises(ParameterError):
        double_cover_check(2, 5)


def test_char2_cubic_suite():
    report = char2_cubic_suite()
    assert report.ok
    assert report.to_dict()["dims"]["q=2, m=3"] == {"found": 1, "expected": 1}


# ---------- full runs ----------


@pytest.mark.parametrize(
    "d,p", [(2, 3), (3, 5), (2, 7), (4, 7), pytest.param(5, 19, marks=pytest.mark.slow)]
)
def test_verify_theorem(d, p):
    report = verify_theorem(d, p, max_workers=2)
    assert report.overall is True
    assert report.hk_match is True
    json.dumps(report.to_dict())


def test_verify_theorem_exhaustive():
    report = verify_theorem(2, 3, generation_mode=EXHAUSTIVE)
    assert report.step3 is True
    assert report.to_dict()["step3"] == {"mode": EXHAUSTIVE, "verdict": True}


def test_exploratory_run_reports_without_verdict():
    report = verify_theorem(3, 7, exploratory=True)
    assert report.overall is None
    assert report.phi == 109
    assert report.section.h_form.degree == 0
    assert report.step2
    data = report.to_dict()
    assert data["exploratory"]["note"] == "no theorem verdict for p = 1 mod 2d"
    assert data["step3"]["mode"] == "skipped"


def test_exploratory_section_is_a_syzygy():
    ctx = PeriodicityContext.create(3, 7, exploratory=True)
    section = distinguished_section(ctx)
    assert is_syzygy(ctx.s_k1, section.components)
    assert all(isinstance(c, GradedElement) for c in section.components)
    assert hilbert_dim(ctx.ring, section.components[2].degree) > 0
