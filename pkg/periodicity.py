#!/usr/bin/python3 -tt
# Project: frobenius_periodicity
# Filename: periodicity.py
# claudiadeluna
# PyCharm

"""
Frobenius periodicity of Syz(X, Y, Z) on Fermat curves.

For p = -1 mod 2d write p = dk + (d - 1) with k odd and t = d - 1. Then
F*(Syz(X, Y, Z)) = Syz(X^p, Y^p, Z^p) is isomorphic to Syz(X, Y, Z) twisted by
-3(p - 1)/2. The argument splits Syz(X^p, Y^p, Z^p) through
S_k = Syz(X^p, Y^p, P^k) and S_(k+1) = Syz(X^p, Y^p, P^(k+1)), which are
pulled back from the projective line. Every step that amounts to a finite
computation is reproduced here:

- the splitting map on sections and its decomposition by Z-level
- the distinguished section (FX, GY, H) and gcd(H, X^d + Y^d) = 1
- generation of Syz(X^p, Y^p, Z^p)((3p + 1)/2) by three sections
- equality of section dimensions on a window of twists
- the degree bookkeeping of the final two steps

Primes p = 1 mod 2d can be run in exploratory mode, which builds the analogous
section (multiplied by XY) and reports what it finds without a verdict.
"""

__author__ = "Claudia de Luna (claudia@indigowire.net)"
__version__ = ": 1.0 $"
__date__ = "11/25/25"
__copyright__ = "Copyright (c) 2025 Claudia"
__license__ = "Python"

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from errors import CheckFailure, ParameterError
from ff_linalg import BinaryForm, FpMatrix, are_coprime, as_prime, fermat_form, polynomial_gcd, rank
from graded_ring import (
    CurveRing,
    GradedElement,
    from_binary_form,
    h0_line_bundle,
    hilbert_dim,
    multiply,
    variable_power,
)
from hilbert_kunz import hk_closed_formula, hk_value
from syzygy import (
    GeneratorList,
    Section,
    bundle_degree,
    dimension_profile,
    is_syzygy,
    p1_syzygy_basis,
    quotient_dim,
    section_vector,
    syzygy_basis,
    syzygy_dim,
)

LOGGER = logging.getLogger(__name__)

THEOREM = "theorem"
EXPLORATORY = "exploratory"

PAPER_REDUCTION = "paper-reduction"
EXHAUSTIVE = "exhaustive"
GENERATION_MODES = (PAPER_REDUCTION, EXHAUSTIVE)

S_K = "S_k"
S_K1 = "S_k+1"


# ---------- Parameters ----------


@dataclass(frozen=True)
class PeriodicityContext:
    """
    Parameters of one periodicity run.

    - theorem variant: p = dk + t with t = d - 1 and k odd.
    - exploratory variant: p = dk + 1 with k even and t = 1.
    """

    d: int
    p: int
    k: int
    t: int
    shift: int
    ring: CurveRing
    variant: str = THEOREM

    @classmethod
    def create(cls, d: int, p: int, exploratory: bool = False) -> "PeriodicityContext":
        prime = as_prime(p).value
        ring = CurveRing(prime, d)
        residue = prime % (2 * d)
        if residue == 2 * d - 1:
            k, t, variant = (prime - d + 1) // d, d - 1, THEOREM
        elif exploratory and residue == 1:
            k, t, variant = (prime - 1) // d, 1, EXPLORATORY
        else:
            raise ParameterError(
                f"theorem hypotheses not met: p = {prime} is {residue} mod {2 * d}, "
                f"need {2 * d - 1}" + ("" if not exploratory else " or 1 in exploratory mode")
            )
        if k < 1:
            raise ParameterError(f"theorem hypotheses not met: k = {k} for d = {d}, p = {prime}")
        LOGGER.debug("d=%d p=%d: k=%d t=%d (%s)", d, prime, k, t, variant)
        return cls(d, prime, k, t, 3 * (prime - 1) // 2, ring, variant)

    @property
    def balanced_twist(self) -> int:
        """(3p + 1) / 2, where Syz(X^p, Y^p, Z^p) has degree d."""
        return (3 * self.p + 1) // 2

    @property
    def s_k(self) -> GeneratorList:
        return GeneratorList.trinomial(self.ring, self.p, self.p, self.k)

    @property
    def s_k1(self) -> GeneratorList:
        return GeneratorList.trinomial(self.ring, self.p, self.p, self.k + 1)

    def to_dict(self) -> Dict[str, int]:
        return {"d": self.d, "p": self.p, "k": self.k, "t": self.t, "shift": self.shift}


# ---------- The splitting map ----------


def _z_times(ring: CurveRing, power: int, element: GradedElement) -> GradedElement:
    return multiply(variable_power(ring, 2, power), element)


def lift_from_s_k(ring: CurveRing, section: Section, t: int) -> Section:
    """(f1, f2, f3) -> (Z^t f1, Z^t f2, f3)."""
    f1, f2, f3 = section
    return (_z_times(ring, t, f1), _z_times(ring, t, f2), f3)


def lift_from_s_k1(ring: CurveRing, section: Section, t: int) -> Section:
    """(g1, g2, g3) -> (g1, g2, Z^(d - t) g3)."""
    g1, g2, g3 = section
    return (g1, g2, _z_times(ring, ring.d - t, g3))


@dataclass(frozen=True)
class LemmaMapVerdict:
    m: int
    source_dims: Tuple[int, int]
    image_ranks: Tuple[int, int]
    image_rank: int
    target_dim: int

    @property
    def surjective(self) -> bool:
        return self.image_rank == self.target_dim

    @property
    def injective(self) -> Tuple[bool, bool]:
        return (
            self.image_ranks[0] == self.source_dims[0],
            self.image_ranks[1] == self.source_dims[1],
        )

    @property
    def ok(self) -> bool:
        return self.surjective and all(self.injective)

    def to_dict(self) -> Dict[str, object]:
        return {
            "m": self.m,
            "source_dims": list(self.source_dims),
            "image_rank": self.image_rank,
            "target_dim": self.target_dim,
            "surjective": self.surjective,
            "injective": list(self.injective),
        }


def _rank_of_sections(sections: Sequence[Section], width: int, p: int) -> int:
    if not sections or width == 0:
        return 0
    rows = [section_vector(s) for s in sections]
    return rank(FpMatrix(rows, p, shape=(len(rows), width)))


def lemma_map_phi(ring: CurveRing, exponents: Sequence[int], m: int) -> LemmaMapVerdict:
    """
    Sections of S_k(m - t) + S_(k+1)(m) -> Syz(X^a1, Y^a2, Z^a3)(m) with a3 = dk + t.

    Every image is checked to be a syzygy of the target; the verdict compares
    the rank of all images with the target dimension, and the rank of each
    summand's images with that summand's dimension.
    """
    a1, a2, a3 = exponents
    k, t = divmod(a3, ring.d)
    target = GeneratorList.monomial_powers(ring, exponents)
    s_k = GeneratorList.trinomial(ring, a1, a2, k)
    s_k1 = GeneratorList.trinomial(ring, a1, a2, k + 1)
    images_k = [lift_from_s_k(ring, s, t) for s in syzygy_basis(s_k, m - t).basis]
    images_k1 = [lift_from_s_k1(ring, s, t) for s in syzygy_basis(s_k1, m).basis]
    for image in images_k + images_k1:
        if not is_syzygy(target, image):
            raise CheckFailure(f"image of a section at twist {m} is not a syzygy of {exponents}")
    width = sum(hilbert_dim(ring, m - a) for a in exponents)
    p = ring.modulus
    verdict = LemmaMapVerdict(
        m=m,
        source_dims=(len(images_k), len(images_k1)),
        image_ranks=(
            _rank_of_sections(images_k, width, p),
            _rank_of_sections(images_k1, width, p),
        ),
        image_rank=_rank_of_sections(images_k + images_k1, width, p),
        target_dim=syzygy_dim(target, m),
    )
    LOGGER.debug("splitting map at %s, m=%d: %s", tuple(exponents), m, verdict)
    return verdict


@dataclass(frozen=True)
class SyzygyComponent:
    level: int
    section: Section
    source: str

    def to_dict(self) -> Dict[str, object]:
        return {
            "level": self.level,
            "source": self.source,
            "section": [s.to_dict() for s in self.section],
        }


def decompose_syzygy(
    ring: CurveRing, section: Section, exponents: Sequence[int]
) -> List[SyzygyComponent]:
    """
    Split a syzygy of (X^a1, Y^a2, Z^a3) into pure Z-level syzygies.

    Level i takes the Z^i parts of the first two components and the Z^j part of
    the third, j = (i - t) mod d; it comes from S_k when i >= t and from
    S_(k+1) otherwise. Zero components are dropped and the rest sum to section.
    """
    gens = GeneratorList.monomial_powers(ring, exponents)
    if not is_syzygy(gens, section):
        raise ParameterError(f"input is not a syzygy of {tuple(exponents)}")
    t = exponents[2] % ring.d
    s1, s2, s3 = section
    components = []
    for i in range(ring.d):
        j = (i - t) % ring.d
        part = (s1.z_level(i), s2.z_level(i), s3.z_level(j))
        if all(x.is_zero for x in part):
            continue
        components.append(SyzygyComponent(i, part, S_K if i >= t else S_K1))
    return components


# ---------- Steps 1 and 2 ----------


@dataclass(frozen=True)
class DistinguishedSection:
    """
    A syzygy (FX, GY, H) of generators (X^p, Y^p, P^k) with H a form in X^d, Y^d.

    In the exploratory variant the components are (FY, GX, H*XY) for
    (X^p, Y^p, P^(k+1)) and h_form is H itself.
    """

    components: Section
    h_form: BinaryForm
    generators: Optional[GeneratorList] = None
    variant: str = THEOREM

    @property
    def twist(self) -> int:
        first = self.components[0]
        return first.degree + self.generators.degrees[0] if self.generators else first.degree

    def to_dict(self) -> Dict[str, object]:
        return {
            "variant": self.variant,
            "twist": self.twist,
            "H": str(self.h_form),
            "components": [c.to_dict() for c in self.components],
        }


def _normalize(forms: Sequence[BinaryForm], pivot: BinaryForm) -> List[BinaryForm]:
    lead = pivot.first_nonzero()
    inverse = pow(lead, -1, pivot.modulus)
    return [f.scale(inverse) for f in forms]


def distinguished_section(ctx: PeriodicityContext) -> DistinguishedSection:
    """
    The unique section from the projective line, lifted to the curve.

    Theorem variant: the kernel of Syz(U^(k+1), V^(k+1), (U + V)^k) at twist
    (3k + 1)/2 must be one-dimensional; with U = X^d, V = Y^d and the first two
    components multiplied by X and Y it becomes (FX, GY, H). Exploratory
    variant: Syz(U^k, V^k, (U + V)^(k+1)) at twist 3k/2, multiplied by XY.

    Scaled so the first nonzero coefficient of H is 1. Raises CheckFailure
    when the kernel is not one-dimensional or the result is not a syzygy.
    """
    ring, p, d, k = ctx.ring, ctx.p, ctx.d, ctx.k
    u = BinaryForm.monomial(1, 0, p)
    v = BinaryForm.monomial(0, 1, p)
    x = BinaryForm.monomial(1, 0, p)
    y = BinaryForm.monomial(0, 1, p)
    if ctx.variant == THEOREM:
        forms = (u ** (k + 1), v ** (k + 1), (u + v) ** k)
        twist = (3 * k + 1) // 2
    else:
        forms = (u**k, v**k, (u + v) ** (k + 1))
        twist = 3 * k // 2
    basis = p1_syzygy_basis(forms, twist)
    if len(basis) != 1:
        raise CheckFailure(
            f"step 1 failed: kernel at twist {twist} has dimension {len(basis)}, expected 1"
        )
    a, b, c = (f.substitute_powers(d) for f in basis[0])
    a, b, h = _normalize((a, b, c), c)
    if ctx.variant == THEOREM:
        gens = ctx.s_k
        forms_on_curve = (a * x, b * y, h)
    else:
        gens = ctx.s_k1
        forms_on_curve = (a * y, b * x, h * x * y)
    components = tuple(from_binary_form(ring, f) for f in forms_on_curve)
    if not is_syzygy(gens, components):
        raise CheckFailure("step 1 failed: lifted section is not a syzygy")
    if not h.is_form_in_powers(d):
        raise CheckFailure(f"step 1 failed: H = {h} is not a form in X^{d} and Y^{d}")
    LOGGER.info("d=%d p=%d: distinguished section with H = %s", d, p, h)
    return DistinguishedSection(components, h, gens, ctx.variant)


def step2_gcd_check(section: DistinguishedSection, d: int) -> bool:
    """gcd(H, X^d + Y^d) = 1."""
    return are_coprime(section.h_form, fermat_form(d, section.h_form.modulus))


@dataclass(frozen=True)
class SplittingRow:
    bundle: str
    twist: int
    found: int
    expected: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "bundle": self.bundle,
            "twist": self.twist,
            "found": self.found,
            "expected": self.expected,
        }


@dataclass(frozen=True)
class Step1Result:
    rows: Tuple[SplittingRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.found == r.expected for r in self.rows)

    def to_dict(self) -> Dict[str, object]:
        return {"dims": [r.to_dict() for r in self.rows], "ok": self.ok}


def step1_splitting(ctx: PeriodicityContext) -> Step1Result:
    """
    Section counts at the two twists that pin down the splittings.

    Theorem variant: S_(k+1)((3p + 1)/2) is trivial of rank 2 and
    S_k((3p + 1)/2 - t) is O(-d + 2) + O. Exploratory variant: the roles swap.
    """
    ring, top = ctx.ring, ctx.balanced_twist
    low = top - ctx.t
    lopsided = h0_line_bundle(ring, -ctx.d + 2) + 1
    if ctx.variant == THEOREM:
        plan = ((S_K, ctx.s_k, low, lopsided), (S_K1, ctx.s_k1, top, 2))
    else:
        plan = ((S_K, ctx.s_k, low, 2), (S_K1, ctx.s_k1, top, lopsided))
    rows = []
    for name, gens, twist, expected in plan:
        rows.append(SplittingRow(name, twist, syzygy_dim(gens, twist), expected))
        rows.append(SplittingRow(name, twist - 1, syzygy_dim(gens, twist - 1), 0))
    result = Step1Result(tuple(rows))
    LOGGER.info("d=%d p=%d: step 1 %s", ctx.d, ctx.p, "passed" if result.ok else "failed")
    return result


def step1_splitting_check(ctx: PeriodicityContext) -> bool:
    return step1_splitting(ctx).ok


# ---------- Step 3: generation ----------


def generating_sections(
    ctx: PeriodicityContext, section: Optional[DistinguishedSection] = None
) -> Tuple[Section, ...]:
    """
    Images in Syz(X^p, Y^p, Z^p)((3p + 1)/2) of the distinguished section and of
    the two sections of S_(k+1)((3p + 1)/2). section is built from ctx when not given.
    """
    if ctx.variant != THEOREM:
        raise ParameterError("generating sections are only defined for the theorem variant")
    ring = ctx.ring
    section = distinguished_section(ctx) if section is None else section
    space = syzygy_basis(ctx.s_k1, ctx.balanced_twist)
    sections = (lift_from_s_k(ring, section.components, ctx.t),) + tuple(
        lift_from_s_k1(ring, s, ctx.t) for s in space.basis
    )
    target = GeneratorList.monomial_powers(ring, (ctx.p, ctx.p, ctx.p))
    for s in sections:
        if not is_syzygy(target, s):
            raise CheckFailure("a generating section is not a syzygy of (X^p, Y^p, Z^p)")
    return sections


def rational_points(ring: CurveRing) -> List[Tuple[int, int, int]]:
    """F_p-rational points of Z^d = P(X, Y), one normalized representative each."""
    p, d = ring.modulus, ring.d
    candidates = [(1, y, z) for y in range(p) for z in range(p)]
    candidates += [(0, 1, z) for z in range(p)] + [(0, 0, 1)]
    return [
        (x, y, z) for x, y, z in candidates if pow(z, d, p) == ring.form.evaluate(x, y)
    ]


def _minors(sections: Sequence[Section]) -> List[GradedElement]:
    out = []
    for r1, r2 in combinations(range(len(sections)), 2):
        for c1, c2 in combinations(range(3), 2):
            minor = multiply(sections[r1][c1], sections[r2][c2]) - multiply(
                sections[r1][c2], sections[r2][c1]
            )
            if minor.degree >= 0 and not minor.is_zero:
                out.append(minor)
    return out


def generation_check(
    ctx: PeriodicityContext,
    mode: str = PAPER_REDUCTION,
    sections: Optional[Sequence[Section]] = None,
    cap: Optional[int] = None,
    section: Optional[DistinguishedSection] = None,
) -> Optional[bool]:
    """
    Do the generating sections span the fibre of Syz(X^p, Y^p, Z^p) everywhere?

    Parameters
    - mode: "paper-reduction" reduces the question to step 2 (points with z = 0;
      points with z != 0 are covered by the argument itself). "exhaustive"
      looks at the 2 x 2 minors of the section matrix.
    - sections: override the sections tested in exhaustive mode.
    - cap: last degree of the minor-ideal quotient examined, default 3p + 6.
    - section: an already built distinguished section; built from ctx if None.

    Returns
    - True or False, or None when exhaustive mode reaches the cap without an
      answer. False in exhaustive mode comes from an F_p-point where every
      minor vanishes.
    """
    if mode not in GENERATION_MODES:
        raise ParameterError(f"unknown generation mode {mode!r}, expected one of {GENERATION_MODES}")
    if mode == PAPER_REDUCTION:
        if section is None:
            section = distinguished_section(ctx)
        return step2_gcd_check(section, ctx.d)

    ring = ctx.ring
    sections = generating_sections(ctx, section) if sections is None else tuple(sections)
    minors = _minors(sections)
    if not minors:
        LOGGER.info("every 2 x 2 minor vanishes identically")
        return False
    for point in rational_points(ring):
        if all(f.evaluate(point) == 0 for f in minors):
            LOGGER.info("minors vanish at the rational point %s", point)
            return False
    cap = 3 * ctx.p + 6 if cap is None else cap
    for m in range(cap + 1):
        if quotient_dim(ring, minors, m) == 0:
            LOGGER.info("minor ideal contains every form of degree %d", m)
            return True
    LOGGER.warning("generation check inconclusive up to degree %d", cap)
    return None


# ---------- Twist windows ----------


@dataclass(frozen=True)
class WindowCheck:
    rows: Tuple[Tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return all(lhs == rhs for _, lhs, rhs in self.rows)

    def to_dict(self) -> List[Dict[str, int]]:
        return [{"m": m, "lhs": lhs, "rhs": rhs} for m, lhs, rhs in self.rows]


def compare_windows(
    lhs_gens: GeneratorList,
    rhs_gens: GeneratorList,
    shift: int,
    window: Tuple[int, int],
    max_workers: Optional[int] = None,
) -> WindowCheck:
    """syzygy_dim(lhs_gens, m) against syzygy_dim(rhs_gens, m - shift) on window."""
    low, high = window
    if low > high:
        raise ParameterError(f"empty window {window}")
    twists = list(range(low, high + 1))
    lhs = dimension_profile(lhs_gens, twists, max_workers)
    rhs = dimension_profile(rhs_gens, [m - shift for m in twists], max_workers)
    return WindowCheck(tuple(zip(twists, lhs, rhs)))


def twist_window(
    ctx: PeriodicityContext,
    window: Optional[Tuple[int, int]] = None,
    max_workers: Optional[int] = None,
) -> WindowCheck:
    ring = ctx.ring
    window = (0, 3 * ctx.p + 3) if window is None else window
    check = compare_windows(
        GeneratorList.monomial_powers(ring, (ctx.p, ctx.p, ctx.p)),
        GeneratorList.monomial_powers(ring, (1, 1, 1)),
        ctx.shift,
        window,
        max_workers,
    )
    LOGGER.info("d=%d p=%d: window %s %s", ctx.d, ctx.p, window, "equal" if check.ok else "differs")
    return check


def twist_window_check(
    ctx: PeriodicityContext,
    window: Optional[Tuple[int, int]] = None,
    max_workers: Optional[int] = None,
) -> Tuple[List[Tuple[int, int, int]], bool]:
    """(m, h0 Syz(X^p, Y^p, Z^p)(m), h0 Syz(X, Y, Z)(m - 3(p - 1)/2)) rows and their agreement."""
    check = twist_window(ctx, window, max_workers)
    return list(check.rows), check.ok


# ---------- Steps 4 and 5 ----------


@dataclass(frozen=True)
class Steps45Ledger:
    determinant_degree: int
    d: int
    shift_lhs: int
    shift_rhs: int

    @property
    def ok(self) -> bool:
        return self.determinant_degree == self.d and self.shift_lhs == self.shift_rhs

    def to_dict(self) -> Dict[str, object]:
        return {
            "determinant_degree": self.determinant_degree,
            "d": self.d,
            "shift": [self.shift_lhs, self.shift_rhs],
            "ok": self.ok,
            "note": "integer bookkeeping only; no isomorphism is constructed",
        }


def steps45_ledger(ctx: PeriodicityContext) -> Steps45Ledger:
    p = ctx.p
    top = ctx.balanced_twist
    return Steps45Ledger(
        determinant_degree=bundle_degree(ctx.d, (p, p, p), top),
        d=ctx.d,
        shift_lhs=3 * p - top - 1,
        shift_rhs=3 * (p - 1) // 2,
    )


def steps45_bookkeeping(ctx: PeriodicityContext) -> bool:
    """Syz(X^p, Y^p, Z^p)((3p + 1)/2) has degree d, and 3p - (3p + 1)/2 - 1 = 3(p - 1)/2."""
    return steps45_ledger(ctx).ok


# ---------- Satellites ----------


@dataclass(frozen=True)
class DoubleCoverReport:
    d: int
    p: int
    window: WindowCheck
    degree_at_3: int
    sections_at_3: int

    @property
    def ok(self) -> bool:
        return self.window.ok and self.degree_at_3 == 0 and self.sections_at_3 == 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "params": {"d": self.d, "p": self.p, "curve_degree": 2 * self.d},
            "window": self.window.to_dict(),
            "degree_at_3": self.degree_at_3,
            "sections_at_3": self.sections_at_3,
            "ok": self.ok,
        }


def double_cover_check(
    d: int,
    p: int,
    window: Optional[Tuple[int, int]] = None,
    max_workers: Optional[int] = None,
) -> DoubleCoverReport:
    """
    Syz(U^2, V^2, W^2) on the degree-2d Fermat curve is periodic:
    its p-th pull-back is itself twisted by -3(p - 1), it has degree 0 at twist
    3 and no sections there.
    """
    prime = as_prime(p).value
    if prime % (2 * d) != 2 * d - 1:
        raise ParameterError(f"theorem hypotheses not met: p = {prime} is not -1 mod {2 * d}")
    ring = CurveRing(prime, 2 * d)
    squares = GeneratorList.monomial_powers(ring, (2, 2, 2))
    window = (0, 6 * prime + 6) if window is None else window
    check = compare_windows(
        GeneratorList.monomial_powers(ring, (2 * prime,) * 3),
        squares,
        3 * (prime - 1),
        window,
        max_workers,
    )
    report = DoubleCoverReport(
        d, prime, check, bundle_degree(2 * d, squares.degrees, 3), syzygy_dim(squares, 3)
    )
    LOGGER.info("double cover d=%d p=%d: %s", d, prime, "ok" if report.ok else "failed")
    return report


@dataclass(frozen=True)
class Char2Report:
    dims: Dict[str, Tuple[int, int]]
    window: WindowCheck

    @property
    def ok(self) -> bool:
        return self.window.ok and all(found == expected for found, expected in self.dims.values())

    def to_dict(self) -> Dict[str, object]:
        return {
            "dims": {
                name: {"found": found, "expected": expected}
                for name, (found, expected) in self.dims.items()
            },
            "window": self.window.to_dict(),
            "ok": self.ok,
        }


def char2_cubic_suite(max_workers: Optional[int] = None) -> Char2Report:
    """The Fermat cubic in characteristic 2, where the period starts one step later."""
    ring = CurveRing(2, 3)
    q2, q4, q8 = (GeneratorList.monomial_powers(ring, (q, q, q)) for q in (2, 4, 8))
    dims = {
        "q=2, m=3": (syzygy_dim(q2, 3), 1),
        "q=2, m=2": (syzygy_dim(q2, 2), 0),
        "q=4, m=6": (syzygy_dim(q4, 6), 2),
    }
    report = Char2Report(dims, compare_windows(q8, q4, 6, (0, 30), max_workers))
    LOGGER.info("characteristic 2 cubic: %s", "ok" if report.ok else "failed")
    return report


# ---------- The full run ----------


@dataclass(frozen=True)
class PeriodicityReport:
    """
    Every checkable step at one (d, p). overall is None in exploratory mode,
    which never produces a verdict.
    """

    context: PeriodicityContext
    step1: Step1Result
    section: DistinguishedSection
    step2: bool
    step3_mode: str
    step3: Optional[bool]
    window: WindowCheck
    phi: int
    formula: Optional[int]
    steps45: Steps45Ledger

    @property
    def exploratory(self) -> bool:
        return self.context.variant == EXPLORATORY

    @property
    def hk_match(self) -> Optional[bool]:
        return None if self.formula is None else self.phi == self.formula

    @property
    def overall(self) -> Optional[bool]:
        if self.exploratory:
            return None
        return bool(
            self.step1.ok
            and self.step2
            and self.step3 is True
            and self.window.ok
            and self.hk_match
            and self.steps45.ok
        )

    def to_dict(self) -> Dict[str, object]:
        report = {
            "params": self.context.to_dict(),
            "step1": self.step1.to_dict(),
            "step2": {"gcd_ok": self.step2, "H": str(self.section.h_form)},
            "step3": {"mode": self.step3_mode, "verdict": self.step3},
            "window": self.window.to_dict(),
            "hk": {"phi": self.phi, "formula": self.formula, "match": self.hk_match},
            "steps45": self.steps45.to_dict(),
            "overall": self.overall,
            "exploratory": None,
        }
        if self.exploratory:
            h = self.section.h_form
            report["exploratory"] = {
                "section": self.section.to_dict(),
                "gcd": str(polynomial_gcd(h, fermat_form(self.context.d, h.modulus))),
                "note": "no theorem verdict for p = 1 mod 2d",
            }
        return report


def verify_theorem(
    d: int,
    p: int,
    exploratory: bool = False,
    generation_mode: str = PAPER_REDUCTION,
    window: Optional[Tuple[int, int]] = None,
    max_workers: Optional[int] = None,
) -> PeriodicityReport:
    """
    Run every check at (d, p).

    Raises ParameterError unless p = -1 mod 2d (or p = 1 mod 2d with
    exploratory), and CheckFailure if the distinguished section cannot be built.
    """
    ctx = PeriodicityContext.create(d, p, exploratory=exploratory)
    LOGGER.info("verifying d=%d p=%d (%s)", ctx.d, ctx.p, ctx.variant)
    step1 = step1_splitting(ctx)
    section = distinguished_section(ctx)
    step2 = step2_gcd_check(section, ctx.d)
    if ctx.variant == THEOREM:
        step3_mode = generation_mode
        step3 = generation_check(ctx, generation_mode, section=section)
        formula = int(hk_closed_formula(ctx.d, ctx.p, 1))
    else:
        step3_mode, step3, formula = "skipped", None, None
    report = PeriodicityReport(
        context=ctx,
        step1=step1,
        section=section,
        step2=step2,
        step3_mode=step3_mode,
        step3=step3,
        window=twist_window(ctx, window, max_workers),
        phi=hk_value(ctx.ring, 1),
        formula=formula,
        steps45=steps45_ledger(ctx),
    )
    LOGGER.info("d=%d p=%d: overall %s", ctx.d, ctx.p, report.overall)
    return report
