"""
Global sections of twisted syzygy bundles.

On a smooth plane curve the sections of Syz(f_1, ..., f_n)(m) are the degree-m
syzygies sum s_i f_i = 0 with s_i in R_(m - d_i), so every h^0 here is the
kernel dimension of a stacked multiplication map. The same construction over
F_p[X, Y] gives sections on the projective line and its splitting types.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from errors import CheckFailure, ParameterError
from ff_linalg import BinaryForm, FpMatrix, kernel_array, polynomial_gcd, rank
from graded_ring import (
    CurveRing,
    GradedElement,
    form_power,
    h0_line_bundle,
    hilbert_dim,
    mult_map,
    multiply,
    variable_power,
)

LOGGER = logging.getLogger(__name__)

Section = Tuple[GradedElement, ...]


# ---------- Generator lists on the curve ----------


@dataclass(frozen=True)
class GeneratorList:
    """
    Homogeneous generators f_1, ..., f_n of R (n >= 2).

    The R_+-primary hypothesis is assumed, not verified; monomial powers
    X^a1, Y^a2, Z^a3 always satisfy it. Degree-0 generators are allowed.
    """

    ring: CurveRing
    generators: Tuple[GradedElement, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(gens) < 2:
            raise ParameterError(f"need at least two generators, got {len(gens)}")
        for f in gens:
            if f.ring != self.ring:
                raise ParameterError("generator lives in a different ring")
            if f.degree < 0 or f.is_zero:
                raise ParameterError("generators must be nonzero and homogeneous")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def monomial_powers(cls, ring: CurveRing, exponents: Sequence[int]) -> "GeneratorList":
        """(X^a1, Y^a2, Z^a3)."""
        if len(exponents) != 3:
            raise ParameterError(f"need three exponents, got {len(exponents)}")
        if min(exponents) < 0:
            raise ParameterError(f"exponents must be non-negative, got {tuple(exponents)}")
        return cls(ring, tuple(variable_power(ring, v, a) for v, a in enumerate(exponents)))

    @classmethod
    def trinomial(cls, ring: CurveRing, a1: int, a2: int, k: int) -> "GeneratorList":
        """(X^a1, Y^a2, P(X, Y)^k), the generators of S_k."""
        return cls(
            ring,
            (variable_power(ring, 0, a1), variable_power(ring, 1, a2), form_power(ring, k)),
        )

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(f.degree for f in self.generators)

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class SyzygySpace:
    """Basis of Gamma(C, Syz(f_1, ..., f_n)(m)); component i has degree m - d_i."""

    generators: GeneratorList
    twist: int
    basis: Tuple[Section, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_dict(self) -> Dict[str, object]:
        return {
            "m": self.twist,
            "dim": self.dimension,
            "basis": [[s.to_dict() for s in section] for section in self.basis],
        }


def syzygy_matrix(gens: GeneratorList, m: int) -> FpMatrix:
    """Stacked map (+)_i R_(m - d_i) -> R_m, v -> sum_i f_i v_i."""
    ring = gens.ring
    blocks = [mult_map(ring, f, m - f.degree) for f in gens.generators]
    return FpMatrix.hstack(blocks, hilbert_dim(ring, m), ring.p)


def quotient_dim(ring: CurveRing, elements: Sequence[GradedElement], m: int) -> int:
    """dim (R / (elements))_m for homogeneous elements of non-negative degree."""
    blocks = [mult_map(ring, f, m - f.degree) for f in elements]
    matrix = FpMatrix.hstack(blocks, hilbert_dim(ring, m), ring.p)
    if matrix.cols == 0:
        return matrix.rows
    return matrix.rows - rank(matrix)


def syzygy_dim(gens: GeneratorList, m: int) -> int:
    matrix = syzygy_matrix(gens, m)
    if matrix.cols == 0:
        return 0
    return matrix.cols - rank(matrix)


def _split_vector(ring: CurveRing, vector: np.ndarray, degrees: Sequence[int]) -> Section:
    parts = []
    start = 0
    for degree in degrees:
        size = hilbert_dim(ring, degree)
        parts.append(GradedElement(ring, degree, vector[start : start + size]))
        start += size
    return tuple(parts)


def syzygy_basis(gens: GeneratorList, m: int) -> SyzygySpace:
    """
    Normalized basis of the degree-m syzygies.

    The kernel is taken in reduced row-echelon form over the concatenated
    coordinates of the components, so the basis is canonical.
    """
    matrix = syzygy_matrix(gens, m)
    degrees = [m - d for d in gens.degrees]
    kernel = kernel_array(matrix) if matrix.cols else np.zeros((0, 0), dtype=np.int64)
    basis = tuple(_split_vector(gens.ring, row, degrees) for row in kernel)
    LOGGER.debug("syzygy space of %s at twist %d has dimension %d", gens.degrees, m, len(basis))
    return SyzygySpace(gens, m, basis)


def section_vector(section: Section) -> np.ndarray:
    """Concatenated coordinates of a section."""
    if not section:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate([s.vector for s in section])


def syzygy_relation(gens: GeneratorList, section: Section) -> GradedElement:
    """sum_i s_i f_i; zero exactly when section is a syzygy."""
    if len(section) != len(gens):
        raise ParameterError(f"section has {len(section)} components, expected {len(gens)}")
    products = [multiply(s, f) for s, f in zip(section, gens.generators)]
    degrees = {g.degree for g in products}
    if len(degrees) != 1:
        raise ParameterError(f"components do not share a total degree: {sorted(degrees)}")
    total = products[0]
    for g in products[1:]:
        total = total + g
    return total


def is_syzygy(gens: GeneratorList, section: Section) -> bool:
    try:
        return syzygy_relation(gens, section).is_zero
    except ParameterError:
        return False


def dimension_profile(
    gens: GeneratorList, twists: Iterable[int], max_workers: Optional[int] = None
) -> List[int]:
    """syzygy_dim at each twist, in the order given; twists are independent."""
    twists = list(twists)
    if max_workers and max_workers > 1 and len(twists) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(lambda m: syzygy_dim(gens, m), twists))
    return [syzygy_dim(gens, m) for m in twists]


# ---------- Degrees and witnesses ----------


def bundle_degree(d: int, gen_degrees: Sequence[int], m: int) -> int:
    """Degree of Syz(f_1, ..., f_n)(m) on a degree-d plane curve: ((n - 1) m - sum d_i) d."""
    return ((len(gen_degrees) - 1) * m - sum(gen_degrees)) * d


def euler_characteristic_dim(gens: GeneratorList, m: int) -> int:
    """sum_i h0(m - d_i) - h0(m); equals syzygy_dim once H^1 of the twist vanishes."""
    ring = gens.ring
    return sum(h0_line_bundle(ring, m - d) for d in gens.degrees) - h0_line_bundle(ring, m)


@dataclass(frozen=True)
class Witness:
    m: int
    degree: int
    section: Section

    def to_dict(self) -> Dict[str, object]:
        return {
            "m": self.m,
            "degree": self.degree,
            "section": [s.to_dict() for s in self.section],
        }


def instability_witness(gens: GeneratorList, m_range: Tuple[int, int]) -> Optional[Witness]:
    """
    Search a twist range for a section of a negative-degree twist.

    Parameters
    - gens: exactly three generators (the rank-2 case).
    - m_range: inclusive (low, high) twist bounds.

    Returns
    - The smallest witness, or None. A witness certifies that the bundle is not
      semistable; None only means that no witness was found in the range.
    """
    if len(gens) != 3:
        raise ParameterError("instability witnesses are searched for three generators")
    low, high = m_range
    for m in range(low, high + 1):
        degree = bundle_degree(gens.ring.d, gens.degrees, m)
        if degree >= 0:
            break
        space = syzygy_basis(gens, m)
        if space.dimension:
            LOGGER.info("instability witness at twist %d, bundle degree %d", m, degree)
            return Witness(m, degree, space.basis[0])
    return None


# ---------- The projective line ----------


@dataclass(frozen=True)
class SplittingType:
    """Syz on P^1 is isomorphic to O(-a) + O(-b)."""

    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise ParameterError(f"splitting type needs a <= b, got ({self.a}, {self.b})")

    def expected_dim(self, m: int) -> int:
        return max(0, m - self.a + 1) + max(0, m - self.b + 1)

    def to_dict(self) -> Dict[str, int]:
        return {"a": self.a, "b": self.b}


def binary_mult_map(form: BinaryForm, m: int) -> FpMatrix:
    """Multiplication by form from degree-m forms to degree m + deg(form) forms."""
    n = form.degree
    n_rows, n_cols = max(0, m + n + 1), max(0, m + 1)
    out = np.zeros((n_rows, n_cols), dtype=np.int64)
    if n_cols:
        coeffs = np.array(form.coeffs, dtype=np.int64)
        cols = np.arange(n_cols)[:, None]
        rows = cols + np.arange(n + 1)[None, :]
        out[rows, np.broadcast_to(cols, rows.shape)] = coeffs[None, :]
    return FpMatrix(out, form.modulus)


def p1_syzygy_matrix(forms: Sequence[BinaryForm], m: int) -> FpMatrix:
    blocks = [binary_mult_map(f, m - f.degree) for f in forms]
    return FpMatrix.hstack(blocks, max(0, m + 1), forms[0].modulus)


def p1_syzygy_dim(forms: Sequence[BinaryForm], m: int) -> int:
    matrix = p1_syzygy_matrix(forms, m)
    if matrix.cols == 0:
        return 0
    return matrix.cols - rank(matrix)


def p1_syzygy_basis(forms: Sequence[BinaryForm], m: int) -> List[Tuple[Optional[BinaryForm], ...]]:
    """Normalized syzygies on P^1; a component of negative degree is None."""
    matrix = p1_syzygy_matrix(forms, m)
    if matrix.cols == 0:
        return []
    p = forms[0].modulus
    basis = []
    for row in kernel_array(matrix):
        parts: List[Optional[BinaryForm]] = []
        start = 0
        for f in forms:
            degree = m - f.degree
            if degree < 0:
                parts.append(None)
                continue
            parts.append(BinaryForm(tuple(row[start : start + degree + 1]), p))
            start += degree + 1
        basis.append(tuple(parts))
    return basis


def _check_primary(forms: Sequence[BinaryForm]):
    if len(forms) != 3:
        raise ParameterError(f"splitting types are computed for three forms, got {len(forms)}")
    if any(f.is_zero for f in forms):
        raise ParameterError("forms must be nonzero")
    common = polynomial_gcd(polynomial_gcd(forms[0], forms[1]), forms[2])
    if common.degree > 0:
        raise ParameterError(f"not R_+-primary: the forms share the factor {common}")


def splitting_type_p1(forms: Sequence[BinaryForm]) -> SplittingType:
    """
    Splitting type of Syz(f_1, f_2, f_3) on P^1.

    a is the first twist with a section and b = sum d_i - a; the whole profile
    on [0, a + b + 2] is then checked against O(-a) + O(-b).
    """
    _check_primary(forms)
    total = sum(f.degree for f in forms)
    a = next((m for m in range(total + 1) if p1_syzygy_dim(forms, m) > 0), None)
    if a is None:
        raise CheckFailure(f"no syzygy up to twist {total}")
    if 2 * a > total:
        raise CheckFailure(f"first syzygy at twist {a} exceeds half the total degree {total}")
    split = SplittingType(a, total - a)
    for m in range(split.a + split.b + 3):
        found = p1_syzygy_dim(forms, m)
        if found != split.expected_dim(m):
            raise CheckFailure(
                f"twist {m}: {found} sections, split model {split} predicts {split.expected_dim(m)}"
            )
    return split


@dataclass(frozen=True)
class PullbackCheck:
    splitting: SplittingType
    rows: Tuple[Tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return all(curve == model for _, curve, model in self.rows)


def pullback_compatibility(ring: CurveRing, a1: int, a2: int, k: int) -> PullbackCheck:
    """
    Compare sections of Syz_C(X^a1, Y^a2, P^k)(m) with the pull-back of its
    splitting on Proj F_p[X, Y]: hilbert_dim(m - a) + hilbert_dim(m - b).
    """
    forms = (
        BinaryForm.monomial(a1, 0, ring.modulus),
        BinaryForm.monomial(0, a2, ring.modulus),
        ring.form**k,
    )
    split = splitting_type_p1(forms)
    gens = GeneratorList.trinomial(ring, a1, a2, k)
    rows = tuple(
        (m, syzygy_dim(gens, m), hilbert_dim(ring, m - split.a) + hilbert_dim(ring, m - split.b))
        for m in range(split.a + split.b + ring.d + 1)
    )
    return PullbackCheck(split, rows)
