"""
The graded coordinate ring R = F_p[X, Y, Z] / (Z^d - P(X, Y)) of a smooth plane
curve.

R_m has the canonical basis X^i Y^j Z^k with i + j + k = m and 0 <= k < d,
ordered by k ascending and then by i descending (so Y-exponent ascending).
The single rewrite Z^d -> P(X, Y) puts every monomial in this basis.
"""

from __future__ import annotations

import logging
import operator
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import ParameterError
from ff_linalg import BinaryForm, FpMatrix, Prime, are_coprime, as_prime, fermat_form

LOGGER = logging.getLogger(__name__)

Exponents = Tuple[int, int, int]


@dataclass(frozen=True)
class CurveRing:
    """
    Parameters
    - p: the characteristic, an int or Prime.
    - d: degree of the curve, at least 2 and prime to p.
    - form: the binary form P(X, Y) of degree d; defaults to X^d + Y^d, the
      Fermat curve X^d + Y^d - Z^d = 0.

    Construction fails with ParameterError when the curve is singular.
    """

    p: Prime
    d: int
    form: Optional[BinaryForm] = None

    def __post_init__(self):
        prime = as_prime(self.p)
        try:
            d = operator.index(self.d)
        except TypeError:
            raise ParameterError(f"curve degree must be an integer, got {self.d!r}") from None
        if d < 2:
            raise ParameterError(f"curve degree must be at least 2, got {d}")
        if d % prime.value == 0:
            raise ParameterError(f"singular curve: p = {prime} divides d = {d}")
        form = self.form if self.form is not None else fermat_form(d, prime.value)
        if form.modulus != prime.value:
            raise ParameterError("P(X, Y) is defined over a different field")
        if form.degree != d:
            raise ParameterError(f"P(X, Y) must have degree {d}, got {form.degree}")
        if form.is_zero:
            raise ParameterError("P(X, Y) must be nonzero")
        # a singular point has Z = 0 and is a common root of both partials
        if not are_coprime(form.derivative_x(), form.derivative_y()):
            raise ParameterError(f"singular curve: P = {form} is not squarefree")
        object.__setattr__(self, "p", prime)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "form", form)

    @property
    def modulus(self) -> int:
        return self.p.value

    @property
    def genus(self) -> int:
        return (self.d - 1) * (self.d - 2) // 2

    @property
    def is_fermat(self) -> bool:
        return self.form == fermat_form(self.d, self.modulus)

    def describe(self) -> Dict[str, Union[int, str]]:
        return {"p": self.modulus, "d": self.d, "P": str(self.form), "genus": self.genus}


# ---------- Bases and dimensions ----------


@lru_cache(maxsize=None)
def _basis(d: int, m: int) -> Tuple[Exponents, ...]:
    if m < 0:
        return ()
    return tuple(
        (m - k - j, j, k) for k in range(min(d - 1, m) + 1) for j in range(m - k + 1)
    )


def level_offset(m: int, level: int) -> int:
    """Index of the first basis monomial of degree m with Z-exponent level."""
    return level * (m + 1) - level * (level - 1) // 2


def monomial_basis(ring: CurveRing, m: int) -> List[Exponents]:
    """Canonical basis of R_m; empty for m < 0."""
    return list(_basis(ring.d, m))


def hilbert_dim(ring: CurveRing, m: int) -> int:
    if m < 0:
        return 0
    return sum(m - k + 1 for k in range(min(ring.d - 1, m) + 1))


def h0_line_bundle(ring: CurveRing, k: int) -> int:
    """h^0(C, O_C(k)); smooth plane curves are projectively normal, so this is dim R_k."""
    return hilbert_dim(ring, k)


def riemann_roch(ring: CurveRing, k: int) -> int:
    """d*k - g + 1, equal to h0_line_bundle for k >= d - 2."""
    return ring.d * k - ring.genus + 1


def basis_index(ring: CurveRing, exponents: Exponents) -> int:
    i, j, k = exponents
    if min(i, j, k) < 0 or k >= ring.d:
        raise ParameterError(f"{exponents} is not a canonical monomial for d = {ring.d}")
    return level_offset(i + j + k, k) + j


@lru_cache(maxsize=None)
def _power_by_y(form: BinaryForm, n: int) -> np.ndarray:
    # coefficients of P^n indexed by Y-exponent
    coeffs = np.array((form**n).coeffs[::-1], dtype=np.int64)
    coeffs.setflags(write=False)
    return coeffs


# ---------- Homogeneous elements ----------


@dataclass(frozen=True)
class GradedElement:
    """
    Homogeneous element of degree `degree`, stored as coefficients over the
    canonical basis of R_degree. Negative degrees hold the zero space.
    """

    ring: CurveRing
    degree: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        p = self.ring.modulus
        coeffs = tuple(int(c) % p for c in self.coeffs)
        expected = hilbert_dim(self.ring, self.degree)
        if len(coeffs) != expected:
            raise ParameterError(
                f"degree {self.degree} needs {expected} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def terms(self) -> List[Tuple[Exponents, int]]:
        """Nonzero (exponents, coefficient) pairs in basis order."""
        return [(mono, c) for mono, c in zip(_basis(self.ring.d, self.degree), self.coeffs) if c]

    def _check_compatible(self, other: "GradedElement"):
        if self.ring != other.ring:
            raise ParameterError("elements live in different rings")

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._check_compatible(other)
        if self.degree != other.degree:
            raise ParameterError(
                f"cannot add elements of degree {self.degree} and {other.degree}"
            )
        return GradedElement(
            self.ring, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "GradedElement":
        return self.scale(-1)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def scale(self, factor: int) -> "GradedElement":
        return GradedElement(self.ring, self.degree, tuple(c * factor for c in self.coeffs))

    def __mul__(self, other: "GradedElement") -> "GradedElement":
        if not isinstance(other, GradedElement):
            return NotImplemented
        return multiply(self, other)

    def z_level(self, level: int) -> "GradedElement":
        """The part of self whose basis monomials carry Z^level."""
        keep = tuple(
            c if k == level else 0
            for (_, _, k), c in zip(_basis(self.ring.d, self.degree), self.coeffs)
        )
        return GradedElement(self.ring, self.degree, keep)

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.modulus
        x, y, z = (int(v) % p for v in point)
        return (
            sum(c * pow(x, i, p) * pow(y, j, p) * pow(z, k, p) for (i, j, k), c in self.terms())
            % p
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "degree": self.degree,
            "terms": [[i, j, k, c] for (i, j, k), c in self.terms()],
        }

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for (i, j, k), c in self.terms():
            factors = [] if c == 1 and self.degree > 0 else [str(c)]
            for name, e in (("X", i), ("Y", j), ("Z", k)):
                if e:
                    factors.append(name if e == 1 else f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)


def zero(ring: CurveRing, m: int) -> GradedElement:
    return GradedElement(ring, m, (0,) * hilbert_dim(ring, m))


def one(ring: CurveRing) -> GradedElement:
    return GradedElement(ring, 0, (1,))


def reduce_monomial(ring: CurveRing, exponents: Exponents) -> GradedElement:
    """
    Canonical representative of X^i Y^j Z^k.

    Z^k = Z^(k mod d) * P^(k div d), and P^n contributes its terms at the
    consecutive Y-exponents j .. j + d*n inside the Z^(k mod d) block.
    """
    i, j, k = exponents
    if min(i, j, k) < 0:
        raise ParameterError(f"exponents must be non-negative, got {exponents}")
    m = i + j + k
    level, n = k % ring.d, k // ring.d
    coeffs = np.zeros(hilbert_dim(ring, m), dtype=np.int64)
    power = _power_by_y(ring.form, n)
    start = level_offset(m, level) + j
    coeffs[start : start + len(power)] = power
    return GradedElement(ring, m, coeffs)


def variable_power(ring: CurveRing, variable: int, exponent: int) -> GradedElement:
    """X^e, Y^e or Z^e for variable 0, 1 or 2."""
    exponents = [0, 0, 0]
    exponents[variable] = exponent
    return reduce_monomial(ring, tuple(exponents))


def from_terms(ring: CurveRing, m: int, terms: Dict[Exponents, int]) -> GradedElement:
    """Sum of coefficient * monomial over terms; every monomial must have degree m."""
    total = zero(ring, m)
    for exponents, c in terms.items():
        if sum(exponents) != m:
            raise ParameterError(f"monomial {exponents} does not have degree {m}")
        total = total + reduce_monomial(ring, exponents).scale(c)
    return total


def from_binary_form(ring: CurveRing, form: BinaryForm) -> GradedElement:
    """Lift a form in X, Y into R (Z-level 0)."""
    if form.modulus != ring.modulus:
        raise ParameterError("form is defined over a different field")
    n = form.degree
    coeffs = [0] * hilbert_dim(ring, n)
    coeffs[: n + 1] = form.coeffs[::-1]
    return GradedElement(ring, n, tuple(coeffs))


def to_binary_form(element: GradedElement) -> BinaryForm:
    """Inverse of from_binary_form; the element must not involve Z."""
    n = element.degree
    if n < 0:
        raise ParameterError("negative-degree elements have no form")
    if any(element.coeffs[n + 1 :]):
        raise ParameterError("element involves Z")
    return BinaryForm(tuple(element.coeffs[: n + 1][::-1]), element.ring.modulus)


def form_power(ring: CurveRing, n: int) -> GradedElement:
    """P(X, Y)^n as an element of R."""
    return from_binary_form(ring, ring.form**n)


# ---------- Multiplication maps ----------


def mult_map(ring: CurveRing, f: GradedElement, m: int) -> FpMatrix:
    """
    Matrix of multiplication by f from R_m to R_(m + deg f).

    The column of basis monomial mu is the coefficient list of reduce(f * mu).
    Columns sharing a Z-exponent are filled together: one term of f shifts a
    whole block of columns by the same band.
    """
    if f.ring != ring:
        raise ParameterError("element lives in a different ring")
    p = ring.modulus
    d = ring.d
    target = m + f.degree
    n_rows, n_cols = hilbert_dim(ring, target), hilbert_dim(ring, m)
    out = np.zeros((n_rows, n_cols), dtype=np.int64)
    terms = f.terms()
    if n_cols and terms:
        for k in range(min(d - 1, m) + 1):
            js = np.arange(m - k + 1)[:, None]
            col0 = level_offset(m, k)
            for (_, b, c), coeff in terms:
                level, n = (k + c) % d, (k + c) // d
                power = _power_by_y(ring.form, n)
                rows = level_offset(target, level) + b + js + np.arange(len(power))[None, :]
                cols = np.broadcast_to(col0 + js, rows.shape)
                out[rows, cols] = np.mod(out[rows, cols] + coeff * power[None, :], p)
    return FpMatrix(out, ring.p)


def multiply(f: GradedElement, g: GradedElement) -> GradedElement:
    f._check_compatible(g)
    ring = f.ring
    degree = f.degree + g.degree
    if f.degree < 0 or g.degree < 0:
        return zero(ring, degree)
    return GradedElement(ring, degree, tuple(mult_map(ring, f, g.degree) @ g.vector))
