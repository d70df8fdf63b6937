"""
Prime-field arithmetic and dense row reduction.

Every dimension the toolkit reports is a rank or a kernel computed here.
Matrices are dense numpy int64 arrays holding least non-negative residues.
"""

from __future__ import annotations

import logging
import operator
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcd

from errors import ParameterError

LOGGER = logging.getLogger(__name__)

# p * p must fit an int64 during elimination
MAX_MODULUS = 2**31 - 1


# ---------- The characteristic ----------


@dataclass(frozen=True)
class Prime:
    """The characteristic p of the base field F_p."""

    value: int

    def __post_init__(self):
        try:
            value = operator.index(self.value)
        except TypeError:
            raise ParameterError(
                f"characteristic must be an integer, got {self.value!r}"
            ) from None
        if value > MAX_MODULUS:
            raise ParameterError(f"characteristic {value} exceeds {MAX_MODULUS}")
        if not isprime(value):
            raise ParameterError(f"{value} is not prime")
        object.__setattr__(self, "value", value)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def as_prime(p: Union[int, Prime]) -> Prime:
    return p if isinstance(p, Prime) else Prime(p)


# ---------- Dense matrices over F_p ----------


def _mulmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[-1] if a.ndim else 0
    if inner and (p - 1) ** 2 * inner >= 2**63:
        return np.mod(a.astype(object) @ b.astype(object), p).astype(np.int64)
    return np.mod(a @ b, p)


class FpMatrix:
    """
    Immutable dense matrix over F_p.

    Parameters
    - entries: nested rows or a 2-D array; reduced modulo p on construction.
    - modulus: the characteristic, as an int or a Prime.
    - shape: only needed when entries is empty, to fix the column count.
    """

    __slots__ = ("modulus", "_array")

    def __init__(self, entries, modulus: Union[int, Prime], shape=None):
        prime = as_prime(modulus)
        array = np.array(entries, dtype=np.int64)
        if shape is not None:
            array = array.reshape(shape)
        if array.ndim != 2:
            raise ParameterError(
                f"matrix entries must be two-dimensional, got shape {array.shape}"
            )
        array = np.mod(array, prime.value)
        array.setflags(write=False)
        self.modulus = prime
        self._array = array

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), modulus)

    @classmethod
    def identity(cls, n: int, modulus) -> "FpMatrix":
        return cls(np.eye(n, dtype=np.int64), modulus)

    @classmethod
    def hstack(cls, blocks: Sequence["FpMatrix"], rows: int, modulus) -> "FpMatrix":
        """Concatenate blocks left to right; an empty list gives a rows x 0 matrix."""
        if not blocks:
            return cls.zeros(rows, 0, modulus)
        for block in blocks:
            if block.rows != rows:
                raise ParameterError(
                    f"block has {block.rows} rows, expected {rows}"
                )
        return cls(np.hstack([block._array for block in blocks]), modulus)

    @property
    def p(self) -> int:
        return self.modulus.value

    @property
    def rows(self) -> int:
        return self._array.shape[0]

    @property
    def cols(self) -> int:
        return self._array.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._array.shape

    def to_array(self) -> np.ndarray:
        return self._array.copy()

    def to_lists(self) -> List[List[int]]:
        return self._array.tolist()

    def __matmul__(self, other):
        if isinstance(other, FpMatrix):
            if other.p != self.p:
                raise ParameterError("matrices live over different fields")
            if self.cols != other.rows:
                raise ParameterError(f"cannot multiply {self.shape} by {other.shape}")
            return FpMatrix(_mulmod(self._array, other._array, self.p), self.modulus)
        vector = np.asarray(other, dtype=np.int64)
        if vector.shape != (self.cols,):
            raise ParameterError(
                f"vector of length {vector.shape} does not match {self.cols} columns"
            )
        return _mulmod(self._array, np.mod(vector, self.p), self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self._array, other._array)

    __hash__ = None

    def __repr__(self) -> str:
        return f"FpMatrix({self.rows}x{self.cols} over F_{self.p})"


def _eliminate(array: np.ndarray, p: int, reduced: bool) -> Tuple[np.ndarray, List[int]]:
    """
    Row-reduce a copy of array modulo p.

    Pivots are the first nonzero entry scanning columns left to right and rows
    top to bottom. With reduced=True the result is the reduced row-echelon
    form; otherwise only entries below each pivot are cleared.
    """
    a = np.array(array, dtype=np.int64)
    n_rows, n_cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        candidates = np.flatnonzero(a[r:, c])
        if candidates.size == 0:
            continue
        pivot_row = r + int(candidates[0])
        if pivot_row != r:
            a[[r, pivot_row]] = a[[pivot_row, r]]
        inverse = pow(int(a[r, c]), -1, p)
        a[r, c:] = np.mod(a[r, c:] * inverse, p)
        if reduced:
            targets = np.flatnonzero(a[:, c])
            targets = targets[targets != r]
        else:
            targets = r + 1 + np.flatnonzero(a[r + 1 :, c])
        if targets.size:
            factors = a[targets, c]
            a[targets, c:] = np.mod(a[targets, c:] - np.outer(factors, a[r, c:]), p)
        pivots.append(c)
        r += 1
    return a, pivots


def rank(matrix: FpMatrix) -> int:
    """Row rank of matrix over F_p."""
    _, pivots = _eliminate(matrix._array, matrix.p, reduced=False)
    return len(pivots)


def rref(matrix: FpMatrix) -> Tuple[FpMatrix, List[int]]:
    """Reduced row-echelon form together with the pivot columns."""
    reduced, pivots = _eliminate(matrix._array, matrix.p, reduced=True)
    return FpMatrix(reduced, matrix.modulus), pivots


def kernel_array(matrix: FpMatrix) -> np.ndarray:
    """
    Basis of the right kernel {v : M v = 0} as the rows of an int64 array.

    The rows are in reduced row-echelon form, so the basis is canonical for the
    kernel and ordered by pivot column.
    """
    p = matrix.p
    n_cols = matrix.cols
    reduced, pivots = _eliminate(matrix._array, p, reduced=True)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    kernel = np.zeros((len(free), n_cols), dtype=np.int64)
    if not free:
        return kernel
    kernel[np.arange(len(free)), free] = 1
    if pivots:
        kernel[:, pivots] = np.mod(-reduced[: len(pivots)][:, free].T, p)
    kernel, _ = _eliminate(kernel, p, reduced=True)
    LOGGER.debug(
        "kernel of %dx%d matrix over F_%d has dimension %d",
        matrix.rows,
        n_cols,
        p,
        len(free),
    )
    return kernel


def kernel_basis(matrix: FpMatrix) -> List[Tuple[int, ...]]:
    """Kernel basis as coefficient rows; its size is cols - rank."""
    return [tuple(int(x) for x in row) for row in kernel_array(matrix)]


# ---------- Binary forms ----------


def _convolve_mod(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    if (p - 1) ** 2 * min(len(a), len(b)) >= 2**63:
        out = np.convolve(np.array(a, dtype=object), np.array(b, dtype=object))
    else:
        out = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
    return [int(x) % p for x in out]


@dataclass(frozen=True)
class BinaryForm:
    """
    Homogeneous form sum_i coeffs[i] * X^i * Y^(n - i) over F_p, n = len(coeffs) - 1.

    The zero form still carries its degree.
    """

    coeffs: Tuple[int, ...]
    modulus: int

    def __post_init__(self):
        p = as_prime(self.modulus).value
        coeffs = tuple(int(c) % p for c in self.coeffs)
        if not coeffs:
            raise ParameterError("a binary form needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "modulus", p)

    @classmethod
    def monomial(cls, i: int, j: int, modulus: int, coefficient: int = 1) -> "BinaryForm":
        """coefficient * X^i * Y^j."""
        coeffs = [0] * (i + j + 1)
        coeffs[i] = coefficient
        return cls(tuple(coeffs), modulus)

    @classmethod
    def zero(cls, degree: int, modulus: int) -> "BinaryForm":
        return cls((0,) * (degree + 1), modulus)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _same_field(self, other: "BinaryForm"):
        if self.modulus != other.modulus:
            raise ParameterError("binary forms live over different fields")

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        self._same_field(other)
        if self.degree != other.degree:
            raise ParameterError(
                f"cannot add forms of degree {self.degree} and {other.degree}"
            )
        return BinaryForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.modulus)

    def __neg__(self) -> "BinaryForm":
        return self.scale(-1)

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def scale(self, factor: int) -> "BinaryForm":
        return BinaryForm(tuple(c * factor for c in self.coeffs), self.modulus)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        if not isinstance(other, BinaryForm):
            return NotImplemented
        self._same_field(other)
        return BinaryForm(tuple(_convolve_mod(self.coeffs, other.coeffs, self.modulus)), self.modulus)

    def __pow__(self, exponent: int) -> "BinaryForm":
        if exponent < 0:
            raise ParameterError("negative powers of a form are not forms")
        result = BinaryForm((1,), self.modulus)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def derivative_x(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm.zero(0, self.modulus)
        return BinaryForm(
            tuple(i * c for i, c in enumerate(self.coeffs) if i > 0), self.modulus
        )

    def derivative_y(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm.zero(0, self.modulus)
        n = self.degree
        return BinaryForm(
            tuple((n - i) * c for i, c in enumerate(self.coeffs) if i < n), self.modulus
        )

    def substitute_powers(self, d: int) -> "BinaryForm":
        """Substitute U = X^d and V = Y^d."""
        coeffs = [0] * (d * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            coeffs[d * i] = c
        return BinaryForm(tuple(coeffs), self.modulus)

    def is_form_in_powers(self, d: int) -> bool:
        """True when only X^(d*a) Y^(d*b) terms occur."""
        return all(c == 0 for i, c in enumerate(self.coeffs) if i % d or (self.degree - i) % d)

    def evaluate(self, x: int, y: int) -> int:
        p = self.modulus
        n = self.degree
        return sum(c * pow(x, i, p) * pow(y, n - i, p) for i, c in enumerate(self.coeffs) if c) % p

    def first_nonzero(self) -> Optional[int]:
        return next((c for c in self.coeffs if c), None)

    def __str__(self) -> str:
        terms = []
        n = self.degree
        for i, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            parts = [] if c == 1 and n > 0 else [str(c)]
            if i:
                parts.append("X" if i == 1 else f"X^{i}")
            if n - i:
                parts.append("Y" if n - i == 1 else f"Y^{n - i}")
            terms.append("*".join(parts))
        return " + ".join(terms) if terms else "0"


def fermat_form(d: int, modulus: int) -> BinaryForm:
    """X^d + Y^d."""
    coeffs = [0] * (d + 1)
    coeffs[0] = coeffs[d] = 1
    return BinaryForm(tuple(coeffs), modulus)


def _split_y_power(form: BinaryForm) -> Tuple[int, List[int]]:
    """Split a nonzero form as Y^v * f(X, Y); return v and f(X, 1) densely, highest power first."""
    top = max(i for i, c in enumerate(form.coeffs) if c)
    return form.degree - top, [ZZ(c) for c in reversed(form.coeffs[: top + 1])]


def polynomial_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """
    Greatest common divisor of two binary forms over F_p.

    Parameters
    - f, g: binary forms over the same field, not both zero.

    Returns
    - The gcd, normalized so that after removing its power of Y the leading
      X-coefficient is 1. It has degree 0 exactly when f and g share no
      projective root over the algebraic closure.

    Notes
    - The common power of Y is split off first, then the gcd of the
      Y-dehomogenized parts is taken with sympy's dense F_p arithmetic.
    """
    f._same_field(g)
    p = f.modulus
    if f.is_zero and g.is_zero:
        raise ParameterError("undefined gcd: both forms are zero")
    if f.is_zero:
        v, dense = _split_y_power(g)
        v_common, common = v, gf_gcd([], dense, p, ZZ)
    elif g.is_zero:
        v, dense = _split_y_power(f)
        v_common, common = v, gf_gcd(dense, [], p, ZZ)
    else:
        v_f, dense_f = _split_y_power(f)
        v_g, dense_g = _split_y_power(g)
        v_common, common = min(v_f, v_g), gf_gcd(dense_f, dense_g, p, ZZ)
    coeffs = tuple(int(c) for c in reversed(common)) + (0,) * v_common
    return BinaryForm(coeffs, p)


def are_coprime(f: BinaryForm, g: BinaryForm) -> bool:
    return polynomial_gcd(f, g).degree == 0
