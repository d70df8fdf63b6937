#!/usr/bin/python3 -tt
# Project: frobenius_periodicity
# Filename: hilbert_kunz.py
# claudiadeluna
# PyCharm

"""
Hilbert-Kunz functions of Fermat-type curve rings.

phi(e) is the length of R / (X^q, Y^q, Z^q) with q = p^e. Its degree-m piece
is hilbert_dim(m) minus the rank of the stacked map R_(m-q)^3 -> R_m, and it
also equals h0(m) - 3 h0(m - q) + h^0(Syz(X^q, Y^q, Z^q)(m)); the two are
computed along different routes and compared by crosscheck_star_identity.
"""

__author__ = "Claudia de Luna (claudia@indigowire.net)"
__version__ = ": 1.0 $"
__date__ = "11/25/25"
__copyright__ = "Copyright (c) 2025 Claudia"
__license__ = "Python"

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import pandas as pd

from errors import CheckFailure, ParameterError
from ff_linalg import Prime, as_prime
from graded_ring import CurveRing, h0_line_bundle
from syzygy import GeneratorList, quotient_dim, syzygy_basis

LOGGER = logging.getLogger(__name__)

MATCHES = "matches-closed-formula"
DEVIATES = "deviates"
INCONCLUSIVE = "inconclusive"


def fraction_text(value: Optional[Fraction]) -> Optional[str]:
    """Exact rationals are serialized as "a/b" strings (integers as "a")."""
    return None if value is None else str(value)


# ---------- Colengths ----------


def frobenius_generators(ring: CurveRing, q: int) -> GeneratorList:
    """(X^q, Y^q, Z^q), the generators of the Frobenius power of the maximal ideal."""
    if q < 1:
        raise ParameterError(f"q must be at least 1, got {q}")
    return GeneratorList.monomial_powers(ring, (q, q, q))


def colength_at(ring: CurveRing, q: int, m: int) -> int:
    """dim (R / (X^q, Y^q, Z^q))_m."""
    return quotient_dim(ring, frobenius_generators(ring, q).generators, m)


def _safety_cap(ring: CurveRing, q: int) -> int:
    return 3 * q + 3 * ring.d


def colength_profile(ring: CurveRing, q: int) -> List[int]:
    """
    Per-degree colengths for m = 0, 1, 2, ... up to (not including) the first
    zero entry; past it every entry is zero because the quotient is generated
    in degree 0.

    Raises CheckFailure if no zero appears by m = 3q + 3d.
    """
    frobenius_generators(ring, q)
    profile: List[int] = []
    for m in range(_safety_cap(ring, q) + 1):
        entry = colength_at(ring, q, m)
        if entry == 0:
            LOGGER.debug("q=%d: colength profile ends at degree %d", q, m)
            return profile
        profile.append(entry)
    raise CheckFailure(f"colength profile for q={q} did not terminate by degree {m}")


def _q_for(ring: CurveRing, e: int) -> int:
    if e < 0:
        raise ParameterError(f"e must be non-negative, got {e}")
    return ring.modulus**e


def hk_value(ring: CurveRing, e: int) -> int:
    """phi_R(e)."""
    return sum(colength_profile(ring, _q_for(ring, e)))


def hk_value_uncapped(ring: CurveRing, e: int) -> int:
    """phi_R(e) summed over the whole range [0, 3q + 3d], without stopping at a zero."""
    q = _q_for(ring, e)
    return sum(colength_at(ring, q, m) for m in range(_safety_cap(ring, q) + 1))


def crosscheck_star_identity(ring: CurveRing, q: int, m: int) -> bool:
    """Rank-based colength at m against h0(m) - 3 h0(m - q) + kernel dimension."""
    gens = frobenius_generators(ring, q)
    lhs = colength_at(ring, q, m)
    rhs = (
        h0_line_bundle(ring, m)
        - 3 * h0_line_bundle(ring, m - q)
        + syzygy_basis(gens, m).dimension
    )
    if lhs != rhs:
        LOGGER.warning("q=%d, m=%d: colength %d but identity gives %d", q, m, lhs, rhs)
    return lhs == rhs


# ---------- Closed formulas ----------


def semistable_baseline(d: int, q: int) -> Fraction:
    """(3d/4) q^2 + 1 - 3d/4, the value phi takes when Syz(X, Y, Z) is strongly semistable."""
    slope = Fraction(3 * d, 4)
    return slope * q * q + 1 - slope


def closed_formula_applies(d: int, p: Union[int, Prime]) -> bool:
    p = int(p)
    return p % (2 * d) == 2 * d - 1


def hk_closed_formula(d: int, p: Union[int, Prime], e: int) -> Fraction:
    """
    phi_R(e) on the degree-d Fermat curve for p = -1 mod 2d.

    Raises ParameterError outside that congruence class.
    """
    p = as_prime(p).value
    if not closed_formula_applies(d, p):
        raise ParameterError(f"formula out of range: p = {p} is not -1 mod {2 * d}")
    value = semistable_baseline(d, p**e)
    if value.denominator != 1:
        raise CheckFailure(f"closed formula is not integral at d={d}, p={p}, e={e}: {value}")
    return value


def elliptic_formula(p: Union[int, Prime], e: int) -> Fraction:
    """(9/4) p^(2e) - 5/4, phi for a plane cubic in odd characteristic."""
    p = as_prime(p).value
    if p == 2:
        raise ParameterError("the elliptic formula needs odd characteristic")
    return Fraction(9, 4) * p ** (2 * e) - Fraction(5, 4)


def monsky_deviation_formula(d: int, p: Union[int, Prime]) -> Fraction:
    """
    Hilbert-Kunz multiplicity of the degree-d Fermat ring in the classes where
    it exceeds 3d/4.

    - d even, p = d - 1 or d + 1 mod 2d: 3d/4 + (d(d - 3))^2 / (4 d p^2)
    - d odd, p = d mod 2d: 3d/4 + d^3 / (4 p^2)
    """
    p = as_prime(p).value
    residue = p % (2 * d)
    base = Fraction(3 * d, 4)
    if d % 2 == 0 and residue in (d - 1, d + 1):
        return base + Fraction((d * (d - 3)) ** 2, 4 * d * p * p)
    if d % 2 == 1 and residue == d:
        return base + Fraction(d**3, 4 * p * p)
    raise ParameterError(f"no deviation formula for d = {d}, p = {p} ({p} = {residue} mod {2 * d})")


def _deviation_limit(d: int, p: int) -> Optional[Fraction]:
    try:
        return monsky_deviation_formula(d, p)
    except ParameterError:
        return None


# ---------- Records and summaries ----------


@dataclass(frozen=True)
class HKRecord:
    e: int
    q: int
    profile: Tuple[int, ...]
    total: int

    @property
    def estimate(self) -> Fraction:
        """phi(e) / q^2."""
        return Fraction(self.total, self.q * self.q)

    def to_dict(self) -> Dict[str, object]:
        return {"e": self.e, "q": self.q, "profile": list(self.profile), "phi": self.total}


def hk_record(ring: CurveRing, e: int, crosscheck: bool = False) -> HKRecord:
    """
    One row of the Hilbert-Kunz function.

    With crosscheck, every degree of the profile (and the terminal zero) is
    verified against the syzygy identity and the total against the uncapped
    sum; a disagreement raises CheckFailure.
    """
    q = _q_for(ring, e)
    profile = colength_profile(ring, q)
    total = sum(profile)
    if crosscheck:
        for m in range(len(profile) + 1):
            if not crosscheck_star_identity(ring, q, m):
                raise CheckFailure(f"syzygy identity fails at q={q}, m={m}")
        uncapped = hk_value_uncapped(ring, e)
        if uncapped != total:
            raise CheckFailure(f"q={q}: capped total {total} but uncapped total {uncapped}")
    LOGGER.info("d=%d p=%d e=%d: phi=%d", ring.d, ring.modulus, e, total)
    return HKRecord(e, q, tuple(profile), total)


@dataclass(frozen=True)
class HKSummary:
    """
    Hilbert-Kunz records for e = 1..e_max with the closed-formula comparison.

    closed_formula holds one value per record when the formula applies to the
    ring and is empty otherwise; deviation_limit is set in the congruence
    classes with a known multiplicity above 3d/4.
    """

    d: int
    p: int
    records: Tuple[HKRecord, ...]
    verdict: str
    closed_formula: Tuple[Fraction, ...] = ()
    deviation_limit: Optional[Fraction] = None
    deviations: Tuple[Fraction, ...] = ()

    @property
    def ehk_estimates(self) -> List[Fraction]:
        return [r.estimate for r in self.records]

    @property
    def matches(self) -> List[Optional[bool]]:
        if not self.closed_formula:
            return [None] * len(self.records)
        return [r.total == f for r, f in zip(self.records, self.closed_formula)]

    def to_dict(self) -> Dict[str, object]:
        formula = list(self.closed_formula) or [None] * len(self.records)
        rows = []
        for record, value, match in zip(self.records, formula, self.matches):
            row = record.to_dict()
            row.update(
                {
                    "closed_formula": fraction_text(value),
                    "match": match,
                    "ehk_estimate": fraction_text(record.estimate),
                }
            )
            rows.append(row)
        return {
            "d": self.d,
            "p": self.p,
            "records": rows,
            "verdict": self.verdict,
            "deviation": {
                "limit": fraction_text(self.deviation_limit),
                "distances": [fraction_text(x) for x in self.deviations],
            },
        }


def _verdict(ring: CurveRing, records, formula) -> str:
    if formula and all(r.total == f for r, f in zip(records, formula)):
        return MATCHES
    if formula:
        LOGGER.warning("d=%d p=%d: closed formula applies but does not match", ring.d, ring.modulus)
    if any(r.total > semistable_baseline(ring.d, r.q) for r in records):
        return DEVIATES
    return INCONCLUSIVE


def hk_summary(ring: CurveRing, e_max: int, crosscheck: bool = False) -> HKSummary:
    if e_max < 1:
        raise ParameterError(f"e_max must be at least 1, got {e_max}")
    records = tuple(hk_record(ring, e, crosscheck=crosscheck) for e in range(1, e_max + 1))
    formula: Tuple[Fraction, ...] = ()
    limit = None
    if ring.is_fermat:
        if closed_formula_applies(ring.d, ring.modulus):
            formula = tuple(hk_closed_formula(ring.d, ring.modulus, r.e) for r in records)
        limit = _deviation_limit(ring.d, ring.modulus)
    deviations = tuple(abs(r.estimate - limit) for r in records) if limit is not None else ()
    verdict = _verdict(ring, records, formula)
    LOGGER.info("d=%d p=%d: verdict %s", ring.d, ring.modulus, verdict)
    return HKSummary(ring.d, ring.modulus, records, verdict, formula, limit, deviations)


def strong_semistability_verdict(ring: CurveRing, e_max: int) -> str:
    """
    One of "matches-closed-formula", "deviates" or "inconclusive".

    "deviates" is a certificate: excess colength equals excess syzygy sections,
    which rules out strong semistability of Syz(X, Y, Z).
    """
    return hk_summary(ring, e_max).verdict


def hk_table(summary: HKSummary) -> pd.DataFrame:
    """Flat per-e table; closed_formula and match are blank where the formula does not apply."""
    data = summary.to_dict()
    frame = pd.DataFrame(
        [
            {
                "e": row["e"],
                "q": row["q"],
                "phi": row["phi"],
                "closed_formula": row["closed_formula"],
                "match": row["match"],
                "ehk_estimate": row["ehk_estimate"],
                "verdict": summary.verdict,
            }
            for row in data["records"]
        ],
        columns=["e", "q", "phi", "closed_formula", "match", "ehk_estimate", "verdict"],
    )
    return frame
