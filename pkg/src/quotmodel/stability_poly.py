"""Framed Hilbert polynomials and (H, delta)-slopes of framed modules.

Intersection numbers such as ``c_1(E) . H^{m-1}`` are user supplied; this
module only does the exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import ParameterOutOfRange, ZeroRank


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial in one variable with rational coefficients, ascending degree."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self):
        coeffs = [_q(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coefficients) - 1

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self.coefficients, other.coefficients
        size = max(len(a), len(b))
        return RationalPoly(tuple((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0)
                                  for k in range(size)))

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def scale(self, c) -> "RationalPoly":
        c = _q(c)
        return RationalPoly(tuple(c * x for x in self.coefficients))

    def __call__(self, k) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * k + c
        return acc

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for deg in range(self.degree, -1, -1):
            c = self.coefficients[deg]
            if c:
                terms.append(f"{c}" + ("" if deg == 0 else "*k" if deg == 1 else f"*k^{deg}"))
        return " + ".join(terms)


@dataclass(frozen=True)
class DeltaParams:
    """``delta(k) = d_1 k^{m-1}/(m-1)! + d_2 k^{m-2}/(m-2)! + ... + d_m``."""

    m: int
    delta_coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(_q(c) for c in self.delta_coeffs)
        object.__setattr__(self, "delta_coeffs", coeffs)
        if len(coeffs) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(coeffs)}")
        if coeffs[0] <= 0:
            raise ParameterOutOfRange("leading coefficient delta_1 must be positive")

    @property
    def delta1(self) -> Fraction:
        return self.delta_coeffs[0]

    def to_poly(self) -> RationalPoly:
        coeffs = [Fraction(0)] * self.m
        for idx, d in enumerate(self.delta_coeffs):
            deg = self.m - 1 - idx
            coeffs[deg] = d / factorial(deg)
        return RationalPoly(tuple(coeffs))


def framed_hilbert_poly(P_E: RationalPoly, epsilon: int, delta: RationalPoly) -> RationalPoly:
    """``P_E - epsilon * delta`` where ``epsilon`` is 1 when the framing is nonzero."""
    if epsilon not in (0, 1):
        raise ValueError("epsilon must be 0 or 1")
    return P_E - delta.scale(epsilon)


def slope(c1H, epsilon: int, delta1, rank) -> Fraction:
    """``(c_1(E).H^{m-1} - epsilon * delta_1) / rk E``."""
    if epsilon not in (0, 1):
        raise ValueError("epsilon must be 0 or 1")
    rank = _q(rank)
    if rank <= 0:
        raise ZeroRank("slope is only defined for positive rank")
    return (_q(c1H) - epsilon * _q(delta1)) / rank


class FramingCase(str, Enum):
    FRAMING_SURVIVES = "FramingSurvives"  # E' not inside ker(alpha): epsilon(alpha') = 1
    FRAMING_DIES = "FramingDies"          # E' inside ker(alpha) = E(-D): epsilon(alpha') = 0


def lemma26_case_check(r, r_prime, delta1, mu_H_Eprime, case: FramingCase | str) -> bool:
    """Whether a rank ``r'`` submodule has framed slope strictly below ``-delta_1/r``.

    ``mu_H_Eprime`` is the ordinary H-slope of the submodule.  When the framing
    survives on the submodule its framed slope is ``mu_H(E') - delta_1/r'``;
    otherwise it is ``mu_H(E')``.
    """
    r, r_prime, delta1, mu = _q(r), _q(r_prime), _q(delta1), _q(mu_H_Eprime)
    if not 0 < r_prime < r:
        raise ParameterOutOfRange(f"need 0 < r' < r, got r'={r_prime}, r={r}")
    if not 0 < delta1 < r:
        raise ParameterOutOfRange(f"need 0 < delta_1 < r, got delta_1={delta1}, r={r}")
    case = FramingCase(case)
    target = -delta1 / r
    if case is FramingCase.FRAMING_SURVIVES:
        return slope(mu * r_prime, 1, delta1, r_prime) < target
    return slope(mu * r_prime, 0, delta1, r_prime) < target


def slope_grid(ranks: Sequence[int], step: Fraction) -> list[tuple[int, Fraction]]:
    """All ``(r, delta_1)`` with ``delta_1`` a positive multiple of ``step`` below ``r``."""
    out = []
    for r in ranks:
        k = 1
        while step * k < r:
            out.append((r, step * k))
            k += 1
    return out
