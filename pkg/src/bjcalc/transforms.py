"""Closed-form symbol conversions between the Born-Jordan, symmetric and
general ordering calculi, as exact finite sums on polynomial symbols.

The key coefficient family c_alpha is the formal reciprocal of the series
sum over even multi-indices of x^alpha / (alpha! (|alpha|+1)); in one
dimension c_k = (2 - 2^k) B_k with B_k the Bernoulli numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Literal

from .exact import (
    ExactScalar,
    MultiIndex,
    RationalLike,
    SymbolPoly,
    mi_abs,
    mi_factorial,
    mi_iter_box,
    mi_sub,
)

C_ALPHA_DEFAULT_CAP = 12


class CoefficientCapError(Exception):
    """Raised when a reciprocal-coefficient request exceeds the order cap."""


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """First-kind Bernoulli number (B_1 = -1/2 convention), exactly.

    Standard recurrence sum_{j=0}^{k} C(k+1, j) B_j = 0.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return Fraction(1)
    acc = Fraction(0)
    for j in range(k):
        acc += comb(k + 1, j) * bernoulli(j)
    return -acc / (k + 1)


def c_coeff_1d(k: int) -> Fraction:
    """One-dimensional reciprocal coefficient: (2 - 2^k) B_k for even k, 0 for odd."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k % 2 == 1:
        return Fraction(0)
    return (2 - 2**k) * bernoulli(k)


def _forward_weight(alpha: MultiIndex) -> Fraction:
    """Series coefficient 1/(alpha! (|alpha|+1)) of the forward expansion."""
    return Fraction(1, mi_factorial(alpha) * (mi_abs(alpha) + 1))


@lru_cache(maxsize=None)
def _reciprocal_series(alpha: MultiIndex) -> Fraction:
    """Coefficient r_alpha of the reciprocal power series (c_alpha = alpha! r_alpha).

    Power-series inversion: r_0 = 1 and
    r_alpha = - sum over nonzero even-order mu <= alpha of w(mu) r_(alpha-mu),
    which resums the ordered-composition (geometric-series) expansion.
    """
    if not any(alpha):
        return Fraction(1)
    acc = Fraction(0)
    for mu in mi_iter_box(alpha):
        total = mi_abs(mu)
        if total == 0 or total % 2 == 1:
            continue
        acc += _forward_weight(mu) * _reciprocal_series(mi_sub(alpha, mu))
    return -acc


def c_coeff_multi(alpha: MultiIndex, cap: int = C_ALPHA_DEFAULT_CAP) -> Fraction:
    """Multi-dimensional reciprocal coefficient c_alpha.

    Equals the alternating sum over ordered tuples of nonzero even-order
    multi-indices composing alpha, times alpha!; computed by series inversion.
    """
    alpha = tuple(alpha)
    if any(a < 0 for a in alpha):
        raise ValueError("multi-index entries must be non-negative")
    if mi_abs(alpha) > cap:
        raise CoefficientCapError(
            f"|alpha| = {mi_abs(alpha)} exceeds cap {cap}"
        )
    return mi_factorial(alpha) * _reciprocal_series(alpha)


@dataclass(frozen=True)
class CoeffTable:
    """Tabulated 1-D reciprocal coefficients alongside the Bernoulli numbers."""

    max_order: int
    values: dict[int, Fraction] = field(default_factory=dict)
    bernoullis: dict[int, Fraction] = field(default_factory=dict)

    @classmethod
    def build(cls, max_order: int) -> "CoeffTable":
        if max_order < 0:
            raise ValueError("max_order must be non-negative")
        values = {k: c_coeff_1d(k) for k in range(0, max_order + 1, 2)}
        berns = {k: bernoulli(k) for k in range(0, max_order + 1, 2)}
        return cls(max_order=max_order, values=values, bernoullis=berns)


# ---------------------------------------------------------------------------
# Symbol-level conversions (exact finite sums on polynomials)
# ---------------------------------------------------------------------------


def _derivative_xp(a: SymbolPoly, alpha: MultiIndex) -> SymbolPoly:
    """d_x^alpha d_p^alpha a."""
    d = a
    for j, k in enumerate(alpha):
        if k:
            d = d.differentiate(("x", j), k)
            if d.is_zero():
                break
            d = d.differentiate(("p", j), k)
            if d.is_zero():
                break
    return d


def _alpha_bounds(a: SymbolPoly) -> MultiIndex:
    return tuple(
        min(a.block_degree("x", j), a.block_degree("p", j)) for j in range(a.dim)
    )


def bj_to_weyl(a: SymbolPoly) -> SymbolPoly:
    """Symmetric-rule symbol of the operator whose Born-Jordan symbol is a.

    sum over even-order alpha of (i hbar / 2)^|alpha| / (alpha! (|alpha|+1))
    times d_x^alpha d_p^alpha a; finite on polynomials.
    """
    i_hbar_half = (ExactScalar.i() * ExactScalar.hbar()).scale(Fraction(1, 2))
    out = SymbolPoly.zero(a.dim)
    for alpha in mi_iter_box(_alpha_bounds(a)):
        if mi_abs(alpha) % 2 == 1:
            continue
        d = _derivative_xp(a, alpha)
        if d.is_zero():
            continue
        coeff = (i_hbar_half ** mi_abs(alpha)).scale(_forward_weight(alpha))
        out = out + d.scale(coeff)
    return out


def weyl_to_bj(a: SymbolPoly, cap: int | None = None) -> SymbolPoly:
    """Born-Jordan symbol of the operator whose symmetric-rule symbol is a.

    sum over even-order alpha of (c_alpha / alpha!) (i hbar / 2)^|alpha|
    times d_x^alpha d_p^alpha a; exact two-sided inverse of bj_to_weyl on
    polynomials.
    """
    if cap is None:
        cap = max(C_ALPHA_DEFAULT_CAP, a.total_degree())
    i_hbar_half = (ExactScalar.i() * ExactScalar.hbar()).scale(Fraction(1, 2))
    out = SymbolPoly.zero(a.dim)
    for alpha in mi_iter_box(_alpha_bounds(a)):
        if mi_abs(alpha) % 2 == 1:
            continue
        d = _derivative_xp(a, alpha)
        if d.is_zero():
            continue
        c = c_coeff_multi(alpha, cap=cap)
        coeff = (i_hbar_half ** mi_abs(alpha)).scale(
            c / mi_factorial(alpha)
        )
        out = out + d.scale(coeff)
    return out


def bj_to_tau(a: SymbolPoly, tau: RationalLike | None = None) -> SymbolPoly:
    """Ordering-parameter symbol of the operator with Born-Jordan symbol a.

    sum over alpha of (i hbar)^|alpha|
    (tau^(|alpha|+1) - (tau-1)^(|alpha|+1)) / (alpha! (|alpha|+1))
    times d_x^alpha d_p^alpha a.  tau=None keeps the parameter formal.
    """
    tau_s = ExactScalar.tau() if tau is None else ExactScalar.rational(Fraction(tau))
    tau_minus_1 = tau_s - ExactScalar.one()
    i_hbar = ExactScalar.i() * ExactScalar.hbar()
    out = SymbolPoly.zero(a.dim)
    for alpha in mi_iter_box(_alpha_bounds(a)):
        d = _derivative_xp(a, alpha)
        if d.is_zero():
            continue
        k = mi_abs(alpha)
        weight = (tau_s ** (k + 1)) - (tau_minus_1 ** (k + 1))
        coeff = (i_hbar ** k) * weight
        coeff = coeff.scale(Fraction(1, mi_factorial(alpha) * (k + 1)))
        out = out + d.scale(coeff)
    return out


def tau_shift(
    a: SymbolPoly, tau_from: RationalLike, tau_to: RationalLike
) -> SymbolPoly:
    """Convert the symbol at ordering parameter tau_from to the one at tau_to.

    Exact finite sum sum_alpha (i hbar (tau_to - tau_from))^|alpha| / alpha!
    times d_p^alpha d_x^alpha a; the hbar placement is normalized so that both
    parameters' quantizations yield the same operator.
    """
    shift = Fraction(tau_to) - Fraction(tau_from)
    i_hbar_shift = (ExactScalar.i() * ExactScalar.hbar()).scale(shift)
    out = SymbolPoly.zero(a.dim)
    for alpha in mi_iter_box(_alpha_bounds(a)):
        d = _derivative_xp(a, alpha)
        if d.is_zero():
            continue
        coeff = (i_hbar_shift ** mi_abs(alpha)).scale(
            Fraction(1, mi_factorial(alpha))
        )
        out = out + d.scale(coeff)
    return out


Direction = Literal["weyl_of_bj", "bj_of_weyl"]


def monomial_closed_form(direction: Direction, r: int, s: int) -> SymbolPoly:
    """Closed form of the x^r p^s conversion in one dimension.

    weyl_of_bj: sum over even k <= min(r,s) of
        (i hbar / 2)^k (k!/(k+1)) C(r,k) C(s,k) x^(r-k) p^(s-k);
    bj_of_weyl: same sum with weight k! c_k (i hbar / 2)^k.
    """
    if r < 0 or s < 0:
        raise ValueError("exponents must be non-negative")
    if direction not in ("weyl_of_bj", "bj_of_weyl"):
        raise ValueError(f"unknown direction {direction!r}")
    i_hbar_half = (ExactScalar.i() * ExactScalar.hbar()).scale(Fraction(1, 2))
    out = SymbolPoly.zero(1)
    for k in range(0, min(r, s) + 1, 2):
        if direction == "weyl_of_bj":
            weight = Fraction(factorial(k), k + 1)
        else:
            weight = factorial(k) * c_coeff_1d(k)
        coeff = (i_hbar_half ** k).scale(weight * comb(r, k) * comb(s, k))
        out = out + SymbolPoly.monomial(1, coeff, x=(r - k,), p=(s - k,))
    return out
