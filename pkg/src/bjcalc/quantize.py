"""Quantization rules mapping phase-space symbols to operators.

Three calculi are implemented on monomials and extended by linearity:

* the symmetric (midpoint) rule: (1/2^s) sum_l C(s,l) phat^(s-l) xhat^r phat^l,
* the ordering-parameter family: sum_l C(s,l) (1-tau)^l tau^(s-l)
  phat^(s-l) xhat^r phat^l, which reduces to the symmetric rule at tau = 1/2,
* the Born-Jordan rule, obtained by averaging the family uniformly over
  tau in [0,1]; on a single monomial this averaging reproduces the historical
  equal-weight rule (1/(s+1)) sum_l phat^(s-l) xhat^r phat^l.

Multi-dimensional monomials quantize as the product over dimensions of the
one-dimensional rule at a shared ordering parameter; the Born-Jordan value
is the average of that product, not the product of per-dimension averages.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Union

from .exact import (
    AmplitudePoly,
    ExactScalar,
    ONE,
    RationalLike,
    SymbolPoly,
    mi_iter_box,
    mi_abs,
    mi_factorial,
)
from .operators import OpPoly


@dataclass(frozen=True)
class Weyl:
    """The symmetric (tau = 1/2) rule."""


@dataclass(frozen=True)
class BornJordan:
    """Uniform average of the tau family over [0, 1]."""


@dataclass(frozen=True)
class Tau:
    """Fixed ordering parameter; tau=None keeps it as a formal variable."""

    tau: Fraction | int | None = None


QuantizationScheme = Union[Weyl, BornJordan, Tau]


def _tau_scalar(scheme: Tau) -> ExactScalar:
    if scheme.tau is None:
        return ExactScalar.tau()
    return ExactScalar.rational(Fraction(scheme.tau))


def _monomial_1d_tau(r: int, s: int, tau: ExactScalar, dim: int, j: int) -> OpPoly:
    """Ordering-family image of p_j^s x_j^r at parameter tau (may be formal)."""
    one_minus_tau = ExactScalar.one() - tau
    zero = (0,) * dim

    def e(k):
        v = [0] * dim
        v[j] = k
        return tuple(v)

    out = OpPoly.zero(dim)
    for ell in range(s + 1):
        coeff = (one_minus_tau ** ell) * (tau ** (s - ell))
        coeff = coeff.scale(comb(s, ell))
        word = (
            OpPoly.word(dim, zero, e(s - ell))
            * OpPoly.word(dim, e(r), zero)
            * OpPoly.word(dim, zero, e(ell))
        )
        out = out + word.scale(coeff)
    return out


def tau_average(op: OpPoly) -> OpPoly:
    """Coefficientwise exact integral of the formal ordering parameter over [0,1]."""
    return op.integrate_unit_interval("tau")


def quantize_monomial(scheme: QuantizationScheme, r: int, s: int) -> OpPoly:
    """Quantize p^s x^r in one dimension under the chosen rule.

    With a formal Tau scheme the result carries the ordering parameter in its
    coefficients, ready for tau_average.
    """
    if r < 0 or s < 0:
        raise ValueError("monomial exponents must be non-negative")
    if isinstance(scheme, Weyl):
        return _monomial_1d_tau(r, s, ExactScalar.rational(Fraction(1, 2)), 1, 0)
    if isinstance(scheme, Tau):
        return _monomial_1d_tau(r, s, _tau_scalar(scheme), 1, 0)
    if isinstance(scheme, BornJordan):
        formal = _monomial_1d_tau(r, s, ExactScalar.tau(), 1, 0)
        return tau_average(formal)
    raise TypeError(f"unknown quantization scheme {scheme!r}")


def quantize_symbol(scheme: QuantizationScheme, a: SymbolPoly) -> OpPoly:
    """Quantize a polynomial symbol; linear in a.

    Monomials in distinct dimensions quantize independently at a shared
    ordering parameter and multiply (such factors commute).
    """
    if isinstance(scheme, Weyl):
        tau = ExactScalar.rational(Fraction(1, 2))
        average = False
    elif isinstance(scheme, Tau):
        tau = _tau_scalar(scheme)
        average = False
    elif isinstance(scheme, BornJordan):
        tau = ExactScalar.tau()
        average = True
    else:
        raise TypeError(f"unknown quantization scheme {scheme!r}")

    n = a.dim
    out = OpPoly.zero(n)
    for (kx, kp), coeff in a.terms.items():
        factor = OpPoly.identity(n)
        for j in range(n):
            if kx[j] or kp[j]:
                factor = factor * _monomial_1d_tau(kx[j], kp[j], tau, n, j)
        out = out + factor.scale(coeff)
    if average:
        out = tau_average(out)
    return out


def amplitude_average(a: SymbolPoly) -> AmplitudePoly:
    """The averaged amplitude b(x,y,p) = integral over tau of a((1-tau)x+tau y, p)."""
    tau = ExactScalar.tau()
    one_minus_tau = ExactScalar.one() - tau
    b = a.promote()
    for j in range(a.dim):
        b = b.substitute_affine(
            ("x", j),
            linear={("x", j): one_minus_tau, ("y", j): tau},
        )
    return b.integrate_unit_interval("tau")


def amplitude_to_tau_symbol(
    b: AmplitudePoly, tau: RationalLike | None = None
) -> SymbolPoly:
    """Exact symbol of the amplitude operator in the tau calculus.

    Finite sum over pairs of multi-indices (beta, gamma):
        (1/(beta! gamma!)) tau^|beta| (1-tau)^|gamma|
        d_p^(beta+gamma) (i hbar d_x)^beta (-i hbar d_y)^gamma b |_{y=x}.
    tau=None keeps the ordering parameter formal.
    """
    n = b.dim
    tau_s = ExactScalar.tau() if tau is None else ExactScalar.rational(Fraction(tau))
    one_minus_tau = ExactScalar.one() - tau_s

    x_bounds = tuple(b.block_degree("x", j) for j in range(n))
    y_bounds = tuple(b.block_degree("y", j) for j in range(n))
    p_bound = b.block_degree("p")

    i_hbar = ExactScalar.i() * ExactScalar.hbar()
    out = SymbolPoly.zero(n)
    for beta in mi_iter_box(x_bounds):
        for gamma in mi_iter_box(y_bounds):
            if mi_abs(beta) + mi_abs(gamma) > p_bound:
                continue
            d = b
            for j in range(n):
                if beta[j]:
                    d = d.differentiate(("x", j), beta[j])
                if gamma[j]:
                    d = d.differentiate(("y", j), gamma[j])
                total = beta[j] + gamma[j]
                if total:
                    d = d.differentiate(("p", j), total)
            if d.is_zero():
                continue
            coeff = (tau_s ** mi_abs(beta)) * (one_minus_tau ** mi_abs(gamma))
            coeff = coeff * (i_hbar ** mi_abs(beta))
            coeff = coeff * ((-i_hbar) ** mi_abs(gamma))
            coeff = coeff.scale(
                Fraction(1, mi_factorial(beta) * mi_factorial(gamma))
            )
            out = out + d.collapse_y().scale(coeff)
    return out
