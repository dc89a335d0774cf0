"""Normal-ordered noncommutative polynomials in the position and momentum
operators, reduced with [xhat_j, phat_j] = i*hbar.

This is the ground-truth representation: two operator expressions are equal
iff their normal-ordered forms coincide.  Canonical form puts every xhat to
the left of every phat within each dimension; distinct dimensions commute.
"""

from __future__ import annotations

from typing import Mapping, Union

from .exact import (
    ExactScalar,
    MultiIndex,
    ONE,
    RationalLike,
    mi_abs,
    mi_add,
)

MAX_TOTAL_DEGREE = 64


class DegreeLimitError(Exception):
    """Raised when an operation would exceed the normal-ordering degree cap."""


OpKey = tuple[MultiIndex, MultiIndex]  # (x exponents, p exponents)


def _reorder_1d(p_exp: int, x_exp: int) -> dict[tuple[int, int], ExactScalar]:
    """Normal-order phat^p_exp * xhat^x_exp in one dimension.

    Structural recursion on the identity phat xhat^k = xhat^k phat - i hbar k xhat^(k-1):
    multiply by one phat at a time, acting on an already ordered sum.
    """
    terms: dict[tuple[int, int], ExactScalar] = {(x_exp, 0): ONE}
    minus_i_hbar = ExactScalar.hbar() * ExactScalar.rational(0, -1)
    for _ in range(p_exp):
        out: dict[tuple[int, int], ExactScalar] = {}
        for (c, d), coeff in terms.items():
            # phat * xhat^c phat^d = xhat^c phat^(d+1) - i hbar c xhat^(c-1) phat^d
            key = (c, d + 1)
            out[key] = out.get(key, ExactScalar.zero()) + coeff
            if c:
                key = (c - 1, d)
                extra = coeff * minus_i_hbar.scale(c)
                out[key] = out.get(key, ExactScalar.zero()) + extra
        terms = out
    return terms


class OpPoly:
    """Normal-ordered polynomial in xhat_1..xhat_n, phat_1..phat_n."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[OpKey, ExactScalar] = ()):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        cleaned = {}
        for (kx, kp), coeff in dict(terms).items():
            if len(kx) != dim or len(kp) != dim:
                raise ValueError(f"malformed operator key {(kx, kp)!r}")
            if not coeff.is_zero():
                cleaned[(tuple(kx), tuple(kp))] = coeff
        self._terms = cleaned

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "OpPoly":
        return cls(dim)

    @classmethod
    def identity(cls, dim: int) -> "OpPoly":
        return cls.constant(dim, ONE)

    @classmethod
    def constant(cls, dim: int, coeff: ExactScalar) -> "OpPoly":
        zero = (0,) * dim
        return cls(dim, {(zero, zero): coeff})

    @classmethod
    def word(cls, dim: int, x_exp: MultiIndex, p_exp: MultiIndex,
             coeff: ExactScalar = ONE) -> "OpPoly":
        """coeff * xhat^x_exp phat^p_exp (already normal-ordered)."""
        return cls(dim, {(tuple(x_exp), tuple(p_exp)): coeff})

    @classmethod
    def x_op(cls, dim: int, j: int = 0) -> "OpPoly":
        e = [0] * dim
        e[j] = 1
        return cls.word(dim, tuple(e), (0,) * dim)

    @classmethod
    def p_op(cls, dim: int, j: int = 0) -> "OpPoly":
        e = [0] * dim
        e[j] = 1
        return cls.word(dim, (0,) * dim, tuple(e))

    # -- queries -----------------------------------------------------------

    @property
    def terms(self) -> dict[OpKey, ExactScalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        return max((mi_abs(kx) + mi_abs(kp) for kx, kp in self._terms), default=0)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "OpPoly") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "OpPoly") -> "OpPoly":
        self._check(other)
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            out[key] = out.get(key, ExactScalar.zero()) + coeff
        return OpPoly(self.dim, out)

    def __sub__(self, other: "OpPoly") -> "OpPoly":
        return self + (-other)

    def __neg__(self) -> "OpPoly":
        return OpPoly(self.dim, {k: -c for k, c in self._terms.items()})

    def scale(self, coeff: ExactScalar) -> "OpPoly":
        return OpPoly(self.dim, {k: c * coeff for k, c in self._terms.items()})

    def scale_rational(self, q: RationalLike) -> "OpPoly":
        return OpPoly(self.dim, {k: c.scale(q) for k, c in self._terms.items()})

    def __mul__(self, other: "OpPoly") -> "OpPoly":
        """Normal-ordered operator product."""
        self._check(other)
        if self.total_degree() + other.total_degree() > MAX_TOTAL_DEGREE:
            raise DegreeLimitError(
                f"product degree exceeds cap {MAX_TOTAL_DEGREE}"
            )
        out: dict[OpKey, ExactScalar] = {}
        for (ax, ap), ca in self._terms.items():
            for (bx, bp), cb in other._terms.items():
                # xhat^ax phat^ap xhat^bx phat^bp: reorder phat^ap xhat^bx per dim
                base = ca * cb
                # accumulate per-dimension reorderings as a product of sums
                partial: dict[tuple[MultiIndex, MultiIndex], ExactScalar] = {
                    ((), ()): base
                }
                for j in range(self.dim):
                    middle = _reorder_1d(ap[j], bx[j])
                    nxt: dict[tuple[MultiIndex, MultiIndex], ExactScalar] = {}
                    for (px, pp), pc in partial.items():
                        for (c, d), mc in middle.items():
                            key = (px + (c,), pp + (d,))
                            acc = nxt.get(key, ExactScalar.zero())
                            nxt[key] = acc + pc * mc
                    partial = nxt
                for (mx, mp), mc in partial.items():
                    key = (mi_add(ax, mx), mi_add(mp, bp))
                    out[key] = out.get(key, ExactScalar.zero()) + mc
        return OpPoly(self.dim, out)

    def commutator(self, other: "OpPoly") -> "OpPoly":
        return self * other - other * self

    def adjoint(self) -> "OpPoly":
        """Formal adjoint: conjugate coefficients, reverse factor order."""
        out = OpPoly.zero(self.dim)
        for (kx, kp), coeff in self._terms.items():
            # (xhat^kx phat^kp)^dagger = phat^kp xhat^kx
            word = OpPoly.word(self.dim, (0,) * self.dim, kp) * OpPoly.word(
                self.dim, kx, (0,) * self.dim
            )
            out = out + word.scale(coeff.conjugate())
        return out

    # -- auxiliary-variable operations ------------------------------------

    def integrate_unit_interval(self, name: str = "tau") -> "OpPoly":
        return OpPoly(
            self.dim, {k: c.integrate_unit(name) for k, c in self._terms.items()}
        )

    def substitute_aux(self, name: str, value: RationalLike) -> "OpPoly":
        return OpPoly(
            self.dim, {k: c.substitute_aux(name, value) for k, c in self._terms.items()}
        )

    def has_aux(self) -> bool:
        return any(c.has_aux() for c in self._terms.values())

    # -- comparisons -------------------------------------------------------

    def equals(self, other: "OpPoly") -> bool:
        self._check(other)
        return self._terms == other._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OpPoly):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._terms.items())))

    def sorted_terms(self) -> list[tuple[OpKey, ExactScalar]]:
        def sort_key(item):
            (kx, kp), _ = item
            flat = kx + kp
            return (sum(flat), flat)

        return sorted(self._terms.items(), key=sort_key, reverse=True)

    def __repr__(self) -> str:
        from .symlang import format_operator

        return f"OpPoly({format_operator(self)})"
