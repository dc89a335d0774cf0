"""Grid-based one-dimensional realization of the operator calculi.

Two application routes are provided and cross-checked:

* an exact pseudospectral route for polynomial symbols (binomial expansion of
  the shifted spatial argument; only exact grid multiplications and FFTs), and
* a phase-space superposition route for sampled symbols, which decomposes the
  operator over grid translations and modulations; the ordering parameter
  enters only through an explicit per-mode phase, so no interpolation is ever
  performed.

All transforms are periodic; symbols and states are expected to decay at the
box boundary (violations emit a warning, not an error).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from math import factorial, pi, sqrt
from typing import Callable, Sequence, Union

import numpy as np

from .exact import SymbolPoly
from .transforms import bj_to_weyl

__all__ = [
    "UniformGrid",
    "SampledWavefunction",
    "SampledSymbol",
    "NumericParams",
    "ShubinOrderEstimate",
    "WeylScheme",
    "TauScheme",
    "BJQuadrature",
    "BJSinc",
    "symplectic_ft",
    "bj_weyl_symbol_numeric",
    "apply_operator",
    "heisenberg_shift",
    "grossmann_royer_apply",
    "weyl_via_grossmann_royer",
    "antiwick_apply",
    "q_norm_estimate",
    "estimate_shubin_order",
    "sample_symbol",
    "gaussian_state",
    "hermite_state",
    "null_symbol",
    "BoundaryDecayWarning",
]


class BoundaryDecayWarning(UserWarning):
    """Sampled data does not decay at the periodic box boundary."""


@dataclass(frozen=True)
class UniformGrid:
    """Centered uniform grid with N points on [-L/2, L/2)."""

    n_points: int
    length: float

    def __post_init__(self):
        n = self.n_points
        if n < 16 or n & (n - 1):
            raise ValueError("n_points must be a power of two, at least 16")
        if not self.length > 0:
            raise ValueError("length must be positive")

    @property
    def spacing(self) -> float:
        return self.length / self.n_points

    def x_values(self) -> np.ndarray:
        n = self.n_points
        return (np.arange(n) - n // 2) * self.spacing

    def p_spacing(self, hbar: float) -> float:
        return 2 * pi * hbar / self.length

    def p_values(self, hbar: float) -> np.ndarray:
        n = self.n_points
        return (np.arange(n) - n // 2) * self.p_spacing(hbar)


@dataclass
class SampledWavefunction:
    """Complex samples of a configuration-space state on a UniformGrid."""

    grid: UniformGrid
    values: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n_points,):
            raise ValueError("wavefunction length must match the grid")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("wavefunction contains non-finite values")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")

    def norm(self) -> float:
        return float(np.sqrt(self.grid.spacing * np.sum(np.abs(self.values) ** 2)))

    def with_values(self, values: np.ndarray) -> "SampledWavefunction":
        return SampledWavefunction(self.grid, values, self.hbar)


@dataclass
class SampledSymbol:
    """Complex samples a(x_j, p_k) on the square phase-space grid."""

    grid: UniformGrid
    values: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        n = self.grid.n_points
        if self.values.shape != (n, n):
            raise ValueError("symbol samples must form a square N-by-N array")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("symbol contains non-finite values")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")

    def with_values(self, values: np.ndarray) -> "SampledSymbol":
        return SampledSymbol(self.grid, values, self.hbar)


@dataclass(frozen=True)
class NumericParams:
    hbar: float = 1.0
    quadrature_order: int = 16
    tolerance: float = 1e-8

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")
        if self.quadrature_order < 2:
            raise ValueError("quadrature order must be at least 2")


@dataclass(frozen=True)
class ShubinOrderEstimate:
    m_est: float
    rho_est: float | None
    residual: float


# -- application schemes ----------------------------------------------------


@dataclass(frozen=True)
class WeylScheme:
    pass


@dataclass(frozen=True)
class TauScheme:
    tau: float


@dataclass(frozen=True)
class BJQuadrature:
    order: int = 16

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("quadrature order must be at least 2")


@dataclass(frozen=True)
class BJSinc:
    pass


Scheme = Union[WeylScheme, TauScheme, BJQuadrature, BJSinc]


# ---------------------------------------------------------------------------
# Centered discrete Fourier transforms
# ---------------------------------------------------------------------------


def _cdft(values: np.ndarray, sign: int, axis: int = 0) -> np.ndarray:
    """sum_j exp(sign * i * 2pi (k - N/2)(j - N/2) / N) v_j along an axis."""
    v = np.asarray(values, dtype=complex)
    shifted = np.fft.ifftshift(v, axes=axis)
    if sign < 0:
        transformed = np.fft.fft(shifted, axis=axis)
    else:
        transformed = np.fft.ifft(shifted, axis=axis) * v.shape[axis]
    return np.fft.fftshift(transformed, axes=axis)


def _check_boundary_decay(values: np.ndarray, tolerance: float, label: str) -> None:
    scale = float(np.max(np.abs(values)))
    if scale == 0.0:
        return
    if values.ndim == 1:
        edge = abs(values[0])
    else:
        edge = max(
            float(np.max(np.abs(values[0, :]))), float(np.max(np.abs(values[:, 0])))
        )
    if edge > tolerance * scale:
        warnings.warn(
            f"{label} does not decay below tolerance at the box boundary "
            f"(relative edge magnitude {edge / scale:.2e})",
            BoundaryDecayWarning,
            stacklevel=3,
        )


# ---------------------------------------------------------------------------
# Symplectic Fourier transform and the sinc filter
# ---------------------------------------------------------------------------


def symplectic_ft(a: SampledSymbol) -> SampledSymbol:
    """Discrete symplectic Fourier transform; an involution on the grid.

    a_sigma(x_m, p_k) = (1/2pi hbar) sum_{j,l}
        exp(-i (p_k x_j - x_m p_l)/hbar) a(x_j, p_l) dx dp.
    """
    transformed = _cdft(a.values, -1, axis=0)  # over x index -> new p index
    transformed = _cdft(transformed, +1, axis=1)  # over p index -> new x index
    return a.with_values(transformed.T / a.grid.n_points)


def _sinc(u: np.ndarray) -> np.ndarray:
    """sin(u)/u with a Taylor guard near u = 0."""
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < 1e-4
    safe = np.where(small, 1.0, u)
    return np.where(small, 1.0 - u * u / 6.0, np.sin(safe) / safe)


def _sinc_multiplier(grid: UniformGrid, hbar: float) -> np.ndarray:
    x = grid.x_values()
    p = grid.p_values(hbar)
    return _sinc(np.outer(x, p) / (2.0 * hbar))


def bj_weyl_symbol_numeric(a: SampledSymbol) -> SampledSymbol:
    """Symmetric-rule symbol of the Born-Jordan operator of a, on the grid.

    Realized as F_sigma -> pointwise sinc(px/2hbar) multiply -> F_sigma.
    """
    a_sig = symplectic_ft(a)
    filtered = a_sig.with_values(a_sig.values * _sinc_multiplier(a.grid, a.hbar))
    return symplectic_ft(filtered)


# ---------------------------------------------------------------------------
# Operator application
# ---------------------------------------------------------------------------


def _apply_sampled_tau(
    a: SampledSymbol, psi: SampledWavefunction, tau: float
) -> np.ndarray:
    """Phase-space superposition route at ordering parameter tau.

    out(x) = (1/2pi hbar) sum_{m,k} a_sigma(x_m, p_k)
             exp(i (p_k x - tau p_k x_m)/hbar) psi(x - x_m) dx dp.
    """
    n = a.grid.n_points
    a_sig = symplectic_ft(a).values
    m = np.arange(n) - n // 2
    phase = np.exp(-1j * tau * 2 * pi * np.outer(m, m) / n)
    modes = _cdft(a_sig * phase, +1, axis=1)  # modes[m, i]: function of x_i
    shift_index = (np.arange(n)[None, :] - m[:, None]) % n
    shifted = psi.values[shift_index]  # shifted[m, i] = psi(x_i - x_m)
    return np.sum(modes * shifted, axis=0) / n


def _apply_poly_tau(
    a: SymbolPoly, psi: SampledWavefunction, tau: float, hbar: float
) -> np.ndarray:
    """Exact pseudospectral route for one-dimensional polynomial symbols."""
    if a.dim != 1:
        raise ValueError("the numeric layer is one-dimensional")
    from math import comb

    x = psi.grid.x_values()
    p = psi.grid.p_values(hbar)
    out = np.zeros_like(psi.values)
    for ((r,), (s,)), coeff in a.terms.items():
        c = coeff.to_complex(hbar)
        for j in range(r + 1):
            weight = comb(r, j) * (1.0 - tau) ** (r - j) * tau**j
            if weight == 0.0:
                continue
            g = (x**j) * psi.values
            g_hat = _cdft(g, -1)
            g_hat *= p**s
            back = _cdft(g_hat, +1) / psi.grid.n_points
            out += c * weight * (x ** (r - j)) * back
    return out


def _gauss_legendre_unit(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return (nodes + 1.0) / 2.0, weights / 2.0


def apply_operator(
    symbol: Union[SampledSymbol, SymbolPoly],
    psi: SampledWavefunction,
    scheme: Scheme,
    params: NumericParams | None = None,
) -> SampledWavefunction:
    """Apply the quantized operator of a symbol to a sampled state.

    Polynomial symbols use the exact pseudospectral route; sampled symbols use
    the phase-space superposition route.  bj_quadrature averages the ordering
    parameter with Gauss-Legendre nodes; bj_sinc filters the symbol (exactly
    for polynomials, via the grid sinc multiplier for samples) and applies the
    symmetric rule.
    """
    params = params or NumericParams()
    if isinstance(symbol, SampledSymbol):
        if symbol.grid != psi.grid:
            raise ValueError("symbol and state grids differ")
        if symbol.hbar != psi.hbar:
            raise ValueError("symbol and state hbar differ")
    hbar = psi.hbar
    _check_boundary_decay(psi.values, params.tolerance, "wavefunction")

    if isinstance(scheme, WeylScheme):
        scheme = TauScheme(0.5)

    if isinstance(scheme, TauScheme):
        if isinstance(symbol, SymbolPoly):
            out = _apply_poly_tau(symbol, psi, scheme.tau, hbar)
        else:
            out = _apply_sampled_tau(symbol, psi, scheme.tau)
        return psi.with_values(out)

    if isinstance(scheme, BJQuadrature):
        nodes, weights = _gauss_legendre_unit(scheme.order)
        out = np.zeros_like(psi.values)
        for t, w in zip(nodes, weights):
            if isinstance(symbol, SymbolPoly):
                out += w * _apply_poly_tau(symbol, psi, float(t), hbar)
            else:
                out += w * _apply_sampled_tau(symbol, psi, float(t))
        return psi.with_values(out)

    if isinstance(scheme, BJSinc):
        if isinstance(symbol, SymbolPoly):
            converted = bj_to_weyl(symbol)
            out = _apply_poly_tau(converted, psi, 0.5, hbar)
            return psi.with_values(out)
        converted = bj_weyl_symbol_numeric(symbol)
        out = _apply_sampled_tau(converted, psi, 0.5)
        return psi.with_values(out)

    raise TypeError(f"unknown application scheme {scheme!r}")


# ---------------------------------------------------------------------------
# Phase-space shifts and reflections
# ---------------------------------------------------------------------------


def heisenberg_shift(
    psi: SampledWavefunction, z0: tuple[float, float]
) -> SampledWavefunction:
    """Phase-space shift exp(i (p0 x - p0 x0 / 2)/hbar) psi(x - x0).

    The spatial shift is periodic; off-grid x0 is handled by band-limited
    (spectral) translation.
    """
    x0, p0 = z0
    grid, hbar = psi.grid, psi.hbar
    if abs(x0) >= grid.length / 2:
        raise ValueError("shift exceeds half the box length")
    p = grid.p_values(hbar)
    x = grid.x_values()
    spectrum = _cdft(psi.values, -1)
    spectrum *= np.exp(-1j * p * x0 / hbar)
    translated = _cdft(spectrum, +1) / grid.n_points
    phase = np.exp(1j * (p0 * x - 0.5 * p0 * x0) / hbar)
    return psi.with_values(phase * translated)


def _reflect(values: np.ndarray) -> np.ndarray:
    # psi(-x) on the centered grid: index j -> (-j) mod N
    return np.roll(values[::-1], 1)


def grossmann_royer_apply(
    psi: SampledWavefunction, z0: tuple[float, float]
) -> SampledWavefunction:
    """Reflection about the phase-space point z0: T(z0) P T(z0)^{-1} psi."""
    x0, p0 = z0
    inner = heisenberg_shift(psi, (-x0, -p0))
    reflected = inner.with_values(_reflect(inner.values))
    return heisenberg_shift(reflected, (x0, p0))


def weyl_via_grossmann_royer(
    a: SampledSymbol, psi: SampledWavefunction
) -> SampledWavefunction:
    """Symmetric-rule application as a superposition of reflections.

    out = (1/pi hbar) sum_z a(z) (reflection about z) psi dz; verification
    route only (the production path is apply_operator).
    """
    if a.grid != psi.grid or a.hbar != psi.hbar:
        raise ValueError("symbol and state grids differ")
    n = a.grid.n_points
    modes = _cdft(a.values, +1, axis=1)  # over p index k -> spatial index
    # modes[m, j] = sum_k a(m, k) exp(i 2pi (k - N/2)(j - N/2)/N)
    i_idx = np.arange(n)
    out = np.zeros(n, dtype=complex)
    for m in range(n):
        doubled = (n // 2 + 2 * (i_idx - m)) % n
        mirror = (2 * m - i_idx) % n
        out += modes[m, doubled] * psi.values[mirror]
    return psi.with_values(out * (2.0 / n))


# ---------------------------------------------------------------------------
# Anti-Wick operators and Sobolev-type norms (hbar = 1 only)
# ---------------------------------------------------------------------------


def _coherent_envelope(grid: UniformGrid) -> np.ndarray:
    # W[m, j] = exp(-(t_j - x_m)^2 / 2)
    x = grid.x_values()
    return np.exp(-0.5 * np.subtract.outer(x, x) ** 2)


def antiwick_apply(
    a: SampledSymbol, psi: SampledWavefunction
) -> SampledWavefunction:
    """Coherent-state averaged operator: integral of a(z) <psi, Phi_z> Phi_z dz.

    The coherent states Phi_z(t) = pi^{-1/4} e^{itp} e^{-(t-x)^2/2} carry no
    hbar, so this operation is restricted to hbar = 1.
    """
    if a.hbar != 1.0 or psi.hbar != 1.0:
        raise ValueError("anti-Wick operators are only defined for hbar = 1")
    if a.grid != psi.grid:
        raise ValueError("symbol and state grids differ")
    grid = a.grid
    n = grid.n_points
    dx = grid.spacing
    dp = grid.p_spacing(1.0)
    envelope = _coherent_envelope(grid)  # [x index m, t index j]
    windowed = envelope * psi.values[None, :]
    # V[m, k] = <psi, Phi_{(x_m, p_k)}> / pi^{-1/4}
    overlaps = _cdft(windowed, -1, axis=1) * dx
    weighted = a.values * overlaps
    # G[m, j] = sum_k a(x_m, p_k) V[m, k] exp(i t_j p_k) dp
    modes = _cdft(weighted, +1, axis=1) * dp
    out = np.einsum("mj,mj->j", envelope, modes) * dx / sqrt(pi)
    return psi.with_values(out)


def q_norm_estimate(psi: SampledWavefunction, s: float) -> float:
    """L2 norm of the anti-Wick operator with symbol <z>^s applied to psi."""
    grid = psi.grid
    x = grid.x_values()
    p = grid.p_values(1.0)
    weight = (1.0 + np.add.outer(x**2, p**2)) ** (s / 2.0)
    symbol = SampledSymbol(grid, weight.astype(complex), 1.0)
    return antiwick_apply(symbol, psi).norm()


# ---------------------------------------------------------------------------
# Growth-order diagnostics
# ---------------------------------------------------------------------------


def estimate_shubin_order(
    evaluator: Callable[[np.ndarray, np.ndarray], np.ndarray],
    radii: Sequence[float],
    estimate_rho: bool = False,
    n_angles: int = 720,
) -> ShubinOrderEstimate:
    """Least-squares growth order of a phase-space function.

    Fits log max_{|z|=r} |a(z)| against log sqrt(1 + r^2); optionally probes
    the first-derivative decay by central finite differences to estimate the
    smoothing exponent.
    """
    radii = list(radii)
    if len(radii) < 3 or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be at least 3 increasing values")
    theta = np.linspace(0.0, 2 * pi, n_angles, endpoint=False)
    cos_t, sin_t = np.cos(theta), np.sin(theta)

    def ring_max(fn, r):
        vals = np.abs(fn(r * cos_t, r * sin_t))
        if not np.all(np.isfinite(vals)):
            raise ValueError("evaluator returned non-finite values")
        return float(np.max(vals))

    logs = np.log([ring_max(evaluator, r) for r in radii])
    bracket = np.log(np.sqrt(1.0 + np.asarray(radii, dtype=float) ** 2))
    design = np.vstack([bracket, np.ones_like(bracket)]).T
    (slope, _), res, _, _ = np.linalg.lstsq(design, logs, rcond=None)
    residual = float(np.sqrt(res[0] / len(radii))) if res.size else 0.0

    rho_est = None
    if estimate_rho:
        def grad_mag(xv, pv):
            h = 1e-3 * (1.0 + np.sqrt(xv**2 + pv**2))
            dx = (evaluator(xv + h, pv) - evaluator(xv - h, pv)) / (2 * h)
            dp = (evaluator(xv, pv + h) - evaluator(xv, pv - h)) / (2 * h)
            return np.sqrt(np.abs(dx) ** 2 + np.abs(dp) ** 2)

        glogs = np.log([max(ring_max(grad_mag, r), 1e-300) for r in radii])
        (gslope, _), _, _, _ = np.linalg.lstsq(design, glogs, rcond=None)
        rho_est = float(slope - gslope)

    return ShubinOrderEstimate(m_est=float(slope), rho_est=rho_est, residual=residual)


# ---------------------------------------------------------------------------
# Named states and symbols
# ---------------------------------------------------------------------------


def gaussian_state(grid: UniformGrid, hbar: float = 1.0) -> SampledWavefunction:
    """Normalized ground Gaussian (pi hbar)^{-1/4} exp(-x^2 / 2 hbar)."""
    x = grid.x_values()
    values = (pi * hbar) ** -0.25 * np.exp(-(x**2) / (2 * hbar))
    return SampledWavefunction(grid, values.astype(complex), hbar)


def hermite_state(grid: UniformGrid, k: int, hbar: float = 1.0) -> SampledWavefunction:
    """k-th normalized Hermite function (harmonic-oscillator eigenstate)."""
    if k < 0:
        raise ValueError("Hermite index must be non-negative")
    x = grid.x_values()
    xi = x / sqrt(hbar)
    h_prev = np.ones_like(xi)
    h_curr = 2 * xi
    if k == 0:
        h = h_prev
    elif k == 1:
        h = h_curr
    else:
        for j in range(1, k):
            h_prev, h_curr = h_curr, 2 * xi * h_curr - 2 * j * h_prev
        h = h_curr
    norm = (pi * hbar) ** -0.25 / sqrt(2.0**k * factorial(k))
    values = norm * h * np.exp(-(xi**2) / 2)
    return SampledWavefunction(grid, values.astype(complex), hbar)


def sample_symbol(
    a: SymbolPoly, grid: UniformGrid, hbar: float = 1.0
) -> SampledSymbol:
    """Evaluate a one-dimensional polynomial symbol on the phase-space grid."""
    if a.dim != 1:
        raise ValueError("the numeric layer is one-dimensional")
    x = grid.x_values()
    p = grid.p_values(hbar)
    values = np.zeros((grid.n_points, grid.n_points), dtype=complex)
    for ((r,), (s,)), coeff in a.terms.items():
        values += coeff.to_complex(hbar) * np.outer(x**r, p**s)
    return SampledSymbol(grid, values, hbar)


def _periodized_gaussian(u: np.ndarray, period: float, width: float) -> np.ndarray:
    total = np.zeros_like(u)
    images = int(np.ceil(8 * width / period)) + 2
    for j in range(-images, images + 1):
        total += np.exp(-((u - j * period) ** 2) / (2 * width**2))
    return total


def null_symbol(
    grid: UniformGrid,
    hbar: float = 1.0,
    x0: float | None = None,
    p0: float | None = None,
    width_factor: float = 1.0,
) -> tuple[SampledSymbol, tuple[float, float]]:
    """Windowed phase-space exponential annihilated by the Born-Jordan rule.

    Builds c(z) = exp(-i sigma(z, z0)/hbar) w(x) w(p) with z0 = (x0, p0) on
    the grid, where w is a smooth periodized Gaussian of width width_factor
    times the box size; the symplectic transform of c is then concentrated at
    z0.  Requested coordinates are snapped to grid points; with x0 and p0
    omitted a balanced point with x0 p0 = 2 pi hbar is chosen, where the
    Born-Jordan filter vanishes.  Returns the symbol and the z0 used.
    """
    n = grid.n_points
    if x0 is None and p0 is None:
        # factor n = m_idx * k_idx with both offsets inside the grid
        best = None
        for m in range(1, n // 2):
            if n % m == 0 and n // m < n // 2:
                cand = (m, n // m)
                balance = abs(m * grid.spacing - (n // m) * grid.p_spacing(hbar))
                if best is None or balance < best[0]:
                    best = (balance, cand)
        if best is None:
            raise ValueError("no on-grid null point exists for this grid")
        m_idx, k_idx = best[1]
    elif x0 is not None and p0 is not None:
        m_idx = int(round(x0 / grid.spacing))
        k_idx = int(round(p0 / grid.p_spacing(hbar)))
        if not (-n // 2 < m_idx < n // 2 and -n // 2 < k_idx < n // 2):
            raise ValueError("null point lies outside the grid")
    else:
        raise ValueError("give both coordinates or neither")
    x0 = m_idx * grid.spacing
    p0 = k_idx * grid.p_spacing(hbar)

    x = grid.x_values()
    p = grid.p_values(hbar)
    p_extent = n * grid.p_spacing(hbar)
    window = np.outer(
        _periodized_gaussian(x, grid.length, width_factor * grid.length),
        _periodized_gaussian(p, p_extent, width_factor * p_extent),
    )
    phase = np.exp(-1j * (np.outer(np.ones(n), p) * x0 - np.outer(x, np.ones(n)) * p0) / hbar)
    return SampledSymbol(grid, phase * window, hbar), (x0, p0)


# ---------------------------------------------------------------------------
# Grid data exchange
# ---------------------------------------------------------------------------


def wavefunction_to_csv(psi: SampledWavefunction) -> str:
    """One row per sample: x, Re psi, Im psi."""
    lines = ["x,re,im"]
    for xv, value in zip(psi.grid.x_values(), psi.values):
        lines.append(f"{xv:.17g},{value.real:.17g},{value.imag:.17g}")
    return "\n".join(lines) + "\n"


def wavefunction_from_csv(text: str, length: float, hbar: float = 1.0) -> SampledWavefunction:
    rows = [line for line in text.strip().splitlines() if line]
    if rows and not rows[0][0].lstrip("-").replace(".", "").isdigit():
        rows = rows[1:]  # header
    values = []
    for row in rows:
        parts = row.split(",")
        if len(parts) != 3:
            raise ValueError(f"malformed CSV row: {row!r}")
        values.append(complex(float(parts[1]), float(parts[2])))
    grid = UniformGrid(len(values), length)
    return SampledWavefunction(grid, np.asarray(values), hbar)


def wavefunction_to_json(psi: SampledWavefunction) -> dict:
    return {
        "N": psi.grid.n_points,
        "L": psi.grid.length,
        "hbar": psi.hbar,
        "values": [[v.real, v.imag] for v in psi.values],
    }


def wavefunction_from_json(payload: Union[str, dict]) -> SampledWavefunction:
    if isinstance(payload, str):
        payload = json.loads(payload)
    grid = UniformGrid(int(payload["N"]), float(payload["L"]))
    values = np.asarray([complex(re, im) for re, im in payload["values"]])
    return SampledWavefunction(grid, values, float(payload["hbar"]))
