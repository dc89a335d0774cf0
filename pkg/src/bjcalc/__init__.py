"""Exact and grid-based toolkit for ordering-sensitive quantization rules.

The exact layer works over rational scalars with a formal hbar: polynomial
symbols, normal-ordered operator polynomials, the symmetric / ordering-family
/ Born-Jordan quantization maps, and closed-form conversions between their
symbols.  The numeric layer realizes the same calculi on a periodic grid via
FFT-based application routes, plus phase-space diagnostics (symplectic
transform, reflection operators, coherent-state averages, growth-order fits).
"""

from .exact import (
    AmplitudePoly,
    ExactScalar,
    HBAR,
    I,
    ONE,
    SymbolPoly,
)
from .operators import DegreeLimitError, MAX_TOTAL_DEGREE, OpPoly
from .quantize import (
    BornJordan,
    QuantizationScheme,
    Tau,
    Weyl,
    amplitude_average,
    amplitude_to_tau_symbol,
    quantize_monomial,
    quantize_symbol,
    tau_average,
)
from .transforms import (
    CoeffTable,
    CoefficientCapError,
    bernoulli,
    bj_to_tau,
    bj_to_weyl,
    c_coeff_1d,
    c_coeff_multi,
    monomial_closed_form,
    tau_shift,
    weyl_to_bj,
)
from .symlang import SymLangError, format_operator, format_symbol, parse
from .numeric import (
    BJQuadrature,
    BJSinc,
    BoundaryDecayWarning,
    NumericParams,
    SampledSymbol,
    SampledWavefunction,
    ShubinOrderEstimate,
    TauScheme,
    UniformGrid,
    WeylScheme,
    antiwick_apply,
    apply_operator,
    bj_weyl_symbol_numeric,
    estimate_shubin_order,
    gaussian_state,
    grossmann_royer_apply,
    heisenberg_shift,
    hermite_state,
    null_symbol,
    q_norm_estimate,
    sample_symbol,
    symplectic_ft,
    wavefunction_from_csv,
    wavefunction_from_json,
    wavefunction_to_csv,
    wavefunction_to_json,
    weyl_via_grossmann_royer,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudePoly",
    "ExactScalar",
    "HBAR",
    "I",
    "ONE",
    "SymbolPoly",
    "DegreeLimitError",
    "MAX_TOTAL_DEGREE",
    "OpPoly",
    "BornJordan",
    "QuantizationScheme",
    "Tau",
    "Weyl",
    "amplitude_average",
    "amplitude_to_tau_symbol",
    "quantize_monomial",
    "quantize_symbol",
    "tau_average",
    "CoeffTable",
    "CoefficientCapError",
    "bernoulli",
    "bj_to_tau",
    "bj_to_weyl",
    "c_coeff_1d",
    "c_coeff_multi",
    "monomial_closed_form",
    "tau_shift",
    "weyl_to_bj",
    "SymLangError",
    "format_operator",
    "format_symbol",
    "parse",
    "BJQuadrature",
    "BJSinc",
    "BoundaryDecayWarning",
    "NumericParams",
    "SampledSymbol",
    "SampledWavefunction",
    "ShubinOrderEstimate",
    "TauScheme",
    "UniformGrid",
    "WeylScheme",
    "antiwick_apply",
    "apply_operator",
    "bj_weyl_symbol_numeric",
    "estimate_shubin_order",
    "gaussian_state",
    "grossmann_royer_apply",
    "heisenberg_shift",
    "hermite_state",
    "null_symbol",
    "q_norm_estimate",
    "sample_symbol",
    "symplectic_ft",
    "wavefunction_from_csv",
    "wavefunction_from_json",
    "wavefunction_to_csv",
    "wavefunction_to_json",
    "weyl_via_grossmann_royer",
    "__version__",
]
