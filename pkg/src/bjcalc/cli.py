"""Command-line front end.

Subcommands: quantize, convert, coeffs, apply, verify.  Exit codes: 0 on
success, 1 on usage errors, 2 on computation errors, 3 when a verification
check fails.  Output is deterministic for a fixed command line.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import numeric, symlang
from .exact import SymbolPoly
from .numeric import (
    BJQuadrature,
    BJSinc,
    NumericParams,
    SampledSymbol,
    TauScheme,
    UniformGrid,
    WeylScheme,
)
from .operators import OpPoly
from .quantize import BornJordan, Tau, Weyl, quantize_symbol
from .transforms import (
    CoeffTable,
    bj_to_tau,
    bj_to_weyl,
    tau_shift,
    weyl_to_bj,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 instead of argparse's 2
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------


def _parse_fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid {what} {text!r}: {exc}") from None


def _parse_rule(text: str):
    if text == "weyl":
        return Weyl()
    if text in ("bj", "born-jordan"):
        return BornJordan()
    if text.startswith("tau:"):
        return Tau(_parse_fraction(text[4:], "ordering parameter"))
    raise UsageError(f"unknown rule {text!r} (expected weyl, bj, or tau:VALUE)")


def _parse_scheme(text: str, quadrature: int):
    if text == "weyl":
        return WeylScheme()
    if text.startswith("tau:"):
        try:
            return TauScheme(float(Fraction(text[4:])))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"invalid ordering parameter: {exc}") from None
    if text == "bj-quadrature":
        return BJQuadrature(quadrature)
    if text == "bj-sinc":
        return BJSinc()
    raise UsageError(
        f"unknown scheme {text!r} "
        "(expected weyl, tau:VALUE, bj-quadrature, or bj-sinc)"
    )


def _named_state(text: str, grid: UniformGrid, hbar: float):
    if text == "gaussian":
        return numeric.gaussian_state(grid, hbar)
    if text.startswith("hermite:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"invalid Hermite index in {text!r}") from None
        return numeric.hermite_state(grid, k, hbar)
    if text.endswith(".csv"):
        with open(text) as handle:
            psi = numeric.wavefunction_from_csv(handle.read(), grid.length, hbar)
        if psi.grid != grid:
            raise ValueError(
                f"CSV state has {psi.grid.n_points} samples, grid expects "
                f"{grid.n_points}"
            )
        return psi
    raise UsageError(
        f"unknown state {text!r} (expected gaussian, hermite:K, or a .csv path)"
    )


def _named_symbol(text: str, dim: int, grid: UniformGrid, hbar: float):
    """Resolve a symbol argument: a named generator or a symbol expression."""
    if text == "harmonic":
        half = SymbolPoly.monomial(dim, coeff=_half(), x=(2,) + (0,) * (dim - 1))
        half = half + SymbolPoly.monomial(dim, coeff=_half(), p=(2,) + (0,) * (dim - 1))
        return half
    if text.startswith("monomial:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError("expected monomial:R:S")
        try:
            r, s = int(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"invalid monomial exponents in {text!r}") from None
        if r < 0 or s < 0:
            raise UsageError("monomial exponents must be non-negative")
        return SymbolPoly.monomial(dim, x=(r,) + (0,) * (dim - 1),
                                   p=(s,) + (0,) * (dim - 1))
    if text.startswith("sinc-null:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError("expected sinc-null:X0:P0")
        try:
            x0, p0 = float(parts[1]), float(parts[2])
        except ValueError:
            raise UsageError(f"invalid null-point coordinates in {text!r}") from None
        symbol, _ = numeric.null_symbol(grid, hbar, x0, p0)
        return symbol
    return symlang.parse(text, dim=dim)


def _half():
    from .exact import ExactScalar

    return ExactScalar.rational(Fraction(1, 2))


# ---------------------------------------------------------------------------
# JSON emission
# ---------------------------------------------------------------------------


def _scalar_entries(coeff):
    for (h, tau_p, t_p), (re, im) in sorted(coeff.terms.items()):
        if tau_p or t_p:
            raise ValueError("cannot serialize a formal ordering parameter")
        yield {"re": str(re), "im": str(im), "hbar_pow": h}


def _symbol_json(a: SymbolPoly) -> dict:
    terms = []
    for (kx, kp), coeff in a.sorted_terms():
        for entry in _scalar_entries(coeff):
            terms.append({"x": list(kx), "p": list(kp), "coeff": entry})
    return {"kind": "symbol", "dimension": a.dim, "terms": terms}


def _operator_json(op: OpPoly) -> dict:
    terms = []
    for (kx, kp), coeff in op.sorted_terms():
        for entry in _scalar_entries(coeff):
            terms.append({"x": list(kx), "p": list(kp), "coeff": entry})
    return {"kind": "oppoly", "dimension": op.dim, "terms": terms}


def _table_json(table: CoeffTable) -> dict:
    entries = [
        {"order": k, "c": str(table.values[k]), "bernoulli": str(table.bernoullis[k])}
        for k in sorted(table.values)
    ]
    return {"kind": "table", "max_order": table.max_order, "entries": entries}


def _emit_json(payload: dict, out) -> None:
    json.dump(payload, out, indent=2)
    out.write("\n")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_quantize(args, out) -> int:
    if args.rule is not None and args.rule_flag is not None:
        raise UsageError("give the rule either positionally or via --rule, not both")
    rule_text = args.rule if args.rule is not None else args.rule_flag
    if rule_text is None:
        raise UsageError("missing rule (positional or --rule)")
    rule = _parse_rule(rule_text)
    a = symlang.parse(args.symbol, dim=args.dim)
    if a.total_degree() > args.max_degree:
        raise ValueError(
            f"symbol degree {a.total_degree()} exceeds --max-degree {args.max_degree}"
        )
    op = quantize_symbol(rule, a)
    if op.has_aux():
        raise ValueError("result carries a formal ordering parameter")
    if args.output == "json":
        _emit_json(_operator_json(op), out)
    else:
        out.write(symlang.format_operator(op) + "\n")
    return 0


def _calc_point(text: str) -> Fraction | None:
    """Map a calculus name to its ordering parameter (None for Born-Jordan)."""
    if text in ("bj", "born-jordan"):
        return None
    if text == "weyl":
        return Fraction(1, 2)
    if text.startswith("tau:"):
        return _parse_fraction(text[4:], "ordering parameter")
    raise UsageError(f"unknown calculus {text!r} (expected weyl, bj, or tau:VALUE)")


def _convert_between(a: SymbolPoly, src: str, dst: str) -> SymbolPoly:
    s, t = _calc_point(src), _calc_point(dst)
    if s is None:
        return a if t is None else bj_to_tau(a, t)
    if t is None:
        return weyl_to_bj(tau_shift(a, s, Fraction(1, 2)))
    return tau_shift(a, s, t)


def _cmd_convert(args, out) -> int:
    a = symlang.parse(args.symbol, dim=args.dim)
    if a.total_degree() > args.max_degree:
        raise ValueError(
            f"symbol degree {a.total_degree()} exceeds --max-degree {args.max_degree}"
        )
    d = args.direction
    if d is not None and (args.from_calc is not None or args.to_calc is not None):
        raise UsageError(
            "give the direction either positionally or via --from/--to, not both"
        )
    if d is None:
        if args.from_calc is None or args.to_calc is None:
            raise UsageError("missing direction (positional or --from/--to)")
        result = _convert_between(a, args.from_calc, args.to_calc)
    elif d == "bj-to-weyl":
        result = bj_to_weyl(a)
    elif d == "weyl-to-bj":
        result = weyl_to_bj(a)
    elif d.startswith("bj-to-tau:"):
        result = bj_to_tau(a, _parse_fraction(d.split(":", 1)[1], "ordering parameter"))
    elif d.startswith("tau-shift:"):
        parts = d.split(":")
        if len(parts) != 3:
            raise UsageError("expected tau-shift:FROM:TO")
        result = tau_shift(
            a,
            _parse_fraction(parts[1], "ordering parameter"),
            _parse_fraction(parts[2], "ordering parameter"),
        )
    else:
        raise UsageError(
            f"unknown direction {d!r} (expected bj-to-weyl, weyl-to-bj, "
            "bj-to-tau:VALUE, or tau-shift:FROM:TO)"
        )
    if args.output == "json":
        _emit_json(_symbol_json(result), out)
    else:
        out.write(symlang.format_symbol(result) + "\n")
    return 0


def _cmd_coeffs(args, out) -> int:
    if args.max < 0:
        raise UsageError("--max must be non-negative")
    table = CoeffTable.build(args.max)
    if args.output == "json":
        _emit_json(_table_json(table), out)
    elif args.output == "csv":
        out.write("order,c,bernoulli\n")
        for k in sorted(table.values):
            out.write(f"{k},{table.values[k]},{table.bernoullis[k]}\n")
    else:
        out.write("order  c                 bernoulli\n")
        for k in sorted(table.values):
            out.write(f"{k:<6d} {str(table.values[k]):<17s} {table.bernoullis[k]}\n")
    return 0


def _cmd_apply(args, out) -> int:
    if args.dim != 1:
        raise UsageError("apply supports dimension 1 only")
    grid = UniformGrid(args.grid, args.box)
    params = NumericParams(
        hbar=args.hbar, quadrature_order=args.quadrature, tolerance=args.tolerance
    )
    scheme = _parse_scheme(args.scheme, args.quadrature)
    psi = _named_state(args.state, grid, args.hbar)
    symbol = _named_symbol(args.symbol, 1, grid, args.hbar)
    if isinstance(symbol, SymbolPoly) and symbol.total_degree() > args.max_degree:
        raise ValueError(
            f"symbol degree {symbol.total_degree()} exceeds "
            f"--max-degree {args.max_degree}"
        )
    result = numeric.apply_operator(symbol, psi, scheme, params)
    if args.output == "json":
        _emit_json(numeric.wavefunction_to_json(result), out)
    elif args.output == "csv":
        out.write(numeric.wavefunction_to_csv(result))
    else:
        out.write(f"N={grid.n_points} L={grid.length:g} hbar={args.hbar:g}\n")
        out.write(f"norm={result.norm():.12g}\n")
        peak = int(np.argmax(np.abs(result.values)))
        out.write(
            f"peak x={grid.x_values()[peak]:.6g} "
            f"|psi|={abs(result.values[peak]):.12g}\n"
        )
    return 0


def _verify_checks():
    from .exact import ExactScalar
    from .quantize import quantize_monomial, tau_average

    def commutator_normalization():
        x, p = OpPoly.x_op(1), OpPoly.p_op(1)
        expected = OpPoly.constant(1, ExactScalar.i() * ExactScalar.hbar())
        return x.commutator(p) == expected

    def monomial_equal_weight_average():
        bj = quantize_monomial(BornJordan(), 2, 2)
        formal = quantize_monomial(Tau(None), 2, 2)
        return tau_average(formal) == bj and not bj.has_aux()

    def symmetric_midpoint():
        return quantize_monomial(Tau(Fraction(1, 2)), 3, 3) == quantize_monomial(
            Weyl(), 3, 3
        )

    def conversion_roundtrip():
        a = symlang.parse("x^3*p^3 + 2*x*p^2 - 7")
        return weyl_to_bj(bj_to_weyl(a)) == a and bj_to_weyl(weyl_to_bj(a)) == a

    def coefficient_table():
        table = CoeffTable.build(8)
        expected = {
            0: Fraction(1),
            2: Fraction(-1, 3),
            4: Fraction(7, 15),
            6: Fraction(-31, 21),
            8: Fraction(127, 15),
        }
        return table.values == expected

    def grid_involution():
        grid = UniformGrid(64, 12.0)
        x = grid.x_values()
        p = grid.p_values(1.0)
        values = np.exp(-np.add.outer(x**2, p**2) / 2)
        a = SampledSymbol(grid, values.astype(complex), 1.0)
        twice = numeric.symplectic_ft(numeric.symplectic_ft(a))
        return float(np.max(np.abs(twice.values - a.values))) < 1e-10

    def conversion_vs_quantizer():
        a = symlang.parse("x^2*p^2 + 3*x*p")
        return quantize_symbol(Weyl(), bj_to_weyl(a)) == quantize_symbol(
            BornJordan(), a
        )

    def scheme_coherence():
        grid = UniformGrid(256, 20.0)
        psi = numeric.hermite_state(grid, 2)
        a = symlang.parse("x^2*p + x")
        weyl_of_bj = numeric.apply_operator(bj_to_weyl(a), psi, WeylScheme())
        worst = 0.0
        for scheme, reference in (
            (TauScheme(0.5), numeric.apply_operator(a, psi, WeylScheme())),
            (BJQuadrature(12), weyl_of_bj),
            (BJSinc(), weyl_of_bj),
        ):
            got = numeric.apply_operator(a, psi, scheme)
            worst = max(worst, float(np.max(np.abs(got.values - reference.values))))
        return worst < 1e-8

    def harmonic_ground_state():
        grid = UniformGrid(256, 20.0)
        psi = numeric.gaussian_state(grid)
        a = symlang.parse("1/2*x^2 + 1/2*p^2")
        result = numeric.apply_operator(a, psi, WeylScheme())
        err = float(np.max(np.abs(result.values - 0.5 * psi.values)))
        return err < 1e-8

    return [
        ("commutator-normalization", commutator_normalization),
        ("monomial-equal-weight-average", monomial_equal_weight_average),
        ("symmetric-midpoint", symmetric_midpoint),
        ("conversion-roundtrip", conversion_roundtrip),
        ("conversion-vs-quantizer", conversion_vs_quantizer),
        ("coefficient-table", coefficient_table),
        ("scheme-coherence", scheme_coherence),
        ("grid-involution", grid_involution),
        ("harmonic-ground-state", harmonic_ground_state),
    ]


def _cmd_verify(args, out) -> int:
    failures = 0
    for name, check in _verify_checks():
        ok = bool(check())
        out.write(f"{'PASS' if ok else 'FAIL'} {name}\n")
        if not ok:
            failures += 1
    out.write(f"{'ok' if not failures else 'failed'}: "
              f"{len(_verify_checks()) - failures}/{len(_verify_checks())} checks\n")
    return 0 if not failures else 3


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, top: bool) -> None:
    """Attach the shared flags.

    They live on the top-level parser with real defaults, and on every
    subparser with suppressed defaults so they can also appear after the
    subcommand without clobbering values given before it.
    """
    S = argparse.SUPPRESS

    def d(value):
        return value if top else S

    parser.add_argument("--output", choices=("text", "json", "csv"),
                        default=d("text"))
    parser.add_argument("--dim", type=int, default=d(1),
                        help="phase-space dimension")
    parser.add_argument("--hbar", type=float, default=d(1.0))
    parser.add_argument("--grid", type=int, default=d(512), help="grid points N")
    parser.add_argument("--box", type=float, default=d(20.0), help="box length L")
    parser.add_argument("--quadrature", type=int, default=d(16),
                        help="Gauss-Legendre order for the averaged rule")
    parser.add_argument("--tolerance", type=float, default=d(1e-8))
    parser.add_argument("--max-degree", type=int, default=d(64))


def build_parser() -> _Parser:
    parser = _Parser(prog="bjcalc", description=__doc__.splitlines()[0])
    _add_common(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    q = sub.add_parser("quantize", help="quantize a polynomial symbol")
    _add_common(q, top=False)
    q.add_argument("rule", nargs="?", default=None, help="weyl, bj, or tau:VALUE")
    q.add_argument("symbol")
    q.add_argument("--rule", dest="rule_flag", default=None,
                   help="alternative to the positional rule")
    q.set_defaults(func=_cmd_quantize)

    c = sub.add_parser("convert", help="convert between calculi symbols")
    _add_common(c, top=False)
    c.add_argument("direction", nargs="?", default=None,
                   help="bj-to-weyl, weyl-to-bj, bj-to-tau:VALUE, tau-shift:FROM:TO")
    c.add_argument("symbol")
    c.add_argument("--from", dest="from_calc", default=None,
                   help="source calculus: weyl, bj, or tau:VALUE")
    c.add_argument("--to", dest="to_calc", default=None,
                   help="target calculus: weyl, bj, or tau:VALUE")
    c.set_defaults(func=_cmd_convert)

    t = sub.add_parser("coeffs", help="tabulate the conversion coefficients")
    _add_common(t, top=False)
    t.add_argument("--max", type=int, default=12, help="largest order")
    t.set_defaults(func=_cmd_coeffs)

    a = sub.add_parser("apply", help="apply a quantized operator to a state")
    _add_common(a, top=False)
    a.add_argument("symbol",
                   help="expression, harmonic, monomial:R:S, or sinc-null:X0:P0")
    a.add_argument("state", help="gaussian, hermite:K, or a .csv path")
    a.add_argument("--scheme", default="weyl",
                   help="weyl, tau:VALUE, bj-quadrature, or bj-sinc")
    a.set_defaults(func=_cmd_apply)

    v = sub.add_parser("verify", help="run the built-in identity checks")
    _add_common(v, top=False)
    v.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args, sys.stdout)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
