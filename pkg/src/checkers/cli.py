"""Command-line front end.

Every subcommand is deterministic; numbers go to stdout (or ``--output``)
as plain text, CSV or JSON.  Parameters are read as decimal strings so that
``x/eps`` and ``t/eps`` can be checked to be integers exactly.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from decimal import Decimal
from fractions import Fraction

from . import __version__, asymptotics, closed_forms, combinatorics, identities, lattice, spectral
from .asymptotics import RegionError
from .lattice import LatticeParams

GRID_HEADER = ["ix", "it", "m", "eps", "a1", "a2", "P"]


class UsageError(Exception):
    """Invalid parameter combination, reported with exit status 2."""


def _num(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a decimal number: {s!r}")


def _positive(s: str) -> Fraction:
    v = _num(s)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {s!r}")
    return v


def _index(value: Fraction, eps: Fraction, name: str) -> int:
    q = value / eps
    if q.denominator != 1:
        raise UsageError(f"{name}/eps = {q} is not an integer")
    return int(q)


def _params(args) -> LatticeParams:
    return LatticeParams(float(args.m), float(args.eps))


def _is_unit(args) -> bool:
    return args.m == 1 and args.eps == 1


def _dec(v: Fraction) -> str:
    """Decimal text of a parsed number (inputs are terminating decimals)."""
    return format((Decimal(v.numerator) / Decimal(v.denominator)).normalize(), "f")


def _g(v: float) -> str:
    return format(float(v), ".17g")


def _short(v: float) -> str:
    return format(float(v), ".15g")


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_table(rows: list[list], header: list[str], fmt: str, path: str | None, meta: dict) -> None:
    out, close = _open_out(path)
    try:
        if fmt == "json":
            records = [dict(zip(header, r)) for r in rows]
            json.dump({"meta": meta, "rows": records}, out, indent=1)
            out.write("\n")
        else:
            w = csv.writer(out, lineterminator="\n")
            w.writerow(header)
            for r in rows:
                w.writerow([_g(v) if isinstance(v, float) else v for v in r])
    finally:
        if close:
            out.close()


def _meta(args, **extra) -> dict:
    d = {"version": __version__, "subcommand": args.command}
    for k in ("m", "eps"):
        if hasattr(args, k):
            d[k] = _dec(getattr(args, k))
    d.update(extra)
    return d


# ---------------------------------------------------------------------------
# subcommands


def cmd_amplitude(args) -> int:
    ix = _index(args.x, args.eps, "x")
    it = _index(args.t, args.eps, "t")
    if it < 1:
        raise UsageError("t must be at least eps")
    if _is_unit(args):
        A = lattice.amplitude_exact(ix, it)
        a = A.to_pair()
        print(f"a1={_short(a.a1)} a2={_short(a.a2)} P={_short(float(A.P))}")
        if args.exact:
            print(f"A1={A.A1} A2={A.A2} scale=2^({it - 1}/2)")
    else:
        a = lattice.amplitude_dp(ix, it, _params(args))
        print(f"a1={_short(a.a1)} a2={_short(a.a2)} P={_short(a.P)}")
    return 0


def _row_records(r: lattice.Row, args) -> list[list]:
    rows = []
    for ix in range(1 - r.it, r.it + 1):
        if (ix + r.it) % 2:
            continue
        a = r.at(ix)
        rows.append([ix, r.it, _dec(args.m), _dec(args.eps), float(a.a1), float(a.a2), float(a.P)])
    return rows


def cmd_grid(args) -> int:
    it_max = _index(args.t_max, args.eps, "t-max")
    if it_max < 1:
        raise UsageError("t-max must be at least eps")
    rows = []
    for r in lattice.iter_rows(it_max, _params(args)):
        rows.extend(_row_records(r, args))
    _write_table(rows, GRID_HEADER, args.format, args.output, _meta(args, t_max=_dec(args.t_max)))
    return 0


def cmd_distribution(args) -> int:
    it = _index(args.t, args.eps, "t")
    if it < 1:
        raise UsageError("t must be at least eps")
    params = _params(args)
    r = lattice.row(it, params)
    rows = []
    cum = 0.0
    for ix in range(1 - it, it + 1, 2) if it % 2 else range(2 - it, it + 1, 2):
        P = float(r.at(ix).P)
        cum += P
        v = ix / it
        rows.append([ix, v, P, cum, asymptotics.limiting_F(v, params)])
    _write_table(rows, ["ix", "v", "P", "F_t", "F"], args.format, args.output, _meta(args, t=_dec(args.t)))
    if args.summary:
        t = float(args.t)
        print(f"sup|F_t-F|={_short(asymptotics.cdf_sup_distance(t, params))}", file=sys.stderr)
        for k in (1, 2, 3):
            print(f"moment{k}={_short(asymptotics.moment(k, t, params))} "
                  f"limit={_short(asymptotics.limit_moment(k, params))}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    names = list(identities.SUITES) if args.suite == "all" else [args.suite]
    t_max = None if args.t_max is None else int(args.t_max)
    params = LatticeParams(float(args.m), float(args.eps))
    ok = True
    for name in names:
        res = identities.run_suite(name, t_max, params)
        print(res.line())
        ok &= res.passed
    return 0 if ok else 1


def cmd_asympt(args) -> int:
    params = _params(args)
    ix = _index(args.x, args.eps, "x")
    it = _index(args.t, args.eps, "t")
    regime = args.regime
    try:
        if regime == "simple":
            x, t = float(args.x), float(args.t)
            approx = asymptotics.simple_asymptotic(x, t, params)
            exact = lattice.amplitude_dp(ix, it, params).a
            print(f"approx={_short(approx.real)}{approx.imag:+.15g}j exact={_short(exact.real)}{exact.imag:+.15g}j")
            return 0
        if regime == "anti":
            b1, b2 = asymptotics.anti_asymptotic(ix, it, params)
            q1, q2 = spectral.b_values(ix, it, params)
            print(f"b1_approx={_short(b1)} b2_approx={_short(b2)} b1={_short(q1)} b2={_short(q2)}")
            return 0
        fn = {"between": asymptotics.approx_between_peaks, "airy": asymptotics.approx_airy,
              "outside": asymptotics.approx_outside}[regime]
        approx = fn(ix, it, params)
    except RegionError as e:
        raise UsageError(str(e))
    exact = lattice.amplitude_dp(ix, it, params)
    print(f"a1_approx={_short(approx.a1)} a2_approx={_short(approx.a2)} "
          f"a1={_short(exact.a1)} a2={_short(exact.a2)}")
    return 0


def cmd_propagator(args) -> int:
    m, x, t, delta = float(args.m), float(args.x), float(args.t), float(args.delta)
    try:
        res = asymptotics.algorithm1_run(m, x, t, delta, None if args.eps is None else float(args.eps))
    except ValueError as e:
        raise UsageError(str(e))
    print(f"prescribed_eps={res.prescribed_eps:.3g}")
    if not res.feasible:
        print(f"INFEASIBLE t/eps={t / res.eps:.3g} exceeds {asymptotics.MAX_ROWS:.0e}; pass --eps to override")
        return 0
    print(f"eps={res.eps:.6g}")
    for k in range(2):
        for l in range(2):
            g, ref = res.G[k, l], res.G_exact[k, l]
            print(f"G{k + 1}{l + 1}={g.real:.10g}{g.imag:+.10g}j GR={ref.real:.10g}{ref.imag:+.10g}j")
    print(f"error={res.error:.6g}")
    return 0


def cmd_anti(args) -> int:
    ix = _index(args.x, args.eps, "x")
    it = _index(args.t, args.eps, "t")
    A = spectral.anti_amplitude(ix, it, _params(args))
    if A.odd:
        print(f"b1={_short(A.b1)} b2={_short(A.b2)}")
    else:
        print(f"A1={_short(A.A1.real)} A2={_short(A.A2.real)}")
    return 0


def cmd_loops(args) -> int:
    lat = combinatorics.TorusLattice(args.T, float(args.eps), float(args.m), float(args.delta))
    tab = combinatorics.monomial_table(lat)
    den = combinatorics.weighted_sum(lat)
    print(f"T={args.T} configurations={sum(c for _, c in tab)} sum={den.real:.15g}{den.imag:+.15g}j")
    if args.list:
        for c in combinatorics.enumerate_configs(lat):
            w = c.arrow(lat.mu, lat.delta)
            print(f"  loops={list(c.loops)} arrow={w.real:.15g}{w.imag:+.15g}j")
    if args.estimate is not None:
        ix, it = args.estimate
        est = combinatorics.anti_checker_estimate(ix, it, float(args.m), float(args.eps), args.T)
        for k in (1, 2):
            e, ref = est.estimate[k], est.reference[k]
            print(f"A~{k}={e.real:.10g}{e.imag:+.10g}j fourier={ref.real:.10g}{ref.imag:+.10g}j "
                  f"gap={est.discrepancy(k):.3g}")
    return 0


def cmd_young(args) -> int:
    try:
        c = closed_forms.young_counts(args.h, args.w)
        b = closed_forms.young_counts_below(args.h, args.w)
    except ValueError as e:
        raise UsageError(str(e))
    A = lattice.amplitude_exact(args.h - args.w, args.h + args.w)
    print(f"h={args.h} w={args.w} n_even={c.n_even} n_odd={c.n_odd} n_odd-n_even={c.delta} A1={A.A1}")
    print(f"fewer rows: n_even={b.n_even} n_odd={b.n_odd} n_even-n_odd={-b.delta} A2={A.A2}")
    return 0


def _fig4(args):
    params = LatticeParams(1.0, 1.0)
    r = lattice.row(1000, params)
    args.m, args.eps = Fraction(1), Fraction(1)
    return GRID_HEADER, _row_records(r, args)


def _fig8(args):
    rows = []
    for t in (100, 1000):
        r = lattice.row(t)
        cum = 0.0
        for ix in range(2 - t, t + 1, 2):
            cum += float(r.at(ix).P)
            v = ix / t
            rows.append([t, ix, v, cum, asymptotics.limiting_F(v)])
    return ["it", "ix", "v", "F_t", "F"], rows


def _try(fn, *a):
    try:
        return fn(*a)
    except (RegionError, ValueError):
        return None


def _fig10(args):
    params = LatticeParams(4.0, 0.5)
    it = 100
    r = lattice.row(it, params)
    rows = []
    for ix in range(2 - it, it + 1, 2):
        a1 = float(r.at(ix).a1)
        vals = []
        for fn in (asymptotics.approx_between_peaks, asymptotics.approx_airy, asymptotics.approx_outside):
            p = _try(fn, ix, it + 0, params)
            vals.append(p.a1 if p is not None else "")
        ratios = [a1 / v if isinstance(v, float) and v != 0 else "" for v in vals]
        rows.append([ix, ix * 0.5, a1] + vals + ratios)
    header = ["ix", "x", "a1", "between", "airy", "outside", "ratio_between", "ratio_airy", "ratio_outside"]
    return header, rows


def _fig12(args):
    m, eps, it = 4.0, 0.03, 200
    params = LatticeParams(m, eps)
    t = it * eps
    rows = []
    for ix in range(1 - it, it, 2):
        A = spectral.anti_amplitude(ix, it, params)
        x = ix * eps
        G = asymptotics.feynman_G(x, t, m)
        appr = _try(asymptotics.anti_asymptotic, ix, it, params)
        row = [ix, x, A.b1, A.b2, A.b1 / (4 * eps), A.b2 / (4 * eps),
               G[0, 0].imag, G[0, 1].imag]
        row += [appr[0], appr[1]] if appr else ["", ""]
        rows.append(row)
    header = ["ix", "x", "b1", "b2", "b1_scaled", "b2_scaled", "ImGF11", "ImGF12", "b1_approx", "b2_approx"]
    return header, rows


FIGURES = {"4": _fig4, "8": _fig8, "10": _fig10, "12": _fig12}


def cmd_export_figure(args) -> int:
    header, rows = FIGURES[args.figure](args)
    out, close = _open_out(args.output)
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_g(v) if isinstance(v, float) else v for v in r])
    finally:
        if close:
            out.close()
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="checkers", description="Feynman checkers amplitudes and checks.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def lattice_args(sp, m="1", eps="1"):
        sp.add_argument("--m", type=_positive, default=_num(m), help="particle mass")
        sp.add_argument("--eps", type=_positive, default=_num(eps), help="lattice step")

    def output_args(sp):
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    sp = sub.add_parser("amplitude", help="amplitude at one point")
    lattice_args(sp)
    sp.add_argument("--x", type=_num, required=True)
    sp.add_argument("--t", type=_num, required=True)
    sp.add_argument("--exact", action="store_true", help="also print the integer numerators (m = eps = 1)")
    sp.set_defaults(func=cmd_amplitude)

    sp = sub.add_parser("grid", help="all black sites up to a time")
    lattice_args(sp)
    sp.add_argument("--t-max", type=_num, required=True)
    output_args(sp)
    sp.set_defaults(func=cmd_grid)

    sp = sub.add_parser("distribution", help="position distribution and its limit")
    lattice_args(sp)
    sp.add_argument("--t", type=_num, required=True)
    sp.add_argument("--summary", action="store_true", help="print sup distance and moments to stderr")
    output_args(sp)
    sp.set_defaults(func=cmd_distribution)

    sp = sub.add_parser("verify", help="run identity suites")
    lattice_args(sp)
    sp.add_argument("--suite", choices=list(identities.SUITES) + ["all"], default="all")
    sp.add_argument("--t-max", type=int, default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("asympt", help="compare an asymptotic formula with the exact value")
    lattice_args(sp)
    sp.add_argument("--regime", choices=["between", "airy", "outside", "simple", "anti"], default="between")
    sp.add_argument("--x", type=_num, required=True)
    sp.add_argument("--t", type=_num, required=True)
    sp.set_defaults(func=cmd_asympt)

    sp = sub.add_parser("propagator", help="approximate the retarded propagator")
    sp.add_argument("--m", type=_positive, default=_num("1"))
    sp.add_argument("--x", type=_num, required=True)
    sp.add_argument("--t", type=_positive, required=True)
    sp.add_argument("--delta", type=_positive, required=True, help="requested accuracy")
    sp.add_argument("--eps", type=_positive, default=None, help="override the prescribed step")
    sp.set_defaults(func=cmd_propagator)

    sp = sub.add_parser("anti", help="Fourier values on any site (b on white sites)")
    lattice_args(sp)
    sp.add_argument("--x", type=_num, required=True)
    sp.add_argument("--t", type=_num, required=True)
    sp.set_defaults(func=cmd_anti)

    sp = sub.add_parser("loops", help="loop configurations on a small torus")
    lattice_args(sp)
    sp.add_argument("--T", type=int, choices=[1, 2, 3], default=1)
    sp.add_argument("--delta", type=_positive, default=_num("0.1"))
    sp.add_argument("--list", action="store_true", help="list every configuration")
    sp.add_argument("--estimate", type=int, nargs=2, metavar=("IX", "IT"), default=None)
    sp.set_defaults(func=cmd_loops)

    sp = sub.add_parser("young", help="Young diagram step counts")
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--w", type=int, required=True)
    sp.set_defaults(func=cmd_young)

    sp = sub.add_parser("export-figure", help="data behind a figure as CSV")
    sp.add_argument("--figure", choices=list(FIGURES), required=True)
    sp.add_argument("--output", "-o", default=None)
    sp.set_defaults(func=cmd_export_figure)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(str(e))
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
