"""Command-line batch driver.

Each ``verify-*`` subcommand evaluates one identity family over a sample grid
and writes one report row per evaluation.  Exit status: 0 when every asserted
invariant holds, 2 when one fails, 3 on configuration or input errors.
Families classified as findings never fail a run.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import arith, mellin, residues, volterra, zeros
from .zeta import chi, zeta
from .arith import ArithmeticKind
from .errors import SummaError
from .report import ResidualReport, TruncationSpec, report_write, to_csv, to_json

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 2, 3
INTEGER_GAP = 1e-6

FORMULA_MAP = [
    ("sieve", "arithmetic tables: Lambda, mu, -mu log, phi, unit"),
    ("zeros", "critical-line zero ordinates, Z(t) scan checked against N(T)"),
    ("verify-zeta", "zeta special values and functional equation [asserted]"),
    ("verify-volterra", "D_w = F_w + (1/y) int D_w, Volterra equation [asserted]"),
    ("verify-neumann", "Neumann series closed form, tail bound, quadrature oracle [asserted]"),
    ("verify-integrals", "sawtooth Mellin transform, {x}x^{-s-2} and {x}[x]x^{-s-2} integrals [asserted]"),
    ("verify-theorem1", "residue expansion of sum Lambda(n)n^{-w}{y/n}[y/n] [finding]"),
    ("verify-theorem2", "residue expansion of -sum mu(n)log(n){y/n}[y/n] [finding]"),
    ("verify-theorem33", "exact explicit formula with {n/x} weights, monotone in K [asserted]"),
    ("verify-divergence", "divergence of y^{1/2} sum gamma^{M'-1} [asserted]"),
    ("findings", "bracket-sum identity chain, Mobius/totient identities [finding]"),
]


class ConfigError(SummaError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


@dataclass
class Outcome:
    rows: list[ResidualReport] = field(default_factory=list)
    failed: bool = False

    def add(self, row: ResidualReport, passed: bool | None = None) -> None:
        if passed is False:
            row = row.with_status("fail")
            self.failed = True
        self.rows.append(row)


# --- sampling -------------------------------------------------------------------------


def sample_points(rng: np.random.Generator, lo: float, hi: float, count: int) -> np.ndarray:
    """Uniform draws in (lo, hi), rejecting anything within 1e-6 of an integer."""
    out = []
    while len(out) < count:
        y = rng.uniform(lo, hi, size=2 * (count - len(out)))
        keep = np.abs(y - np.round(y)) > INTEGER_GAP
        out.extend(y[keep][: count - len(out)].tolist())
    return np.array(out)


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


def _zero_table(args, K: int):
    if K == 0:
        return None
    table = zeros.zeros_for(args.T, args.precision, args.cache_dir)
    if K > len(table):
        raise ConfigError(f"--K-zeros {K} exceeds the {len(table)} zeros up to T={args.T:g}; raise --T")
    return table


# --- command families -----------------------------------------------------------------


def cmd_zeta(args, out: Outcome) -> None:
    tol = args.tol
    for name, s, exact in [("zeta_2", 2, math.pi**2 / 6), ("zeta_m1", -1, -1 / 12), ("zeta_0", 0, -0.5)]:
        v = zeta(s).real
        out.add(ResidualReport.build(name, {"s_re": s, "s_im": 0.0}, v, exact), abs(v - exact) <= 1e-12)
    rng = np.random.default_rng(args.seed)
    for sr, si in zip(rng.uniform(-10, 10, args.samples), rng.uniform(-100, 100, args.samples)):
        s = complex(sr, si)
        lhs = zeta(s)
        rhs = chi(s) * zeta(1 - s)
        row = ResidualReport.build("functional_equation", {"s_re": sr, "s_im": si}, lhs.real, rhs.real)
        out.add(row, _rel(lhs, rhs) <= tol)


def cmd_volterra(args, out: Outcome) -> None:
    table = arith.sieve(args.kind, args.N)
    inst = volterra.VolterraInstance(table, args.w, exploratory=args.exploratory)
    rng = np.random.default_rng(args.seed)
    for y in sample_points(rng, 1.0, float(args.N), args.samples):
        row = volterra.volterra_report(inst, float(y))
        out.add(row, None if row.status == "provisional" else abs(row.residual) < args.tol)
    for x in args.integer_points:
        out.add(volterra.volterra_report(inst, float(x)))
    if inst.kind is ArithmeticKind.MOBIUS:
        for x in sample_points(rng, 1.0, float(args.N), min(args.samples, 10)):
            integrated, literal = volterra.bvp_integrated_check(inst, float(x))
            out.add(integrated, abs(integrated.residual) < args.tol * max(1.0, x))
            out.add(literal)
        if inst.w >= 1:
            out.add(volterra.rh_exponent_report(table, inst.w))


def cmd_neumann(args, out: Outcome) -> None:
    table = arith.sieve(args.kind, args.N)
    inst = volterra.VolterraInstance(table, args.w)
    rng = np.random.default_rng(args.seed)
    y_hi = min(args.y_max, float(args.N))
    for y in sample_points(rng, 1.0, y_hi, args.samples):
        y = float(y)
        D = arith.dirichlet_polynomial(table, inst.w, y)
        partial = volterra.neumann_partial_sums(inst, y, args.K)
        bounds = [volterra.neumann_tail_bound(inst, y, K) for K in range(args.K + 1)]
        ok = all(abs(D - p) <= b * (1 + 1e-9) + 1e-15 for p, b in zip(partial, bounds))
        trunc = TruncationSpec(N_terms=args.K + 1)
        row = ResidualReport.build("neumann_series", {"y": y, "w": inst.w, "tail_bound": bounds[-1]}, D, partial[-1], trunc)
        out.add(row, ok and abs(row.residual) <= args.tol)
        for k in range(1, args.k_quad + 1):
            q = volterra.neumann_term_quadrature(inst, y, k, args.mesh)
            c = volterra.neumann_term_closed(inst, y, k)
            params = {"y": y, "w": inst.w, "k": k, "mesh": args.mesh, "error_estimate": q.error_estimate}
            out.add(ResidualReport.build("neumann_quadrature", params, q.value, c), abs(q.value - c) <= args.quad_tol)
    fp = volterra.kernel_fixed_point(math.pi)
    out.add(ResidualReport.build("kernel_fixed_point", {"y": math.pi}, fp, 1.0), abs(fp - 1) <= 1e-14)


def cmd_integrals(args, out: Outcome) -> None:
    q = mellin.QuadratureSpec(args.K_cells, args.tail_method, args.tail_tol)
    defaults = {"sawtooth": ["-1", "-2", "-0.5+1j", "-0.5-1j"], "31": ["-0.5", "-0.25"],
                "32": ["1", "2"], "kernel": ["1.5", "2+1j", "3"]}
    points = args.s or [_complex_arg(t) for t in defaults[args.theorem]]
    for s in points:
        if args.theorem == "kernel":
            v = mellin.theorem32_integral(s - 1, q)
            k = mellin.bracket_kernel(s)
            params = {"s_re": s.real, "s_im": s.imag, "lhs_im": v.value.imag, "rhs_im": k.imag}
            row = ResidualReport.build("mellin_kernel", params, v.value.real, k.real)
            out.add(row, _rel(v.value, k) <= args.rel_tol)
            continue
        row = mellin.mellin_report(args.theorem, s, q)
        lhs = complex(row.lhs, row.params["lhs_im"])
        rhs = complex(row.rhs, row.params["rhs_im"])
        if args.theorem == "sawtooth":
            passed = abs(lhs - rhs) < 1e-12
        else:
            passed = abs(lhs - rhs) <= args.rel_tol * abs(rhs)
        out.add(row, passed)


def cmd_theorem1(args, out: Outcome) -> None:
    table = arith.sieve(ArithmeticKind.VON_MANGOLDT, math.floor(max(args.y)))
    trunc = TruncationSpec(args.K_zeros, args.K_trivial)
    zt = _zero_table(args, args.K_zeros)
    for y in args.y:
        for w in args.w:
            out.add(residues.theorem1_report(y, w, trunc, zt, table))


def cmd_theorem2(args, out: Outcome) -> None:
    N = math.floor(max(args.y))
    mln = arith.sieve(ArithmeticKind.MOBIUS_LOG_NEG, N)
    lam = arith.sieve(ArithmeticKind.VON_MANGOLDT, N)
    trunc = TruncationSpec(args.K_zeros, args.K_trivial)
    zt = _zero_table(args, args.K_zeros)
    for y in args.y:
        out.add(residues.theorem2_report(y, trunc, zt, mln, lam))


def cmd_theorem33(args, out: Outcome) -> None:
    Ks = sorted(args.K_zeros)
    zt = _zero_table(args, Ks[-1])
    N = max(residues.theorem33_cutoff(x, args.tail_tol) for x in args.x)
    lam = arith.sieve(ArithmeticKind.VON_MANGOLDT, N)
    grid: dict[int, list[ResidualReport]] = {}
    for K in Ks:
        trunc = TruncationSpec(K, args.K_trivial)
        grid[K] = [
            residues.theorem33_report(x, trunc, zt, lam, args.tail_tol, args.form, args.midpoint) for x in args.x
        ]
    mean = [np.mean([abs(r.residual) for r in grid[K]]) for K in Ks]
    monotone = all(b <= a for a, b in zip(mean, mean[1:]))
    for K in Ks:
        for r in grid[K]:
            out.add(r, monotone)


def cmd_divergence(args, out: Outcome) -> None:
    zt = zeros.zeros_for(args.T, args.precision, args.cache_dir)
    S = residues.divergence_demo(args.M_prime, args.T, args.y, zt)
    monotone = bool(np.all(np.diff(S) >= 0))
    for g, v in zip(zt.ordinates, S):
        row = ResidualReport.build("divergence", {"gamma": g, "M_prime": args.M_prime, "y": args.y}, v, args.bound)
        out.add(row, monotone)
    if not S[-1] > args.bound:
        out.failed = True
        out.rows[-1] = out.rows[-1].with_status("fail")


def cmd_findings(args, out: Outcome) -> None:
    N = math.floor(max(args.x))
    mu = arith.sieve(ArithmeticKind.MOBIUS, N)
    phi = arith.sieve(ArithmeticKind.TOTIENT, N)
    lam = arith.sieve(ArithmeticKind.VON_MANGOLDT, N)
    for x in args.x:
        out.add(mellin.identity_report_19(x, mu, phi))
        out.add(mellin.identity_report_112(x, mu, phi))
        for table in (mu, lam, phi):
            for w in args.w:
                if table.kind is ArithmeticKind.TOTIENT and w == 0:
                    continue  # zeta(1+w)/zeta(2+w) has a pole
                out.add(mellin.identity_chain_16(x, w, table))


# --- parser ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, seed=True, zeros_opts=False) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="report path (default: stdout)")
    if seed:
        p.add_argument("--seed", type=int, default=0)
    if zeros_opts:
        p.add_argument("--T", type=float, default=250.0, help="zero table height")
        p.add_argument("--precision", type=float, default=1e-9)
        p.add_argument("--cache-dir", default=None, help=f"zero cache directory (env {zeros.CACHE_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="summa-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--list", action="store_true", help="print the formula-to-command map and exit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("sieve", help="write an arithmetic table as n,a(n)")
    p.add_argument("--kind", type=ArithmeticKind.parse, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("zeros", help="compute and cache zero ordinates")
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--precision", type=float, default=1e-9)
    p.add_argument("--out", help="cache file (default: inside --cache-dir)")
    p.add_argument("--cache-dir", default=None)

    p = sub.add_parser("verify-zeta", help=FORMULA_MAP[2][1])
    _common(p)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("verify-volterra", help=FORMULA_MAP[3][1])
    _common(p)
    p.add_argument("--kind", type=ArithmeticKind.parse, default=ArithmeticKind.MOBIUS)
    p.add_argument("--w", type=float, default=1.0)
    p.add_argument("--N", type=int, default=1000)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--integer-points", type=int, nargs="*", default=[], help="also emit warning rows at these y")
    p.add_argument("--exploratory", action="store_true", help="allow w < 1 (rows marked provisional)")
    p.set_defaults(func=cmd_volterra)

    p = sub.add_parser("verify-neumann", help=FORMULA_MAP[4][1])
    _common(p)
    p.add_argument("--kind", type=ArithmeticKind.parse, default=ArithmeticKind.MOBIUS)
    p.add_argument("--w", type=float, default=1.0)
    p.add_argument("--N", type=int, default=1000)
    p.add_argument("--y-max", type=float, default=100.0)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--K", type=int, default=40)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--k-quad", type=int, default=3)
    p.add_argument("--mesh", type=int, default=10_000)
    p.add_argument("--quad-tol", type=float, default=1e-4)
    p.set_defaults(func=cmd_neumann)

    p = sub.add_parser("verify-integrals", help=FORMULA_MAP[5][1])
    _common(p)
    p.add_argument("--theorem", choices=("sawtooth", "31", "32", "kernel"), required=True)
    p.add_argument("--s", type=_complex_arg, action="append", help="sample point, repeatable (e.g. -0.5+1j)")
    p.add_argument("--K-cells", type=int, default=10**6)
    p.add_argument("--tail-method", choices=[m.value for m in mellin.TailMethod], default="analytic_halfweight")
    p.add_argument("--tail-tol", type=float, default=1e-8)
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_integrals)

    p = sub.add_parser("verify-theorem1", help=FORMULA_MAP[6][1])
    _common(p, zeros_opts=True)
    p.add_argument("--y", type=float, nargs="+", default=[100.5, 10000.5])
    p.add_argument("--w", type=float, nargs="+", default=[0.5, 2.0])
    p.add_argument("--K-zeros", type=int, default=100)
    p.add_argument("--K-trivial", type=int, default=10)
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("verify-theorem2", help=FORMULA_MAP[7][1])
    _common(p, zeros_opts=True)
    p.add_argument("--y", type=float, nargs="+", default=[10000.5, 1000000.5])
    p.add_argument("--K-zeros", type=int, default=100)
    p.add_argument("--K-trivial", type=int, default=5)
    p.set_defaults(func=cmd_theorem2)

    p = sub.add_parser("verify-theorem33", help=FORMULA_MAP[8][1])
    _common(p, zeros_opts=True)
    p.add_argument("--x", type=float, nargs="+", default=[2.5, 10.0, 100.0])
    p.add_argument("--K-zeros", type=int, nargs="+", default=[10, 25, 50, 100])
    p.add_argument("--K-trivial", type=int, default=50)
    p.add_argument("--tail-tol", type=float, default=1e-3)
    p.add_argument("--form", choices=("displayed", "derived"), default="displayed",
                   help="'displayed': residue terms as stated; 'derived': re-derived inversion")
    p.add_argument("--midpoint", action="store_true", help="half-weight terms at jump points of the lhs")
    p.set_defaults(func=cmd_theorem33)

    p = sub.add_parser("verify-divergence", help=FORMULA_MAP[9][1])
    _common(p, zeros_opts=True)
    p.set_defaults(T=1000.0)
    p.add_argument("--M-prime", type=float, default=1.0)
    p.add_argument("--y", type=float, default=4.0)
    p.add_argument("--bound", type=float, default=1e3)
    p.set_defaults(func=cmd_divergence)

    p = sub.add_parser("findings", help=FORMULA_MAP[10][1])
    _common(p)
    p.add_argument("--x", type=float, nargs="+", default=[2.5, 10.5, 100.5])
    p.add_argument("--w", type=float, nargs="+", default=[0.0, 1.0])
    p.set_defaults(func=cmd_findings)
    return parser


def _emit(rows, fmt: str, path) -> None:
    if path:
        report_write(rows, fmt, path)
    else:
        if not rows:
            raise SummaError("refusing to write an empty report")
        sys.stdout.write(to_csv(rows) if fmt == "csv" else to_json(rows))


def _run_sieve(args) -> int:
    table = arith.sieve(args.kind, args.N)
    lines = ["n,a(n)"] + [f"{n},{v!r}" for n, v in enumerate(table.values.tolist()) if n]
    text = "\n".join(lines) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise SummaError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _run_zeros(args) -> int:
    if args.out:
        table = zeros.find_zeros(args.T, args.precision)
        try:
            zeros.save_zeros(args.out, table)
        except OSError as exc:
            raise SummaError(f"cannot write {args.out}: {exc}") from exc
    else:
        table = zeros.zeros_for(args.T, args.precision, args.cache_dir)
    print(f"{len(table)} zeros in (0, {args.T:g}]")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list:
        width = max(len(c) for c, _ in FORMULA_MAP)
        for cmd, desc in FORMULA_MAP:
            print(f"{cmd:<{width}}  {desc}")
        return EXIT_OK
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "sieve":
            return _run_sieve(args)
        if args.command == "zeros":
            return _run_zeros(args)
        out = Outcome()
        args.func(args, out)
        _emit(out.rows, args.format, args.out)
    except (SummaError, ValueError, OSError) as exc:
        print(f"summa-lab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_FAIL if out.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
