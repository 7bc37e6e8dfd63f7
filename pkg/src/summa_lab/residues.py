"""Truncated residue expansions over zeta zeros.

Right-hand sides are evaluated exactly as displayed in the source formulas
(``form="displayed"``); where an independent derivation gives a different
closed form, it is offered as ``form="derived"`` so both can be reported
side by side.  Zero sums run over the first ``K_zeros`` ordinates in
ascending order, each zero paired with its conjugate.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable

import numpy as np

from . import arith
from .arith import ArithmeticKind, ArithmeticTable
from .errors import DomainError, NearZeroError, PoleError, SizingError, SummaError
from .report import ResidualReport, TruncationSpec
from .zeros import ZeroTable
from .zeta import euler_gamma, zeta, zeta_and_prime, zeta_log_deriv

CONTOUR_RADIUS = 0.25
CONTOUR_POINTS = 64
PAIRING_TOL = 1e-9


def _require(table: ArithmeticTable, kind: ArithmeticKind) -> None:
    if table.kind is not kind:
        raise DomainError(f"expected a {kind.value} table, got {table.kind.value}")


def paired_zero_sum(term: Callable[[complex], complex], zeros: ZeroTable, trunc: TruncationSpec) -> float:
    """Sum term(rho) over the first K zeros and their conjugates.

    With pairing on, the conjugate terms are evaluated independently and the
    imaginary part of the total must vanish to 1e-9 (1 + |real part|).
    """
    rhos = zeros.rhos(trunc.K_zeros)
    if not trunc.pair_conjugates:
        return math.fsum(2.0 * term(complex(r)).real for r in rhos)
    re, im = [], []
    for r in rhos:
        for v in (term(complex(r)), term(complex(r).conjugate())):
            re.append(v.real)
            im.append(v.imag)
    total_re, total_im = math.fsum(re), math.fsum(im)
    if abs(total_im) > PAIRING_TOL * (1.0 + abs(total_re)):
        raise SummaError(f"conjugate pairing left an imaginary part {total_im:.3g}")
    return total_re


def contour_residue(f: Callable[[complex], complex], center: complex, radius: float = CONTOUR_RADIUS,
                    points: int = CONTOUR_POINTS) -> complex:
    """(1/2 pi i) times the integral of f around a circle, by the trapezoid rule."""
    acc_re, acc_im = [], []
    for j in range(points):
        e = cmath.exp(2j * math.pi * j / points)
        v = f(center + radius * e) * radius * e
        acc_re.append(v.real)
        acc_im.append(v.imag)
    return complex(math.fsum(acc_re), math.fsum(acc_im)) / points


# --- first residue expansion (von Mangoldt, weight n^{-w}) -------------------------


def theorem1_lhs(y: float, w: float, table: ArithmeticTable) -> float:
    """sum_{n<=y} Lambda(n) n^{-w} {y/n}[y/n]  -  sum_{n<=y} H_w(n)."""
    _require(table, ArithmeticKind.VON_MANGOLDT)
    if y <= 1:
        raise DomainError(f"y must exceed 1, got {y!r}")
    if w < 0:
        raise DomainError(f"w must be >= 0, got {w!r}")
    bracket = arith.weighted_bracket_sum(table, w, y)
    # sum_{n<=y} H_w(n) = sum_{d<=y} Lambda(d) d^{-w} [y/d]
    m = table.check_range(y)
    d = np.arange(1, m + 1, dtype=np.float64)
    h_sum = math.fsum(arith._weights(table, w, m) * np.floor(y / d))
    return math.fsum([bracket, -h_sum])


def theorem1_kappa(y: float, w: float) -> float:
    if w in (0, 1):
        return 0.0
    return (-(1 + w) * y ** (1 - w) * zeta(-w) / ((w - 1) * w)).real


def theorem1_rhs(y: float, w: float, trunc: TruncationSpec, zeros: ZeroTable | None = None) -> float:
    """kappa(w) + zeta'(w)/(6 zeta(w)) - y zeta'(1+w)/(2 zeta(1+w)) + zero and trivial sums."""
    if w == 1 or w == 0:
        raise PoleError(f"w={w:g} makes the s=1-w pole collide with s={1 - w:g}; rhs undefined")
    if w < 0:
        raise DomainError(f"w must be >= 0, got {w!r}")
    parts = [
        theorem1_kappa(y, w),
        (zeta_log_deriv(w) / 6).real,
        (-y * zeta_log_deriv(1 + w) / 2).real,
    ]

    def zero_term(rho: complex) -> complex:
        a = rho - w
        return y**a * (2 + w - rho) * zeta(a - 1) / (2 * a * (a - 1))

    if trunc.K_zeros:
        if zeros is None:
            raise DomainError("K_zeros > 0 needs a zero table")
        parts.append(paired_zero_sum(zero_term, zeros, trunc))
    for n in range(1, trunc.K_trivial + 1):
        b = 2 * n + w
        parts.append((y ** (-b) * (2 + b) * zeta(-b - 1) / (2 * b * (b + 1))).real)
    return math.fsum(parts)


def theorem1_report(y, w, trunc, zeros, table) -> ResidualReport:
    return ResidualReport.build(
        "theorem1", {"y": y, "w": w}, theorem1_lhs(y, w, table), theorem1_rhs(y, w, trunc, zeros), trunc, "finding"
    )


# --- second residue expansion (-mu log, double poles) -------------------------------


def theorem2_integrand(s: complex, y: float) -> complex:
    """y^{s+1} zeta'(s+1) (1-s) zeta(s) / (zeta(s+1)^2 s (s+1)), as written."""
    z1, dz1 = zeta_and_prime(s + 1)
    return y ** (s + 1) * dz1 * (1 - s) * zeta(s) / (z1 * z1 * s * (s + 1))


def theorem2_rbar(rho: complex, y: float) -> complex:
    """Closed-form double-pole coefficient at s = rho - 1 with y^rho stripped."""
    rho = complex(rho)
    if y <= 1:
        raise DomainError(f"y must exceed 1, got {y!r}")
    dz_rho = zeta_and_prime(rho)[1]
    if abs(dz_rho) < 1e-10:
        raise NearZeroError(f"|zeta'({rho})| < 1e-10; zero is not simple to working precision")
    z, dz = zeta_and_prime(rho - 1)
    L = math.log(y)
    cubic = rho**3 - 3 * rho**2 + 2 * rho
    bracket = cubic * dz + (-(rho**2) + 4 * rho - 2) * z + L * cubic * z
    return -bracket / ((rho - 1) ** 2 * rho**2 * dz_rho)


def theorem2_trivial_residue(n: int, y: float) -> complex:
    """Residue at s = -2n-1 (the R_{-2n}(y) y^{-2n} term), by contour quadrature."""
    if n < 1:
        raise DomainError("trivial-zero index starts at 1")
    return contour_residue(lambda s: theorem2_integrand(s, y), complex(-2 * n - 1))


def theorem2_lhs(y: float, mobius_log_neg: ArithmeticTable, von_mangoldt: ArithmeticTable) -> float:
    """-sum mu(n) log(n) {y/n}[y/n] - psi(y)."""
    _require(mobius_log_neg, ArithmeticKind.MOBIUS_LOG_NEG)
    _require(von_mangoldt, ArithmeticKind.VON_MANGOLDT)
    return math.fsum([
        arith.weighted_bracket_sum(mobius_log_neg, 0, y),
        -arith.dirichlet_polynomial(von_mangoldt, 0, y),
    ])


def theorem2_rhs(y: float, trunc: TruncationSpec, zeros: ZeroTable | None) -> float:
    parts = [y / 2]
    if trunc.K_zeros:
        if zeros is None:
            raise DomainError("K_zeros > 0 needs a zero table")
        parts.append(paired_zero_sum(lambda r: theorem2_rbar(r, y) * y**r, zeros, trunc))
    for n in range(1, trunc.K_trivial + 1):
        parts.append(theorem2_trivial_residue(n, y).real)
    return math.fsum(parts)


def theorem2_report(y, trunc, zeros, mobius_log_neg, von_mangoldt) -> ResidualReport:
    return ResidualReport.build(
        "theorem2",
        {"y": y},
        theorem2_lhs(y, mobius_log_neg, von_mangoldt),
        theorem2_rhs(y, trunc, zeros),
        trunc,
        "finding",
    )


# --- exact explicit formula with {n/x} weights --------------------------------------


def theorem33_tail_bound(x: float, N: int) -> float:
    """x * sum_{n>N} log(n)/n^2 <= x (log N + 1)/N."""
    return x * (math.log(N) + 1) / N


def theorem33_cutoff(x: float, tail_tol: float) -> int:
    """Smallest-ish N >= 3 with x (log N + 1)/N < tail_tol."""
    if tail_tol <= 0:
        raise DomainError("tail_tol must be positive")
    N = 3.0
    for _ in range(60):
        nxt = x * (math.log(N) + 1) / tail_tol
        if abs(nxt - N) < 0.5:
            break
        N = max(3.0, nxt)
    N = max(3, math.ceil(N) + 1)
    while theorem33_tail_bound(x, N) >= tail_tol:
        N += max(1, N // 100)
    return N


def theorem33_lhs(x: float, table: ArithmeticTable, tail_tol: float = 1e-3, midpoint: bool = False) -> float:
    """-sum_n (Lambda(n)/n) {n/x}^2 / ((n/x)^2 - [n/x]^2 - {n/x}[n/x]).

    The denominator equals {u} u, so each term is -Lambda(n) {n/x} x / n^2.
    Terms with n/x an integer are 0, or 1/2-weighted when ``midpoint`` is set
    (the value an inverse Mellin integral converges to at a jump).
    """
    _require(table, ArithmeticKind.VON_MANGOLDT)
    if x <= 0:
        raise DomainError(f"x must be positive, got {x!r}")
    N = theorem33_cutoff(x, tail_tol)
    if N > table.N:
        raise SizingError(f"tail_tol={tail_tol:g} at x={x:g} needs Lambda up to {N}, table holds {table.N}")
    lam = table.values[: N + 1]
    n = np.flatnonzero(lam).astype(np.float64)
    u = n / x
    frac = u - np.floor(u)
    if midpoint:
        frac = np.where(frac == 0.0, 0.5, frac)
    return -x * math.fsum(lam[n.astype(np.int64)] * frac / (n * n))


def theorem33_rhs(x: float, trunc: TruncationSpec, zeros: ZeroTable | None, form: str = "displayed") -> float:
    """Residue side of the exact explicit formula.

    displayed: 1 - 2g - log x + sum_rho zeta(2-rho) x^{1-rho}/(2-rho) + sum_n zeta(2+2n) x^{1-2n}/(2+2n)
    derived: -1 + 2g - log x - sum_rho zeta(2-rho) x^{rho-1}/(2-rho) - sum_n zeta(2+2n) x^{-1-2n}/(2+2n)
    """
    if x <= 0:
        raise DomainError(f"x must be positive, got {x!r}")
    if form not in ("displayed", "derived"):
        raise DomainError(f"unknown form {form!r}")
    g = euler_gamma()
    sign = 1.0 if form == "displayed" else -1.0
    parts = [sign * (1 - 2 * g), -math.log(x)]
    if form == "displayed":
        def zero_term(rho):
            return zeta(2 - rho) * x ** (1 - rho) / (2 - rho)
    else:
        def zero_term(rho):
            return -zeta(2 - rho) * x ** (rho - 1) / (2 - rho)
    if trunc.K_zeros:
        if zeros is None:
            raise DomainError("K_zeros > 0 needs a zero table")
        parts.append(paired_zero_sum(zero_term, zeros, trunc))
    for n in range(1, trunc.K_trivial + 1):
        power = 1 - 2 * n if form == "displayed" else -1 - 2 * n
        parts.append(sign * zeta(2 + 2 * n).real * x**power / (2 + 2 * n))
    return math.fsum(parts)


def theorem33_report(x, trunc, zeros, table, tail_tol=1e-3, form="displayed", midpoint=False) -> ResidualReport:
    lhs = theorem33_lhs(x, table, tail_tol, midpoint)
    rhs = theorem33_rhs(x, trunc, zeros, form)
    ident = "theorem33" if form == "displayed" else "theorem33_derived"
    return ResidualReport.build(ident, {"x": x, "tail_tol": tail_tol}, lhs, rhs, trunc, "ok")


# --- divergence of the zero sum ------------------------------------------------------


def divergence_demo(M_prime: float, T: float, y: float, zeros: ZeroTable) -> np.ndarray:
    """Partial sums y^{1/2} sum_{0<gamma<=T'} gamma^{M'-1}, one per ordinate <= T."""
    if M_prime < 1:
        raise DomainError(f"M' must be >= 1, got {M_prime!r}")
    if y <= 1:
        raise DomainError(f"y must exceed 1, got {y!r}")
    if zeros.T is not None and zeros.T < T:
        raise DomainError(f"zero table only covers T <= {zeros.T:g}")
    g = zeros.ordinates[: zeros.count(T)]
    return math.sqrt(y) * np.cumsum(g ** (M_prime - 1.0))
