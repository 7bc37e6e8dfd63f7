"""Dirichlet polynomials as solutions of a Volterra equation of the second kind.

With kernel K(y, t) = 1/y on 0 < t <= y,

    D_w(y) = F_w(y) + (1/y) int_0^y D_w(t) dt,
    F_w(y) = sum_{n<=y} a(n) {n/y} / n^w.

Iterating the kernel on F_w gives the Neumann series.  Since F_w(t) = S_m/t on
each cell (m, m+1), with S_m = sum_{n<=m} a(n) n^{1-w}, the k-th iterate has
the closed form (1/y) sum_{n<=y} a(n) n^{1-w} log^k(y/n)/k!.  A nested
trapezoid rule over the same cells serves as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import arith
from .arith import ArithmeticKind, ArithmeticTable
from .errors import DomainError, SizingError
from .report import ResidualReport
from .zeta import zeta

MAX_QUADRATURE_K = 4
MIN_MESH = 1000
INTEGER_TOL = 1e-9


@dataclass(frozen=True)
class VolterraInstance:
    table: ArithmeticTable
    w: float = 1.0
    exploratory: bool = False

    def __post_init__(self):
        if self.w < 1 and not self.exploratory:
            raise DomainError(f"w >= 1 required (got {self.w!r}); pass exploratory=True to override")

    @property
    def kind(self) -> ArithmeticKind:
        return self.table.kind

    def check_y(self, y: float) -> int:
        if not y > 0:
            raise DomainError(f"y must be positive, got {y!r}")
        return self.table.check_range(y)


class QuadratureResult(NamedTuple):
    value: float
    error_estimate: float


def is_integer_point(y: float) -> bool:
    return abs(y - round(y)) < INTEGER_TOL


def _wn(inst: VolterraInstance, m: int) -> np.ndarray:
    """a(n) n^{1-w} for n = 1..m."""
    return arith._weights(inst.table, inst.w - 1.0, m)


def forcing_F(inst: VolterraInstance, y: float) -> float:
    """F_w(y); the n = y term has {1} = 0 and drops out."""
    m = inst.check_y(y)
    if m == 0:
        return 0.0
    n = np.arange(1, m + 1, dtype=np.float64)
    u = n / y
    frac = u - np.floor(u)
    return math.fsum(arith._weights(inst.table, inst.w, m) * frac)


def volterra_residual(inst: VolterraInstance, y: float) -> float:
    """D_w(y) - F_w(y) - (1/y) int_0^y D_w; zero off the integers."""
    inst.check_y(y)
    D = arith.dirichlet_polynomial(inst.table, inst.w, y)
    integral = arith.step_integral(inst.table, inst.w, y)
    return math.fsum([D, -forcing_F(inst, y), -integral / y])


def volterra_report(inst: VolterraInstance, y: float) -> ResidualReport:
    D = arith.dirichlet_polynomial(inst.table, inst.w, y)
    rhs = math.fsum([forcing_F(inst, y), arith.step_integral(inst.table, inst.w, y) / y])
    # at integer y the identity is off by a(y)/y^w, so the row is a warning
    status = "warning" if is_integer_point(y) else "ok"
    if inst.w < 1:
        status = "provisional"
    return ResidualReport.build("volterra", {"y": y, "w": inst.w}, D, rhs, status=status)


def neumann_term_closed(inst: VolterraInstance, y: float, k: int) -> float:
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    if k == 0:
        return forcing_F(inst, y)
    m = inst.check_y(y)
    if m == 0:
        return 0.0
    n = np.arange(1, m + 1, dtype=np.float64)
    L = np.log(y / n)
    return math.fsum(_wn(inst, m) * L**k) / (math.factorial(k) * y)


def neumann_partial_sums(inst: VolterraInstance, y: float, K: int) -> np.ndarray:
    """Prefix sums sum_{k<=j} of the Neumann terms, j = 0..K."""
    terms = [neumann_term_closed(inst, y, k) for k in range(K + 1)]
    return np.array([math.fsum(terms[: j + 1]) for j in range(K + 1)])


def neumann_tail_bound(inst: VolterraInstance, y: float, K: int) -> float:
    """Bound on |D_w(y) - sum_{k<=K} term_k| from the exponential-series remainder.

    Per n the omitted terms sum to (1/y) a(n) n^{1-w} R_K(L), L = log(y/n), and
    R_K(L) <= e^L L^{K+1}/(K+1)! with e^L = y/n.
    """
    m = inst.check_y(y)
    if m == 0:
        return 0.0
    n = np.arange(1, m + 1, dtype=np.float64)
    L = np.log(y / n)
    a = np.abs(arith._weights(inst.table, inst.w, m))
    return math.fsum(a * L ** (K + 1)) / math.factorial(K + 1)


def neumann_tail_bound_literal(inst: VolterraInstance, y: float, K: int) -> float:
    """(1/y) sum |a(n)| n^{1-w} log^{K+1}(y/n)/(K+1)!: the first omitted term only.

    Kept for comparison; it is not an upper bound (it omits the e^L factor).
    """
    m = inst.check_y(y)
    if m == 0:
        return 0.0
    n = np.arange(1, m + 1, dtype=np.float64)
    L = np.log(y / n)
    return math.fsum(np.abs(_wn(inst, m)) * L ** (K + 1)) / (math.factorial(K + 1) * y)


def _cell_grid(inst: VolterraInstance, y: float, mesh: int):
    """Nodes on [1, y] per unit cell with F_w = S_j/t on cell j.

    Interior integers appear twice: as the right end of one cell (left limit
    of F_w) and the left end of the next (right limit).
    """
    m = inst.check_y(y)
    wn = _wn(inst, m)
    S = np.concatenate([[0.0], np.cumsum(wn)])  # S[j] = sum_{n<=j}
    per_cell = max(2, math.ceil(mesh / max(y - 1.0, 1.0)))
    ts, Fs = [], []
    for j in range(1, m + 1):
        hi = min(j + 1.0, y)
        if hi <= j:
            break
        t = np.linspace(j, hi, max(2, math.ceil(per_cell * (hi - j))) + 1)
        ts.append(t)
        Fs.append(S[j] / t)
    return np.concatenate(ts), np.concatenate(Fs)


def _iterate_trapezoid(inst: VolterraInstance, y: float, k: int, mesh: int) -> float:
    if y <= 1:
        return 0.0
    t, g = _cell_grid(inst, y, mesh)
    for _ in range(k):
        inc = 0.5 * (g[1:] + g[:-1]) * np.diff(t)
        g = np.concatenate([[0.0], np.cumsum(inc)]) / t  # iterates vanish on (0, 1)
    return float(g[-1])


def neumann_term_quadrature(inst: VolterraInstance, y: float, k: int, mesh: int = 10_000) -> QuadratureResult:
    """k-th Neumann term by nested trapezoid rule on a cell-aligned grid.

    ``mesh`` is the number of subintervals spread over [1, y].  The error
    estimate is Richardson's, from a second pass at twice the mesh.
    """
    if k > MAX_QUADRATURE_K:
        raise DomainError(f"quadrature oracle supports k <= {MAX_QUADRATURE_K}, got {k}")
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    if mesh < MIN_MESH:
        raise SizingError(f"mesh must be >= {MIN_MESH}, got {mesh}")
    inst.check_y(y)
    if k == 0:
        return QuadratureResult(forcing_F(inst, y), 0.0)
    coarse = _iterate_trapezoid(inst, y, k, mesh)
    fine = _iterate_trapezoid(inst, y, k, 2 * mesh)
    return QuadratureResult(coarse, abs(coarse - fine) * 4.0 / 3.0)


def apply_kernel(g: Callable[[np.ndarray], np.ndarray], y: float, mesh: int = MIN_MESH) -> float:
    """(1/y) int_0^y g(t) dt by the trapezoid rule."""
    if not y > 0:
        raise DomainError(f"y must be positive, got {y!r}")
    t = np.linspace(0.0, y, mesh + 1)
    v = np.asarray(g(t), dtype=np.float64) * np.ones_like(t)
    h = y / mesh
    return math.fsum(np.concatenate([[0.5 * v[0]], v[1:-1], [0.5 * v[-1]]])) * h / y


def kernel_fixed_point(y: float, mesh: int = MIN_MESH) -> float:
    """The kernel applied to the constant 1; equals 1."""
    return apply_kernel(lambda t: np.ones_like(t), y, mesh)


def bvp_integrated_check(inst: VolterraInstance, x: float) -> tuple[ResidualReport, ResidualReport]:
    """x D_w - x F_w - int_0^x D_w, and the same with +x F_w as literally displayed."""
    if inst.kind is not ArithmeticKind.MOBIUS:
        raise DomainError("the boundary-value form is stated for the Mobius table")
    if x <= 1:
        raise DomainError(f"x must exceed 1, got {x!r}")
    xD = x * arith.dirichlet_polynomial(inst.table, inst.w, x)
    xF = x * forcing_F(inst, x)
    integral = arith.step_integral(inst.table, inst.w, x)
    status = "warning" if is_integer_point(x) else "ok"
    params = {"x": x, "w": inst.w}
    integrated = ResidualReport.build("bvp_integrated", params, xD - xF, integral, status=status)
    literal = ResidualReport.build("bvp_literal", params, xD + xF, integral, status="finding")
    return integrated, literal


class ExponentFit(NamedTuple):
    exponent: float
    predicted: float
    blocks: int


def rh_exponent_fit(table: ArithmeticTable, w: float, x_min: float = 16.0) -> ExponentFit:
    """Growth exponent of the tail |D_w(x) - 1/zeta(w)| over dyadic blocks.

    The maximum over each block [2^j, 2^{j+1}) is fitted against log x.
    Under RH the exponent is at most 1/2 - w (+ epsilon).  Report only.
    """
    if table.kind is not ArithmeticKind.MOBIUS:
        raise DomainError("exponent fit is defined for the Mobius table")
    if w < 1:
        raise DomainError(f"w >= 1 required, got {w!r}")
    limit = 0.0 if w == 1 else 1.0 / zeta(w).real
    D = np.cumsum(arith._weights(table, w, table.N))
    dev = np.abs(D - limit)
    j0 = max(1, math.ceil(math.log2(x_min)))
    j1 = int(math.log2(table.N + 1))
    if j1 - j0 < 2:
        raise SizingError(f"table N={table.N} too small for a dyadic fit from {x_min}")
    xs, ys = [], []
    for j in range(j0, j1):
        block = dev[2**j - 1 : 2 ** (j + 1) - 1]
        xs.append((j + 0.5) * math.log(2))
        ys.append(math.log(float(block.max())))
    slope = float(np.polyfit(xs, ys, 1)[0])
    return ExponentFit(slope, 0.5 - w, len(xs))


def rh_exponent_report(table: ArithmeticTable, w: float) -> ResidualReport:
    fit = rh_exponent_fit(table, w)
    return ResidualReport.build(
        "rh_exponent", {"w": w, "N": table.N, "blocks": fit.blocks}, fit.exponent, fit.predicted, status="finding"
    )
