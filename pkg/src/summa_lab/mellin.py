"""Forward Mellin transforms of fractional-part kernels, cell by cell.

Each unit cell [k, k+1) of an integrand built from {x} and [x] is a
polynomial in x times a power of x, so it integrates exactly.  The tail
beyond the last cell is replaced by its mean-value ("half-weight")
integral, with an Euler-Maclaurin style bound as the error certificate.

The identity reports in the second half compare both sides of three
displayed summatory identities.  They are archived as findings, never
asserted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import arith
from .arith import ArithmeticKind, ArithmeticTable
from .errors import DomainError, SizingError
from .report import ResidualReport
from .zeta import euler_gamma, zeta, zeta_log_deriv

_P2_MAX = 2.0 / (9.0 * math.sqrt(3.0))  # max |t^3/3 - t/3| on [0, 1]


class TailMethod(str, enum.Enum):
    ANALYTIC_HALFWEIGHT = "analytic_halfweight"
    GEOMETRIC_BOUND = "geometric_bound"


@dataclass(frozen=True)
class QuadratureSpec:
    K_cells: int = 10**6
    tail_method: TailMethod = TailMethod.ANALYTIC_HALFWEIGHT
    tail_tol: float = 1e-8

    def __post_init__(self):
        if self.K_cells < 1:
            raise DomainError("K_cells must be positive")
        if not self.tail_tol > 0:
            raise DomainError("tail_tol must be positive")
        object.__setattr__(self, "tail_method", TailMethod(self.tail_method))


class CertifiedValue(NamedTuple):
    value: complex
    error_bound: float


def _fsum_complex(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real), math.fsum(values.imag))


def sawtooth_mellin_forward(s) -> complex:
    """int_0^1 (1/2 - x) x^{-s-1} dx by its antiderivative, Re(s) < 0."""
    s = complex(s)
    if s.real >= 0:
        raise DomainError(f"integral diverges at 0 unless Re(s) < 0, got {s!r}")
    # [x^{-s}/(-2s) - x^{1-s}/(1-s)] from 0 to 1
    return 1 / (-2 * s) - 1 / (1 - s)


def sawtooth_mellin_formula(s) -> complex:
    s = complex(s)
    return 1 / (s * (s - 1)) + 1 / (2 * s)


def _frac_cells(s: complex, K: int) -> np.ndarray:
    """int_k^{k+1} {x} x^{-s-2} dx for k = 1..K-1.

    Written with expm1/log1p so the large-k cells (of size ~k^{-s-2}) do not
    cancel catastrophically.
    """
    k = np.arange(1, K, dtype=np.float64)
    L = np.log1p(1.0 / k)
    a, b = -s, -s - 1
    return k**a * (np.expm1(a * L) / a - np.expm1(b * L) / b)


def theorem31_integral(s, q: QuadratureSpec = QuadratureSpec()) -> CertifiedValue:
    """int_0^inf {x}^2 x^{-s-1} / (x^2 - [x]^2 - {x}[x]) dx for -1 < Re(s) < 0.

    The denominator is {x} x, leaving {x} x^{-s-2}.
    """
    s = complex(s)
    sig = s.real
    if not -1 < sig < 0:
        raise DomainError(f"need -1 < Re(s) < 0, got {s!r}")
    K = q.K_cells
    head = [-1 / s, _fsum_complex(_frac_cells(s, K))]
    M = float(K)
    if q.tail_method is TailMethod.ANALYTIC_HALFWEIGHT:
        head.append(0.5 * M ** (-s - 1) / (s + 1))
        cert = abs(s + 2) * M ** (-sig - 2) / (8 * (sig + 2))
    else:
        cert = M ** (-sig - 1) / (sig + 1)
    if cert > q.tail_tol:
        raise SizingError(f"tail certificate {cert:.3g} exceeds tail_tol={q.tail_tol:g}; raise K_cells")
    return CertifiedValue(sum(head, 0j), cert)


def theorem31_rhs(s) -> complex:
    s = complex(s)
    return -zeta(s + 1) / (s + 1)


def theorem32_integral(s, q: QuadratureSpec = QuadratureSpec()) -> CertifiedValue:
    """int_0^inf {x}^2 [x] x^{-s-1} / (x^2 - [x]^2 - {x}[x]) dx for Re(s) > 0."""
    s = complex(s)
    sig = s.real
    if sig <= 0:
        raise DomainError(f"need Re(s) > 0, got {s!r}")
    K = q.K_cells
    k = np.arange(1, K, dtype=np.float64)
    body = _fsum_complex(k * _frac_cells(s, K))
    M = float(K)
    if q.tail_method is TailMethod.ANALYTIC_HALFWEIGHT:
        # [x] = x - {x}: mean of {x} is 1/2, mean of {x}^2 is 1/3
        tail = 0.5 * M ** (-s) / s - M ** (-s - 1) / (3 * (s + 1))
        cert = abs(s + 1) * M ** (-sig - 1) / (8 * (sig + 1)) + _P2_MAX * abs(s + 2) * M ** (-sig - 2) / (sig + 2)
    else:
        tail = 0j
        cert = M ** (-sig) / sig
    if cert > q.tail_tol:
        raise SizingError(f"tail certificate {cert:.3g} exceeds tail_tol={q.tail_tol:g}; raise K_cells")
    return CertifiedValue(body + tail, cert)


def _one_minus_s_zeta(s: complex) -> complex:
    if abs(s - 1) < 1e-6:
        return -1 - euler_gamma() * (s - 1)
    return (1 - s) * zeta(s)


def theorem32_rhs(s) -> complex:
    s = complex(s)
    return (s * zeta(s + 1) + _one_minus_s_zeta(s)) / (s * (s + 1))


def bracket_kernel(s) -> complex:
    """Mellin kernel of {x}[x]: ((s-1) zeta(s) + (2-s) zeta(s-1)) / (s (s-1)), Re(s) > 1."""
    s = complex(s)
    return (-_one_minus_s_zeta(s) + (2 - s) * zeta(s - 1)) / (s * (s - 1))


def mellin_report(which: str, s, q: QuadratureSpec = QuadratureSpec()) -> ResidualReport:
    s = complex(s)
    params = {"s_re": s.real, "s_im": s.imag}
    if which == "sawtooth":
        lhs, rhs, cert = sawtooth_mellin_forward(s), sawtooth_mellin_formula(s), 0.0
    elif which == "31":
        (lhs, cert), rhs = theorem31_integral(s, q), theorem31_rhs(s)
    elif which == "32":
        (lhs, cert), rhs = theorem32_integral(s, q), theorem32_rhs(s)
    else:
        raise DomainError(f"unknown integral family {which!r}")
    params.update(lhs_im=lhs.imag, rhs_im=rhs.imag, certificate=cert, K_cells=q.K_cells)
    return ResidualReport.build(f"mellin_{which}", params, lhs.real, rhs.real)


# --- identity reports (findings) -----------------------------------------------------


def _require(table: ArithmeticTable, kind: ArithmeticKind) -> None:
    if table.kind is not kind:
        raise DomainError(f"expected a {kind.value} table, got {table.kind.value}")


def identity_report_19(x: float, mobius: ArithmeticTable, totient: ArithmeticTable) -> ResidualReport:
    """sum mu(n){x/n}[x/n]  vs  1 + int_0^x (sum phi(n)/n - 3y^2/pi^2) dy + (sum phi(n) - 3x^2/pi^2)."""
    _require(mobius, ArithmeticKind.MOBIUS)
    _require(totient, ArithmeticKind.TOTIENT)
    if x <= 1:
        raise DomainError(f"x must exceed 1, got {x!r}")
    lhs = arith.weighted_bracket_sum(mobius, 0, x)
    pi2 = math.pi**2
    rhs = math.fsum([
        1.0,
        arith.step_integral(totient, 1, x),
        -(x**3) / pi2,
        arith.dirichlet_polynomial(totient, 0, x),
        -3 * x * x / pi2,
    ])
    return ResidualReport.build("identity_19", {"x": x}, lhs, rhs, status="finding")


def identity_report_112(x: float, mobius: ArithmeticTable, totient: ArithmeticTable) -> ResidualReport:
    """sum mu(n)({u}[u] - [u] - 1/2 + ({u}^2 + [u])/2), u = x/n  vs  sum phi(n) - 3x^2/pi^2."""
    _require(mobius, ArithmeticKind.MOBIUS)
    _require(totient, ArithmeticKind.TOTIENT)
    if x <= 1:
        raise DomainError(f"x must exceed 1, got {x!r}")
    m = mobius.check_range(x)
    n = np.arange(1, m + 1, dtype=np.float64)
    u = x / n
    fl = np.floor(u)
    fr = u - fl
    lhs = math.fsum(mobius.values[1 : m + 1] * (fr * fl - fl - 0.5 + 0.5 * (fr * fr + fl)))
    rhs = math.fsum([arith.dirichlet_polynomial(totient, 0, x), -3 * x * x / math.pi**2])
    return ResidualReport.build("identity_112", {"x": x}, lhs, rhs, status="finding")


def attached_series(kind: ArithmeticKind, w: float) -> float:
    """L(2+w) = sum a(n) n^{-2-w} for the supported kinds."""
    s = 2 + w
    if kind is ArithmeticKind.VON_MANGOLDT:
        return -zeta_log_deriv(s).real
    if kind is ArithmeticKind.MOBIUS:
        return 1 / zeta(s).real
    if kind is ArithmeticKind.TOTIENT:
        return (zeta(s - 1) / zeta(s)).real
    raise DomainError(f"no attached Dirichlet series for kind {kind.value!r}")


def identity_chain_16(x: float, w: float, table: ArithmeticTable) -> ResidualReport:
    """Weighted bracket sum vs the closed final line of the simplification chain.

    rhs = sum G_w + int_0^x (sum_{n<=y} G_{w+1}(n) - y^2 L(2+w)/2) dy
          + (sum n G_{w+1}(n) - x^2 L(2+w)/2)
    """
    if x <= 1:
        raise DomainError(f"x must exceed 1, got {x!r}")
    if w < 0:
        raise DomainError(f"w must be >= 0, got {w!r}")
    L = attached_series(table.kind, w)
    m = table.check_range(x)
    lhs = arith.weighted_bracket_sum(table, w, x)
    Gw = arith.divisor_sum(table, w, m)[1:]
    Gw1 = arith.divisor_sum(table, w + 1, m)[1:]
    n = np.arange(1, m + 1, dtype=np.float64)
    rhs = math.fsum([
        math.fsum(Gw),
        math.fsum(Gw1 * (x - n)),
        -(x**3) * L / 6,
        math.fsum(n * Gw1),
        -x * x * L / 2,
    ])
    return ResidualReport.build(
        "identity_16", {"x": x, "w": w}, lhs, rhs, status="finding"
    )
