"""Riemann zeta function and its derivative in double precision.

Evaluation uses Euler-Maclaurin summation with M = max(20, ceil(1.3|t|))
direct terms and 12 Bernoulli corrections; arguments with Re(s) < -0.5 are
reflected through the functional equation.  The complex log-Gamma and
digamma needed for the reflection factor (and for the Riemann-Siegel theta
in :mod:`summa_lab.zeros`) come from a shifted Stirling series.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import DomainError, NearZeroError, PoleError

IM_BAND = 1.0e3
RE_FLOOR = -50.0
POLE_GUARD = 1.0e-6
N_BERNOULLI = 12
LOG_2PI = math.log(2.0 * math.pi)


def _bernoulli_even(count: int) -> list[Fraction]:
    """B_2, B_4, ..., B_{2*count} from the standard recurrence."""
    B = [Fraction(1)]
    for m in range(1, 2 * count + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * B[k]
        B.append(-acc / (m + 1))
    return [B[2 * j] for j in range(1, count + 1)]


_B2J = _bernoulli_even(N_BERNOULLI)
# B_{2j} / (2j)!
_EM_COEF = [float(b / math.factorial(2 * j)) for j, b in enumerate(_B2J, start=1)]
# Stirling: B_{2k} / (2k (2k-1))
_STIRLING = [float(b / (2 * k * (2 * k - 1))) for k, b in enumerate(_B2J[:10], start=1)]
# digamma asymptotic: B_{2k} / (2k)
_DIGAMMA = [float(b / (2 * k)) for k, b in enumerate(_B2J[:10], start=1)]

_SHIFT_TO = 15.0


def _as_complex(s) -> complex:
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {s!r}")
    return z


def loggamma(z) -> complex:
    """Principal branch of log Gamma(z) for Re(z) > 0.

    The argument is shifted up by the recurrence until Re(z) >= 15, where the
    Stirling series with ten Bernoulli terms is accurate to rounding.
    """
    z = _as_complex(z)
    if z.real <= 0:
        raise DomainError(f"loggamma implemented for Re(z) > 0, got {z!r}")
    shift = 0j
    while z.real < _SHIFT_TO:
        shift += cmath.log(z)
        z += 1
    inv = 1.0 / z
    inv2 = inv * inv
    series = 0j
    p = inv
    for c in _STIRLING:
        series += c * p
        p *= inv2
    return (z - 0.5) * cmath.log(z) - z + 0.5 * LOG_2PI + series - shift


def digamma(z) -> complex:
    """psi(z) = Gamma'(z)/Gamma(z) for Re(z) > 0."""
    z = _as_complex(z)
    if z.real <= 0:
        raise DomainError(f"digamma implemented for Re(z) > 0, got {z!r}")
    shift = 0j
    while z.real < _SHIFT_TO:
        shift += 1.0 / z
        z += 1
    inv2 = 1.0 / (z * z)
    series = 0j
    p = inv2
    for c in _DIGAMMA:
        series += c * p
        p *= inv2
    return cmath.log(z) - 0.5 / z - series - shift


def _log_sin(z: complex) -> complex:
    """log sin(z) stable for large |Im z| (some branch; only exp() is used)."""
    if z.imag < 0:
        return _log_sin(z.conjugate()).conjugate()
    # sin z = (e^{-iz}/(-2i)) (1 - e^{2iz}); |e^{2iz}| = e^{-2 Im z} <= 1
    return -1j * z - cmath.log(-2j) + cmath.log(1 - cmath.exp(2j * z))


def _sincos_half_pi(s: complex) -> tuple[complex, complex]:
    """sin(pi s/2), cos(pi s/2) with exact quadrant reduction (exact zeros at integers)."""
    m = round(s.real)
    z = math.pi * complex(s.real - m, s.imag) / 2
    sn, cs = cmath.sin(z), cmath.cos(z)
    return ((sn, cs), (cs, -sn), (-sn, -cs), (-cs, sn))[m % 4]


def chi(s) -> complex:
    """Functional-equation factor: zeta(s) = chi(s) zeta(1 - s)."""
    s = _as_complex(s)
    if s.real > 0.5:
        # chi(s) chi(1-s) = 1 keeps Gamma's argument in the right half-plane
        inv = chi(1 - s)
        if inv == 0:
            raise PoleError(f"chi has a pole at {s!r}")
        return 1 / inv
    if abs(s.imag) < 30:
        return 2**s * math.pi ** (s - 1) * _sincos_half_pi(s)[0] * cmath.exp(loggamma(1 - s))
    return cmath.exp(s * math.log(2) + (s - 1) * math.log(math.pi) + _log_sin(math.pi * s / 2) + loggamma(1 - s))


def _chi_and_derivative(s: complex) -> tuple[complex, complex]:
    lg = loggamma(1 - s)
    psi = digamma(1 - s)
    if abs(s.imag) < 30:
        pre = 2**s * math.pi ** (s - 1) * cmath.exp(lg)
        sn, cs = _sincos_half_pi(s)
        x = pre * sn
        dx = pre * (LOG_2PI * sn + 0.5 * math.pi * cs - sn * psi)
        return x, dx
    x = chi(s)
    cot = cmath.cos(math.pi * s / 2) / cmath.sin(math.pi * s / 2) if abs(s.imag) < 300 else (-1j if s.imag > 0 else 1j)
    return x, x * (LOG_2PI + 0.5 * math.pi * cot - psi)


def _check_domain(s: complex) -> None:
    if abs(s - 1) < POLE_GUARD:
        raise PoleError(f"zeta has a pole at s=1 (|s-1| < {POLE_GUARD:g}), got {s!r}")
    if abs(s.imag) > IM_BAND:
        raise DomainError(f"|Im s| <= {IM_BAND:g} supported, got {s!r}")
    if s.real < RE_FLOOR:
        raise DomainError(f"Re s >= {RE_FLOOR:g} supported, got {s!r}")


def _term_count(s: complex) -> int:
    return max(20, math.ceil(1.3 * abs(s.imag)))


def em_batch(s: np.ndarray, derivative: bool = False, M: int | None = None):
    """Euler-Maclaurin zeta (and optionally zeta') for an array of s.

    No domain checks and no reflection; callers keep Re(s) >= -0.5.  One
    term count M (the maximum over the batch unless given) is shared.
    """
    s = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    if M is None:
        M = max(20, math.ceil(1.3 * float(np.max(np.abs(s.imag)))))
    logn = np.log(np.arange(1, M, dtype=np.float64))
    powers = np.exp(-np.outer(s, logn))
    head = powers.sum(axis=1)
    logM = math.log(M)
    Ms = np.exp(-s * logM)
    M1s = M * Ms
    z = head + M1s / (s - 1) + 0.5 * Ms
    if derivative:
        dz = -(powers * logn).sum(axis=1)
        dz += -logM * M1s / (s - 1) - M1s / (s - 1) ** 2 - 0.5 * logM * Ms
    # Bernoulli corrections: c_j (s)_{2j-1} M^{-s-2j+1}
    poch = s.copy()
    dpoch = np.ones_like(s)
    Mpow = Ms / M
    for j, c in enumerate(_EM_COEF, start=1):
        z += c * poch * Mpow
        if derivative:
            dz += c * Mpow * (dpoch - logM * poch)
        for i in (2 * j - 1, 2 * j):
            dpoch = dpoch * (s + i) + poch
            poch = poch * (s + i)
        Mpow = Mpow / (M * M)
    return (z, dz) if derivative else z


def _zeta_pair(s: complex, derivative: bool):
    if s.real >= -0.5:
        out = em_batch(np.array([s]), derivative=derivative, M=_term_count(s))
        if derivative:
            return complex(out[0][0]), complex(out[1][0])
        return complex(out[0]), None
    t = 1 - s
    zr, dzr = em_batch(np.array([t]), derivative=True, M=_term_count(t))
    zr, dzr = complex(zr[0]), complex(dzr[0])
    if not derivative:
        return chi(s) * zr, None
    x, dx = _chi_and_derivative(s)
    return x * zr, dx * zr - x * dzr


def _finite(z: complex, what: str, s: complex) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{what}({s!r}) overflowed double precision")
    return z


def zeta(s) -> complex:
    """Riemann zeta at complex s (|Im s| <= 1e3, Re s >= -50, s != 1)."""
    s = _as_complex(s)
    _check_domain(s)
    return _finite(_zeta_pair(s, False)[0], "zeta", s)


def zeta_prime(s) -> complex:
    s = _as_complex(s)
    _check_domain(s)
    return _finite(_zeta_pair(s, True)[1], "zeta_prime", s)


def zeta_and_prime(s) -> tuple[complex, complex]:
    s = _as_complex(s)
    _check_domain(s)
    z, dz = _zeta_pair(s, True)
    return _finite(z, "zeta", s), _finite(dz, "zeta_prime", s)


def zeta_log_deriv(s) -> complex:
    """zeta'(s)/zeta(s); refuses points where |zeta(s)| < 1e-13."""
    z, dz = zeta_and_prime(s)
    if abs(z) < 1e-13:
        raise NearZeroError(f"|zeta({s!r})| = {abs(z):.3g} is numerically zero")
    return dz / z


def euler_gamma() -> float:
    """Euler-Mascheroni constant from H_N - log N with Bernoulli corrections."""
    N = 10
    terms = [1.0 / n for n in range(1, N + 1)]
    terms += [-math.log(N), -0.5 / N]
    for k, b in enumerate(_B2J[:8], start=1):
        terms.append(float(b / (2 * k)) / N ** (2 * k))
    return math.fsum(terms)
