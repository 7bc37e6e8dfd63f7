"""Sieved arithmetic functions and the step-function summatory evaluators.

Every left-hand side in the harness is built from these primitives:

* ``sieve``                 tables of Lambda, mu, -mu*log, phi and the unit function
* ``divisor_sum``           G_w(n) = sum_{d|n} a(d) d^{-w}
* ``dirichlet_polynomial``  D_w(y) = sum_{n<=y} a(n) n^{-w}
* ``weighted_bracket_sum``  sum_{n<=y} a(n) n^{-w} {y/n} [y/n]
* ``step_integral``         int_0^y D_w(t) dt, in closed form

Sums are accumulated with ``math.fsum`` so exact identities stay testable
at the 1e-12 level regardless of the number of terms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, SizingError

MAX_SIEVE = 10**8


class ArithmeticKind(str, enum.Enum):
    VON_MANGOLDT = "vonMangoldt"
    MOBIUS = "mobius"
    MOBIUS_LOG_NEG = "mobiusLogNeg"
    TOTIENT = "totient"
    UNIT = "unit"

    @classmethod
    def parse(cls, name: str | ArithmeticKind) -> ArithmeticKind:
        if isinstance(name, cls):
            return name
        key = str(name).replace("-", "").replace("_", "").lower()
        for kind in cls:
            if kind.value.lower() == key or kind.name.replace("_", "").lower() == key:
                return kind
        aliases = {"lambda": cls.VON_MANGOLDT, "mu": cls.MOBIUS, "phi": cls.TOTIENT}
        if key in aliases:
            return aliases[key]
        raise DomainError(f"unknown arithmetic kind {name!r}")


@dataclass(frozen=True, eq=False)
class ArithmeticTable:
    """Values a(1..N) of one arithmetic function; ``values[0]`` is a zero pad."""

    kind: ArithmeticKind
    N: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.N + 1,):
            raise SizingError(f"values must have length N+1={self.N + 1}")
        self.values.setflags(write=False)

    def __getitem__(self, n):
        return self.values[n]

    def check_range(self, y: float) -> int:
        """Return floor(y), raising if the table does not reach it."""
        m = math.floor(y) if y >= 1 else 0
        if m > self.N:
            raise SizingError(f"y={y!r} needs a(n) up to {m}, table holds N={self.N}")
        return m


class FracFloor(NamedTuple):
    frac: float
    floor: int


def frac_floor(x: float) -> FracFloor:
    if not math.isfinite(x) or x < 0:
        raise DomainError(f"frac_floor needs a finite x >= 0, got {x!r}")
    fl = math.floor(x)
    return FracFloor(x - fl, fl)


def _primes_upto(n: int) -> np.ndarray:
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime)


def _strip_small_primes(N: int, small: np.ndarray):
    """Divide every n <= N by its prime factors up to sqrt(N).

    Returns (rem, omega_parity_sign, squarefree) where ``rem`` is the cofactor
    left after removing small primes; it is 1 or a single prime > sqrt(N).
    """
    rem = np.arange(N + 1, dtype=np.int64)
    sign = np.ones(N + 1, dtype=np.int8)
    squarefree = np.ones(N + 1, dtype=bool)
    for p in small:
        p = int(p)
        sign[p::p] *= -1
        if p * p <= N:
            squarefree[p * p :: p * p] = False
        q = p
        while q <= N:
            rem[q::q] //= p
            q *= p
    return rem, sign, squarefree


def sieve(kind: ArithmeticKind | str, N: int) -> ArithmeticTable:
    """Tabulate a(n) for 1 <= n <= N.

    Only primes up to sqrt(N) are sieved explicitly; after dividing them out
    each n has at most one remaining (large) prime factor, which is handled
    in a single vectorized pass.
    """
    kind = ArithmeticKind.parse(kind)
    if not isinstance(N, (int, np.integer)) or isinstance(N, bool):
        raise SizingError(f"N must be an integer, got {N!r}")
    N = int(N)
    if N < 1:
        raise SizingError(f"N must be >= 1, got {N}")
    if N > MAX_SIEVE:
        raise SizingError(f"N={N} exceeds the supported sieve range {MAX_SIEVE}")

    if kind is ArithmeticKind.UNIT:
        values = np.ones(N + 1)
        values[0] = 0.0
        return ArithmeticTable(kind, N, values)

    if kind is ArithmeticKind.VON_MANGOLDT:
        primes = _primes_upto(N)
        values = np.zeros(N + 1)
        values[primes] = np.log(primes)
        for p in primes[primes <= math.isqrt(N)]:
            p = int(p)
            q = p * p
            while q <= N:
                values[q] = math.log(p)
                q *= p
        return ArithmeticTable(kind, N, values)

    small = _primes_upto(math.isqrt(N))
    rem, sign, squarefree = _strip_small_primes(N, small)
    big = rem > 1

    if kind in (ArithmeticKind.MOBIUS, ArithmeticKind.MOBIUS_LOG_NEG):
        mu = sign.astype(np.int64)
        mu[big] *= -1
        mu[~squarefree] = 0
        mu[0] = 0
        if kind is ArithmeticKind.MOBIUS:
            return ArithmeticTable(kind, N, mu.astype(np.float64))
        values = np.zeros(N + 1)
        n = np.arange(2, N + 1)
        values[2:] = -mu[2:] * np.log(n)
        return ArithmeticTable(kind, N, values)

    # totient
    phi = np.arange(N + 1, dtype=np.int64)
    for p in small:
        p = int(p)
        phi[p::p] -= phi[p::p] // p
    q = rem[big]
    phi[big] = phi[big] // q * (q - 1)
    return ArithmeticTable(kind, N, phi.astype(np.float64))


def _weights(table: ArithmeticTable, w: float, m: int) -> np.ndarray:
    """a(n) n^{-w} for n = 1..m."""
    a = table.values[1 : m + 1]
    if w == 0:
        return np.array(a, dtype=np.float64)
    n = np.arange(1, m + 1, dtype=np.float64)
    return a * n ** (-float(w))


def divisor_sum(table: ArithmeticTable, w: float, N: int | None = None) -> np.ndarray:
    """G_w(n) = sum_{d|n} a(d) d^{-w} for n = 0..N (entry 0 is unused).

    Every pair (d, m) with d*m <= N has d <= sqrt(N) or m < sqrt(N), so the
    double loop collapses to O(sqrt N) vectorized slice updates.
    """
    N = table.N if N is None else int(N)
    if N < 1 or N > table.N:
        raise SizingError(f"divisor_sum needs 1 <= N <= {table.N}, got {N}")
    v = np.zeros(N + 1)
    v[1:] = _weights(table, w, N)
    out = np.zeros(N + 1)
    S = math.isqrt(N)
    for d in range(1, S + 1):
        if v[d] != 0.0:
            out[d::d] += v[d]
    for m in range(1, N // (S + 1) + 1):
        hi = N // m
        if hi <= S:
            break
        out[m * (S + 1) : m * hi + 1 : m] += v[S + 1 : hi + 1]
    return out


def dirichlet_polynomial(table: ArithmeticTable, w: float, y: float) -> float:
    m = table.check_range(y)
    if m == 0:
        return 0.0
    return math.fsum(_weights(table, w, m))


def _bracket_terms(table: ArithmeticTable, w: float, y: float):
    m = table.check_range(y)
    n = np.arange(1, m + 1, dtype=np.float64)
    u = y / n
    fl = np.floor(u)
    return _weights(table, w, m), u, fl


def weighted_bracket_sum(table: ArithmeticTable, w: float, y: float) -> float:
    """sum_{n<=y} a(n) n^{-w} {y/n} [y/n]."""
    if y <= 0:
        raise DomainError(f"y must be positive, got {y!r}")
    wts, u, fl = _bracket_terms(table, w, y)
    return math.fsum(wts * (u - fl) * fl)


def step_integral(table: ArithmeticTable, w: float, y: float) -> float:
    """Integral of D_w over [0, y]; D_w is a step function so this is exact."""
    m = table.check_range(y)
    if m == 0:
        return 0.0
    n = np.arange(1, m + 1, dtype=np.float64)
    return math.fsum(_weights(table, w, m) * (y - n))
