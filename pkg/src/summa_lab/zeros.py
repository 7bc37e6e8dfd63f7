"""Critical-line zeros of zeta: Hardy Z scan, bisection, counting, caching."""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CacheFormatError, DomainError, EmptyTableError, ZeroCountMismatch
from .zeta import IM_BAND, em_batch, loggamma, zeta

HEADER_PREFIX = "# summa-lab zeros v1 precision="
MIN_PRECISION = 1e-12
CACHE_ENV = "SUMMA_LAB_CACHE"


def riemann_siegel_theta(t: float) -> float:
    """theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log(pi), continuous branch."""
    return loggamma(complex(0.25, 0.5 * t)).imag - 0.5 * t * math.log(math.pi)


def hardy_z(t) -> np.ndarray:
    """Z(t) = exp(i theta(t)) zeta(1/2 + i t) for an array of t > 0."""
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = np.empty_like(t)
    order = np.argsort(t)
    for chunk in np.array_split(order, max(1, len(t) // 256)):
        if len(chunk) == 0:
            continue
        tc = t[chunk]
        z = em_batch(0.5 + 1j * tc)
        theta = np.array([riemann_siegel_theta(x) for x in tc])
        out[chunk] = (np.exp(1j * theta) * z).real
    return out


def zero_count_asymptotic(T: float) -> float:
    """Leading-order zero count T log(T) / (2 pi)."""
    if T <= 1:
        raise DomainError(f"T must exceed 1, got {T!r}")
    return T * math.log(T) / (2 * math.pi)


def _arg_zeta_on_line(T: float) -> float:
    """arg zeta(1/2 + iT) by continuous variation from 3 + iT leftwards."""
    sigma = 3.0
    prev = zeta(complex(sigma, T))
    arg = cmath.phase(prev)
    step = 0.02
    while sigma > 0.5:
        nxt_sigma = max(0.5, sigma - step)
        cur = zeta(complex(nxt_sigma, T))
        d = cmath.phase(cur / prev)
        if abs(d) > math.pi / 4 and step > 1e-6:
            step /= 2
            continue
        arg += d
        sigma, prev = nxt_sigma, cur
        step = min(0.02, step * 2)
    return arg


def zero_count_exact(T: float) -> int:
    """N(T) = theta(T)/pi + 1 + S(T) with S(T) from the argument principle."""
    value = riemann_siegel_theta(T) / math.pi + 1 + _arg_zeta_on_line(T) / math.pi
    return round(value)


@dataclass(frozen=True, eq=False)
class ZeroTable:
    """Ascending positive ordinates of critical-line zeros."""

    ordinates: np.ndarray
    precision: float
    source: str = "computed"
    T: float | None = field(default=None)

    def __post_init__(self):
        g = np.asarray(self.ordinates, dtype=np.float64)
        object.__setattr__(self, "ordinates", g)
        g.setflags(write=False)
        if self.source not in ("computed", "loaded"):
            raise DomainError(f"unknown source {self.source!r}")
        if not self.precision > 0:
            raise DomainError("precision must be positive")
        if len(g):
            if not (14.0 < g[0] < 14.3):
                raise CacheFormatError(f"first ordinate {g[0]!r} is not in (14.0, 14.3)")
            if np.any(np.diff(g) <= 0):
                raise CacheFormatError("ordinates must be strictly ascending")

    def __len__(self) -> int:
        return len(self.ordinates)

    def count(self, T: float) -> int:
        return int(np.searchsorted(self.ordinates, T, side="right"))

    def rhos(self, K: int) -> np.ndarray:
        """The first K zeros 1/2 + i gamma_k (upper half-plane only)."""
        if K > len(self.ordinates):
            raise DomainError(f"K_zeros={K} exceeds the {len(self.ordinates)} available zeros")
        return 0.5 + 1j * self.ordinates[:K]

    def covers(self, T: float) -> bool:
        return self.T is not None and self.T >= T


def _bisect(lo: np.ndarray, hi: np.ndarray, zlo: np.ndarray, precision: float) -> np.ndarray:
    """Vectorized bisection on sign-change brackets, finished by a secant step."""
    zhi = hardy_z(hi)
    while np.max(hi - lo) > precision:
        mid = 0.5 * (lo + hi)
        zm = hardy_z(mid)
        left = np.sign(zm) == np.sign(zlo)
        lo = np.where(left, mid, lo)
        zlo = np.where(left, zm, zlo)
        hi = np.where(left, hi, mid)
        zhi = np.where(left, zhi, zm)
    denom = zhi - zlo
    frac = np.where(denom != 0, -zlo / np.where(denom != 0, denom, 1.0), 0.5)
    return lo + np.clip(frac, 0.0, 1.0) * (hi - lo)


def _scan(T: float, step: float, precision: float) -> np.ndarray:
    n = math.ceil((T - 1.0) / step)
    grid = np.linspace(1.0, T, n + 1)
    z = hardy_z(grid)
    idx = np.flatnonzero(np.sign(z[:-1]) * np.sign(z[1:]) < 0)
    if len(idx) == 0:
        return np.empty(0)
    return _bisect(grid[idx], grid[idx + 1], z[idx], precision)


def find_zeros(T: float, precision: float = 1e-9, step: float = 0.05, max_refine: int = 4) -> ZeroTable:
    """Locate every critical-line zero ordinate in (0, T].

    Sign changes of Z on a uniform grid are refined by bisection.  The count
    is checked against the argument-principle value of N(T); on mismatch the
    grid is halved up to ``max_refine`` times before giving up.
    """
    if not 14 < T <= IM_BAND:
        raise DomainError(f"T must lie in (14, {IM_BAND:g}], got {T!r}")
    if precision < MIN_PRECISION:
        raise DomainError(f"precision below {MIN_PRECISION:g} is unsupported")
    expected = zero_count_exact(T)
    for _ in range(max_refine + 1):
        gammas = _scan(T, step, precision)
        if len(gammas) == expected:
            return ZeroTable(gammas, precision, "computed", T)
        step /= 2
    raise ZeroCountMismatch(
        f"scan found {len(gammas)} zeros up to T={T} but the argument principle gives {expected}"
    )


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, Path.home() / ".cache" / "summa-lab"))


def save_zeros(path, table: ZeroTable) -> None:
    if len(table) == 0:
        raise EmptyTableError("refusing to write an empty zero table")
    lines = [f"{HEADER_PREFIX}{table.precision!r}"]
    lines += [f"{g:.12f}" for g in table.ordinates]
    Path(path).write_text("\n".join(lines) + "\n")


def load_zeros(path) -> ZeroTable:
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise EmptyTableError("zero cache is empty", line=1)
    header = lines[0].strip()
    if not header.startswith(HEADER_PREFIX):
        raise CacheFormatError(f"bad header {header!r}", line=1)
    try:
        precision = float(header[len(HEADER_PREFIX) :])
    except ValueError:
        raise CacheFormatError(f"bad precision in header {header!r}", line=1) from None
    values = []
    for lineno, raw in enumerate(lines[1:], start=2):
        s = raw.strip()
        if not s:
            continue
        try:
            v = float(s)
        except ValueError:
            raise CacheFormatError(f"not a number: {s!r}", line=lineno) from None
        if not math.isfinite(v) or v <= 0:
            raise CacheFormatError(f"ordinate must be positive and finite: {s!r}", line=lineno)
        if values and v <= values[-1]:
            raise CacheFormatError("ordinates must be strictly ascending", line=lineno)
        values.append(v)
    if not values:
        raise EmptyTableError("zero cache holds no ordinates", line=len(lines))
    if not 14.0 < values[0] < 14.3:
        raise CacheFormatError(f"first ordinate {values[0]!r} is not in (14.0, 14.3)", line=2)
    return ZeroTable(np.array(values), precision, "loaded")


def zeros_for(T: float, precision: float = 1e-9, cache_dir=None) -> ZeroTable:
    """Zeros up to T, read from the cache directory when a file covers T."""
    cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    path = cache_dir / f"zeros_T{T:g}_p{precision:g}.txt"
    if path.exists():
        table = load_zeros(path)
        return ZeroTable(table.ordinates, table.precision, "loaded", T)
    table = find_zeros(T, precision)
    cache_dir.mkdir(parents=True, exist_ok=True)
    save_zeros(path, table)
    return table
