import pytest

from summa_lab import arith, zeros
from summa_lab.arith import ArithmeticKind


@pytest.fixture(scope="session")
def zeros_1000():
    """All critical-line zeros up to height 1000 (649 ordinates)."""
    return zeros.find_zeros(1000.0, precision=1e-10)


@pytest.fixture(scope="session")
def tables():
    """Small arithmetic tables shared by the exact-identity tests."""
    return {kind: arith.sieve(kind, 20_000) for kind in ArithmeticKind}


@pytest.fixture(scope="session")
def big_tables():
    """Tables reaching 2*10^6, for the asymptotic and explicit-formula checks."""
    N = 2_000_000
    return {
        kind: arith.sieve(kind, N)
        for kind in (ArithmeticKind.VON_MANGOLDT, ArithmeticKind.MOBIUS, ArithmeticKind.MOBIUS_LOG_NEG)
    }


@pytest.fixture
def cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv(zeros.CACHE_ENV, str(tmp_path / "cache"))
    return tmp_path / "cache"
