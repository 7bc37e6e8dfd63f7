import math

import mpmath as mp
import numpy as np
import pytest

from summa_lab import arith, residues as R
from summa_lab.arith import ArithmeticKind
from summa_lab.errors import DomainError, PoleError, SizingError, SummaError
from summa_lab.report import TruncationSpec
from summa_lab.zeta import euler_gamma, zeta, zeta_log_deriv

LAM = ArithmeticKind.VON_MANGOLDT


# --- residues and pairing ------------------------------------------------------------


def test_contour_residue_simple_pole():
    # residue of e^s/(s-1)^2 at 1 is e
    r = R.contour_residue(lambda s: np.exp(s) / (s - 1) ** 2, 1.0)
    assert abs(r - math.e) < 1e-13


def test_pairing_rejects_asymmetric_terms(zeros_1000):
    with pytest.raises(SummaError):
        R.paired_zero_sum(lambda rho: 1j * rho, zeros_1000, TruncationSpec(K_zeros=3))


def test_pairing_real_part(zeros_1000):
    trunc = TruncationSpec(K_zeros=5)
    paired = R.paired_zero_sum(lambda rho: 1 / rho, zeros_1000, trunc)
    expected = math.fsum(2 * (1 / r).real for r in zeros_1000.rhos(5))
    assert paired == pytest.approx(expected, rel=1e-14)
    unpaired = R.paired_zero_sum(lambda rho: 1 / rho, zeros_1000, TruncationSpec(K_zeros=5, pair_conjugates=False))
    assert unpaired == pytest.approx(expected, rel=1e-14)


# --- first expansion -----------------------------------------------------------------


def test_theorem1_lhs_values(tables):
    lam = tables[LAM]
    assert R.theorem1_lhs(1.5, 2, lam) == 0
    expected = arith.weighted_bracket_sum(lam, 0, 4.5) - math.lgamma(5)
    assert R.theorem1_lhs(4.5, 0, lam) == pytest.approx(expected, abs=1e-13)
    a, b = R.theorem1_lhs(10_000.5, 1, lam), R.theorem1_lhs(10_000.5, 1, lam)
    assert a == b and math.isfinite(a)


def test_theorem1_kappa():
    assert R.theorem1_kappa(10.0, 2) == pytest.approx(0, abs=1e-15)
    assert R.theorem1_kappa(4.0, 0.5) == pytest.approx(-1.2473 * 2, abs=2e-4)
    assert R.theorem1_kappa(4.0, 1) == 0 and R.theorem1_kappa(4.0, 0) == 0


def test_theorem1_rhs_pole_terms_only():
    y, w = 100.5, 2.0
    rhs = R.theorem1_rhs(y, w, TruncationSpec())
    expected = (zeta_log_deriv(2) / 6 - y * zeta_log_deriv(3) / 2).real
    assert rhs == pytest.approx(expected, abs=1e-12)
    mp_expected = float(mp.zeta(2, derivative=1) / (6 * mp.zeta(2)) - y * mp.zeta(3, derivative=1) / (2 * mp.zeta(3)))
    assert rhs == pytest.approx(mp_expected, abs=1e-12)


def test_theorem1_rejects_pole_collisions():
    for w in (0.0, 1.0):
        with pytest.raises(PoleError):
            R.theorem1_rhs(10.5, w, TruncationSpec())


def test_theorem1_report_is_finding(tables, zeros_1000):
    rep = R.theorem1_report(1000.5, 2.0, TruncationSpec(K_zeros=50, K_trivial=5), zeros_1000, tables[LAM])
    assert rep.status == "finding" and math.isfinite(rep.residual)


# --- second expansion ----------------------------------------------------------------


def rbar_oracle(rho, y):
    """Residue of the integrand at rho - 1 divided by y^rho, by contour quadrature."""
    return R.contour_residue(lambda s: R.theorem2_integrand(s, y), rho - 1, radius=0.05, points=128) / y**rho


def test_rbar_against_contour_oracle(zeros_1000):
    for k in (0, 1, 9):
        rho = complex(zeros_1000.rhos(k + 1)[k])
        for y in (10.0, 1234.5):
            closed = R.theorem2_rbar(rho, y)
            assert abs(closed - rbar_oracle(rho, y)) < 1e-6 * abs(closed)


def test_rbar_conjugate_symmetry(zeros_1000):
    rho = complex(zeros_1000.rhos(3)[2])
    assert abs(R.theorem2_rbar(rho.conjugate(), 50.0) - R.theorem2_rbar(rho, 50.0).conjugate()) < 1e-14


def test_rbar_log_term(zeros_1000):
    rho = complex(zeros_1000.rhos(1)[0])
    # the bracket is affine in log y, so the increment per decade is constant
    d1 = R.theorem2_rbar(rho, 100.0) - R.theorem2_rbar(rho, 10.0)
    d2 = R.theorem2_rbar(rho, 1000.0) - R.theorem2_rbar(rho, 100.0)
    assert abs(d1 - d2) < 1e-12 * abs(d1)


def test_trivial_residues_decay():
    r = [abs(R.theorem2_trivial_residue(n, 10_000.5)) for n in (1, 2, 3)]
    assert r[0] > r[1] > r[2]
    assert r[0] < 1e-6
    with pytest.raises(DomainError):
        R.theorem2_trivial_residue(0, 10.0)


def test_theorem2_no_zero_terms(tables):
    mln, lam = tables[ArithmeticKind.MOBIUS_LOG_NEG], tables[LAM]
    rep = R.theorem2_report(2.5, TruncationSpec(), None, mln, lam)
    assert rep.rhs == 1.25
    assert rep.residual == rep.lhs - 1.25
    # -mu(2) log 2 {1.25}[1.25] - psi(2.5) = 0.25 log 2 - log 2
    assert rep.lhs == pytest.approx(-0.75 * math.log(2), abs=1e-15)


def test_theorem2_needs_zeros():
    with pytest.raises(DomainError):
        R.theorem2_rhs(100.5, TruncationSpec(K_zeros=3), None)


# --- exact explicit formula ----------------------------------------------------------


def test_theorem33_lhs_trivial_points(tables):
    lam = tables[LAM]
    assert R.theorem33_lhs(1.0, lam, tail_tol=0.05) == 0
    assert R.theorem33_lhs(0.5, lam, tail_tol=0.05) == 0


def test_theorem33_lhs_converges(big_tables):
    lam = big_tables[LAM]
    coarse = R.theorem33_lhs(10.0, lam, tail_tol=1e-3)
    fine = R.theorem33_lhs(10.0, lam, tail_tol=1.5e-4)
    assert abs(coarse - fine) < 1e-3
    assert R.theorem33_tail_bound(10.0, R.theorem33_cutoff(10.0, 1e-3)) < 1e-3


def test_theorem33_lhs_sizing(tables):
    with pytest.raises(SizingError):
        R.theorem33_lhs(100.0, tables[LAM], tail_tol=1e-6)


def test_theorem33_trivial_tail_is_geometric():
    x = 3.0
    for n in range(1, 20):
        term = zeta(2 + 2 * n).real * x ** (1 - 2 * n) / (2 + 2 * n)
        assert term <= 1.65 * x / (x * x) ** n


def test_theorem33_constant_term():
    rhs = R.theorem33_rhs(1.0, TruncationSpec(), None)
    assert rhs == pytest.approx(1 - 2 * euler_gamma(), abs=1e-15)


def test_theorem33_displayed_form_does_not_converge(big_tables, zeros_1000):
    """As displayed, the residual grows with K at x = 100 and the x = 1 value stays away from 0."""
    lam = big_tables[LAM]
    res = [R.theorem33_report(100.0, TruncationSpec(K, 50), zeros_1000, lam).residual for K in (10, 100)]
    assert abs(res[1]) > abs(res[0])
    at_one = R.theorem33_rhs(1.0, TruncationSpec(100, 50), zeros_1000)
    assert abs(at_one) > 1.0


def test_theorem33_derived_form_converges_on_average(big_tables, zeros_1000):
    """Re-derived residues with midpoint values at jumps: mean |residual| falls along K."""
    lam = big_tables[LAM]
    xs = (2.5, 10.0, 100.0)
    means = []
    for K in (10, 25, 50, 100):
        trunc = TruncationSpec(K, 50)
        means.append(np.mean([abs(R.theorem33_report(x, trunc, zeros_1000, lam, form="derived", midpoint=True).residual)
                              for x in xs]))
    assert all(b < a for a, b in zip(means, means[1:]))
    assert means[-1] < 5e-3


def test_theorem33_trivial_sum_diverges_at_one():
    """At x = 1 the trivial-zero terms are zeta(2+2n)/(2+2n) ~ 1/(2n): a harmonic tail in both forms."""
    for form in ("displayed", "derived"):
        a = R.theorem33_rhs(1.0, TruncationSpec(0, 50), None, form=form)
        b = R.theorem33_rhs(1.0, TruncationSpec(0, 500), None, form=form)
        assert abs(b - a) == pytest.approx(0.5 * math.log(501 / 51), rel=0.01)


# --- divergence ---------------------------------------------------------------------


def test_divergence_values(zeros_1000):
    s = R.divergence_demo(1, 100.0, 4.0, zeros_1000)
    assert s[-1] == 58 and np.all(np.diff(s) >= 0)
    s2 = R.divergence_demo(2, 100.0, 4.0, zeros_1000)
    assert s2[-1] == pytest.approx(2 * zeros_1000.ordinates[:29].sum(), rel=1e-14)
    assert R.divergence_demo(1, 1000.0, 4.0, zeros_1000)[-1] > 1e3


def test_divergence_domain(zeros_1000):
    with pytest.raises(DomainError):
        R.divergence_demo(0.5, 100.0, 4.0, zeros_1000)
    with pytest.raises(DomainError):
        R.divergence_demo(1, 2000.0, 4.0, zeros_1000)
