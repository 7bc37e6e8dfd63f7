import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from summa_lab import arith
from summa_lab import volterra as V
from summa_lab.arith import ArithmeticKind
from summa_lab.errors import DomainError, SizingError

MU, LAM = ArithmeticKind.MOBIUS, ArithmeticKind.VON_MANGOLDT
TABLES = {k: arith.sieve(k, 2000) for k in (MU, LAM)}


@pytest.fixture(scope="module")
def t():
    return TABLES


def inst(t, kind, w):
    return V.VolterraInstance(t[kind], w)


def test_forcing_values(t):
    assert V.forcing_F(inst(t, MU, 1), 2.5) == pytest.approx(0, abs=1e-16)
    expected = math.log(2) * (2 / 3.5) / 2 + math.log(3) * (3 / 3.5) / 3
    assert V.forcing_F(inst(t, LAM, 1), 3.5) == pytest.approx(expected, abs=1e-15)
    assert V.forcing_F(inst(t, LAM, 1), 0.7) == 0


def test_residual_examples(t):
    assert abs(V.volterra_residual(inst(t, MU, 1), 2.5)) < 1e-15
    assert abs(V.volterra_residual(inst(t, LAM, 2), 10.5)) < 1e-13


def test_integer_point_gap(t):
    # {1} = 0 drops a(y)/y^w from the right-hand side
    assert V.volterra_residual(inst(t, MU, 1), 3.0) == pytest.approx(-1 / 3, abs=1e-15)
    assert V.volterra_report(inst(t, MU, 1), 3.0).status == "warning"
    assert V.volterra_report(inst(t, MU, 1), 3.5).status == "ok"


non_integer = st.floats(1.0, 1999.0).filter(lambda y: abs(y - round(y)) > 1e-6)


@settings(max_examples=150, deadline=None)
@given(non_integer, st.sampled_from([MU, LAM]), st.sampled_from([1.0, 2.0, 3.0]))
def test_exactness(y, kind, w):
    assert abs(V.volterra_residual(V.VolterraInstance(TABLES[kind], w), y)) < 1e-12


def test_w_below_one(t):
    with pytest.raises(DomainError):
        V.VolterraInstance(t[MU], 0.5)
    rep = V.volterra_report(V.VolterraInstance(t[MU], 0.5, exploratory=True), 10.5)
    assert rep.status == "provisional"


def test_neumann_closed_terms(t):
    i = inst(t, MU, 1)
    assert V.neumann_term_closed(i, 2.5, 0) == V.forcing_F(i, 2.5)
    assert V.neumann_term_closed(i, 2.5, 1) == pytest.approx(math.log(2) / 2.5, abs=1e-15)
    with pytest.raises(DomainError):
        V.neumann_term_closed(i, 2.5, -1)


@pytest.mark.parametrize("kind,w", [(MU, 1.0), (LAM, 1.0), (LAM, 2.0), (MU, 3.0)])
def test_neumann_series_converges_under_bound(t, kind, w):
    i = inst(t, kind, w)
    for y in (2.5, 37.7, 99.9):
        D = arith.dirichlet_polynomial(t[kind], w, y)
        partial = V.neumann_partial_sums(i, y, 40)
        for K, p in enumerate(partial):
            assert abs(D - p) <= V.neumann_tail_bound(i, y, K) * (1 + 1e-9) + 1e-15
        assert abs(D - partial[-1]) < 1e-8


def test_first_omitted_term_is_not_a_bound(t):
    """(1/y) sum |a| n^{1-w} L^{K+1}/(K+1)! is only the first omitted term; the remainder exceeds it."""
    i = inst(t, LAM, 1)
    y = 50.5
    D = arith.dirichlet_polynomial(t[LAM], 1, y)
    partial = V.neumann_partial_sums(i, y, 10)
    assert all(abs(D - partial[K]) > V.neumann_tail_bound_literal(i, y, K) for K in range(11))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_quadrature_matches_closed(t, k):
    i = inst(t, LAM, 1)
    for y in (2.5, 20.3, 99.5):
        q = V.neumann_term_quadrature(i, y, k, 10_000)
        c = V.neumann_term_closed(i, y, k)
        assert abs(q.value - c) < 1e-4
        assert abs(q.value - c) <= 2 * q.error_estimate + 1e-14


def test_quadrature_example(t):
    q = V.neumann_term_quadrature(inst(t, MU, 1), 2.5, 1, 10_000)
    assert q.value == pytest.approx(0.2772589, abs=1e-4)
    assert V.neumann_term_quadrature(inst(t, MU, 1), 2.5, 0, 10_000).value == V.forcing_F(inst(t, MU, 1), 2.5)


def test_quadrature_second_order(t):
    i = inst(t, LAM, 1)
    c = V.neumann_term_closed(i, 20.3, 2)
    e1 = abs(V.neumann_term_quadrature(i, 20.3, 2, 2000).value - c)
    e2 = abs(V.neumann_term_quadrature(i, 20.3, 2, 4000).value - c)
    assert 3.5 < e1 / e2 < 4.5


def test_quadrature_limits(t):
    with pytest.raises(DomainError):
        V.neumann_term_quadrature(inst(t, MU, 1), 10.5, 5, 10_000)
    with pytest.raises(SizingError):
        V.neumann_term_quadrature(inst(t, MU, 1), 10.5, 1, 999)


def test_kernel_fixed_point():
    for y in (0.3, 1.0, math.pi, 1e4):
        assert V.kernel_fixed_point(y) == pytest.approx(1.0, abs=1e-15)
    assert V.apply_kernel(lambda x: x, 2.0) == pytest.approx(1.0, abs=1e-14)


def test_bvp_check(t):
    integrated, literal = V.bvp_integrated_check(inst(t, MU, 1), 2.5)
    assert abs(integrated.residual) < 1e-15
    xF = 2.5 * V.forcing_F(inst(t, MU, 1), 2.5)
    assert literal.residual == pytest.approx(2 * xF, abs=1e-15)
    integrated, literal = V.bvp_integrated_check(inst(t, MU, 2), 100.5)
    assert abs(integrated.residual) < 1e-13
    assert literal.residual == pytest.approx(2 * 100.5 * V.forcing_F(inst(t, MU, 2), 100.5), rel=1e-10)
    with pytest.raises(DomainError):
        V.bvp_integrated_check(inst(t, LAM, 1), 2.5)


def test_exponent_fit():
    mu = arith.sieve(MU, 2**18)
    for w in (1.0, 2.0):
        fit = V.rh_exponent_fit(mu, w)
        assert fit.predicted == 0.5 - w
        assert abs(fit.exponent - fit.predicted) < 0.2
    rep = V.rh_exponent_report(mu, 1.0)
    assert rep.status == "finding"
    with pytest.raises(SizingError):
        V.rh_exponent_fit(arith.sieve(MU, 40), 1.0)
