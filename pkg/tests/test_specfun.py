import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracsg.errors import DomainError, NonConvergenceError, PoleError, QuadratureError
from fracsg.quadrature import QuadSpec
from fracsg.specfun import (
    MLParams,
    _series_limit,
    _wright_series,
    gamma_fn,
    laplace_identity_residual,
    ml_deriv,
    ml_eval,
    rgamma,
    wright_cutoff,
    wright_eval,
    wright_moment,
)

E_ERFC_1 = math.e * math.erfc(1.0)


# -- Gamma -------------------------------------------------------------------


@pytest.mark.parametrize("x, expected", [(1.0, 1.0), (5.0, 24.0)])
def test_gamma_factorials(x, expected):
    assert gamma_fn(x) == expected


def test_gamma_against_frozen_quadrature(oracles):
    for x, ref in oracles["gamma"]:
        assert gamma_fn(x) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -17.0])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma_fn(x)
    assert rgamma(x) == 0.0


def test_gamma_overflow():
    with pytest.raises(OverflowError):
        gamma_fn(172.0)


@given(st.floats(min_value=-20.0, max_value=30.0).filter(lambda x: abs(x - round(x)) > 1e-6))
def test_gamma_recurrence(x):
    assert gamma_fn(x + 1.0) == pytest.approx(x * gamma_fn(x), rel=1e-12)


# -- Mittag-Leffler ----------------------------------------------------------


def test_mlparams_validation():
    with pytest.raises(DomainError):
        MLParams(0.0, 1.0)
    with pytest.raises(DomainError):
        MLParams(0.5, -0.1)


def test_ml_examples():
    assert ml_eval(MLParams(1, 1), 2).real == pytest.approx(7.389056098930650, rel=1e-14)
    assert ml_eval(MLParams(0.7, 0.3), 0).real == 1.0 / math.gamma(0.3)
    assert ml_eval(MLParams(0.5, 1), -1).real == pytest.approx(E_ERFC_1, rel=1e-13)


def test_ml_against_frozen_oracle(oracles):
    worst = 0.0
    for a, b, zr, zi, vr, vi in oracles["ml"]:
        ref = complex(vr, vi)
        got = ml_eval(MLParams(a, b), complex(zr, zi))
        worst = max(worst, abs(got - ref) / abs(ref))
    assert worst <= 1e-10


def test_ml_real_argument_gives_real_value():
    assert ml_eval(MLParams(0.6, 0.8), -7.5).imag == 0.0


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.0])
@pytest.mark.parametrize("beta", [0.2, 0.5, 1.0, 2.5])
def test_ml_at_zero_is_first_series_term(alpha, beta):
    assert ml_eval(MLParams(alpha, beta), 0) == complex(1.0 / math.gamma(beta), 0)


def test_ml_exponential_on_disk_of_radius_20():
    worst = 0.0
    for r in np.linspace(0.0, 20.0, 21):
        for th in np.linspace(-math.pi, math.pi, 37):
            z = r * cmath.exp(1j * th)
            worst = max(worst, abs(ml_eval(MLParams(1, 1), z) - cmath.exp(z)) / abs(cmath.exp(z)))
    assert worst <= 1e-12


@pytest.mark.parametrize("z", [-3.0, 0.7, 2.0 + 1.0j, -12.0, 9.0])
def test_ml_beta_recurrence(z):
    # E_{a,b}(z) = 1/Gamma(b) + z E_{a,a+b}(z); crosses the series/contour switch
    lhs = ml_eval(MLParams(0.5, 1.0), z)
    rhs = 1.0 + z * ml_eval(MLParams(0.5, 1.5), z)
    assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), 1.0)


def test_ml_overflow_is_signalled():
    with pytest.raises(OverflowError):
        ml_eval(MLParams(0.3, 1.0), 300.0)


def test_ml_nonfinite_argument():
    with pytest.raises(DomainError):
        ml_eval(MLParams(0.5, 1.0), complex(math.nan, 0))


# -- derivative --------------------------------------------------------------


def test_ml_deriv_examples():
    assert ml_deriv(1.0, -2.0, 0.5) == pytest.approx(-2.0 * math.exp(-1.0), rel=1e-12)
    assert ml_deriv(0.5, 0.0, 1.0) == 0.0


def _fd(alpha, lam, z, h=1e-5):
    f = lambda s: ml_eval(MLParams(alpha, 1.0), lam * s**alpha).real
    return (f(z + h) - f(z - h)) / (2 * h)


def test_ml_deriv_finite_difference_example():
    assert ml_deriv(0.6, -1.0, 1.3) == pytest.approx(_fd(0.6, -1.0, 1.3), rel=1e-6)


@pytest.mark.parametrize("alpha", [0.3, 0.6, 0.9, 1.0])
@pytest.mark.parametrize("lam", [-2.0, -0.5, 1.0])
@pytest.mark.parametrize("z", [0.5, 1.1, 2.0])
def test_ml_deriv_matches_finite_difference(alpha, lam, z):
    assert ml_deriv(alpha, lam, z) == pytest.approx(_fd(alpha, lam, z), rel=1e-6)


def test_ml_deriv_against_frozen_series(oracles):
    for a, lam, z, ref in oracles["ml_deriv"]:
        assert ml_deriv(a, lam, z) == pytest.approx(ref, rel=1e-11)


@pytest.mark.parametrize("args", [(0.5, -1.0, 0.0), (0.5, -1.0, -1.0), (1.2, -1.0, 1.0), (0.0, 1.0, 1.0)])
def test_ml_deriv_domain(args):
    with pytest.raises(DomainError):
        ml_deriv(*args)


# -- Wright ------------------------------------------------------------------


def test_wright_examples():
    assert wright_eval(0.5, 0.5, 0.0) == pytest.approx(0.5641895835477563, rel=1e-15)
    assert wright_eval(0.5, 0.5, 1.0) == pytest.approx(0.4393912894677224, rel=1e-13)
    assert wright_eval(0.3, 0.7, 2.5) >= 0.0


def test_wright_half_order_gaussian_and_erfc():
    z = np.linspace(0.0, 25.0, 101)
    assert np.allclose(wright_eval(0.5, 0.5, z), np.exp(-z**2 / 4) / math.sqrt(math.pi), rtol=1e-12, atol=1e-300)
    erfc = np.array([math.erfc(v / 2) for v in z])
    big = erfc > 1e-280
    assert np.allclose(wright_eval(0.5, 1.0, z)[big], erfc[big], rtol=1e-11)


def test_wright_against_frozen_oracle(oracles):
    for a, b, z, ref in oracles["wright"]:
        got = wright_eval(a, b, z)
        if abs(ref) > 1e-30:
            assert got == pytest.approx(ref, rel=1e-11), (a, b, z)
        else:
            assert abs(got - ref) < 1e-30


def test_wright_array_and_scalar_agree():
    z = np.array([0.0, 0.5, 3.0, 9.0])
    arr = wright_eval(0.4, 0.6, z)
    assert arr.shape == z.shape
    assert [wright_eval(0.4, 0.6, float(v)) for v in z] == pytest.approx(list(arr), rel=1e-15)


def test_wright_pole_terms_vanish():
    # beta - alpha k hits 0, -1, ... for alpha = beta = 0.5; k = 1, 3, 5 vanish
    z = 0.3
    expected = sum(
        (-z) ** k / math.factorial(k) * rgamma(0.5 - 0.5 * k) for k in range(60)
    )
    assert wright_eval(0.5, 0.5, z) == pytest.approx(expected, rel=1e-14)


@given(
    st.floats(min_value=0.02, max_value=0.98),
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.0, max_value=1.0),
)
def test_wright_nonnegative(alpha, beta, frac):
    z = frac * wright_cutoff(alpha, beta)
    assert wright_eval(alpha, beta, z) >= -1e-14


def test_wright_domain():
    with pytest.raises(DomainError):
        wright_eval(1.0, 0.5, 1.0)
    with pytest.raises(DomainError):
        wright_eval(0.5, 0.5, -1.0)


def test_wright_series_budget_near_alpha_one():
    # the defining series decays too slowly for alpha this close to 1
    with pytest.raises(NonConvergenceError):
        _wright_series(0.9995, 1.0, np.array([1.0035]))


def test_wright_near_alpha_one_against_frozen_oracle(oracles):
    for a, b, z, ref in oracles["wright_near_one"]:
        assert wright_eval(a, b, z) == pytest.approx(ref, rel=1e-13), (a, b, z)


@pytest.mark.parametrize("alpha", [0.9975, 0.999])
@pytest.mark.parametrize("beta", [0.0, 0.5, 1.0])
def test_wright_near_alpha_one_matches_series(alpha, beta):
    # both routes are valid just below z = 1, where the series still converges in budget
    z = np.linspace(0.98, min(_series_limit(alpha), 0.995), 7)
    direct = _wright_series(alpha, beta, z)
    assert np.allclose(wright_eval(alpha, beta, z), direct, rtol=1e-12, atol=1e-300)


@settings(max_examples=40)
@given(
    st.floats(min_value=0.99, max_value=1 - 1e-9),
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.9, max_value=1.1),
)
def test_wright_nonnegative_near_alpha_one(alpha, beta, z):
    assert wright_eval(alpha, beta, z) >= -1e-14


@pytest.mark.parametrize("alpha, beta", [(0.25, 0.5), (0.5, 1.0), (0.75, 0.0), (0.5, -0.3)])
def test_wright_cutoff_definition(alpha, beta):
    zc = wright_cutoff(alpha, beta)
    assert abs(wright_eval(alpha, beta, zc)) < 1e-18
    assert abs(wright_eval(alpha, beta, zc * (1 - 1e-6))) >= 1e-18 * 0.999
    tail = wright_eval(alpha, beta, np.linspace(zc, 3 * zc, 50))
    assert np.all(np.abs(tail) < 1e-18)


# -- integral identities -----------------------------------------------------


def test_moment_examples():
    assert wright_moment(0.5, 0.5, 0) == pytest.approx(1.0, rel=1e-10)
    assert wright_moment(0.5, 1.0, 1) == pytest.approx(1.0, rel=1e-10)
    assert wright_moment(0.25, 0.75, 3) == pytest.approx(6.0 / gamma_fn(1.75), rel=1e-8)


def test_high_moment_widens_truncation():
    # z**5 keeps the integrand above tolerance past the point where W itself drops below 1e-18
    exact = math.factorial(5) / gamma_fn(0.5 + 0.25 * 6)
    assert wright_moment(0.25, 0.5, 5) == pytest.approx(exact, rel=1e-10)


def test_moment_tail_check_raises():
    with pytest.raises(QuadratureError):
        wright_moment(0.5, 1.0, 2, QuadSpec(z_max=3.0))


def test_moment_domain():
    with pytest.raises(DomainError):
        wright_moment(0.5, 1.0, -1)
    with pytest.raises(DomainError):
        wright_moment(0.5, 0.0, 1)


@pytest.mark.parametrize("alpha, beta, z, bound", [(0.5, 1.0, 0.0, 1e-8), (0.5, 1.0, 1.0, 1e-6), (0.3, 0.5, 4.0, 1e-6)])
def test_laplace_identity_examples(alpha, beta, z, bound):
    assert laplace_identity_residual(alpha, beta, z) <= bound


def test_laplace_identity_domain():
    with pytest.raises(DomainError):
        laplace_identity_residual(0.5, 1.0, -1.0)
