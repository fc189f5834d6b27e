import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fracsg.errors import DomainError, UnsupportedNormError
from fracsg.normcore import (
    P1,
    P2,
    PINF,
    NormSpec,
    dini_derivative_check,
    log_norm,
    log_norm_limit,
    norm,
    operator_norm,
    semi_inner,
    semi_inner_limit,
)

SPECS = [P1, P2, PINF]
spec_ids = ["P1", "P2", "PInf"]

# small integers make exact ties in |w_i| (the interesting case for PInf) common
entries = st.one_of(
    st.floats(min_value=-10, max_value=10, allow_nan=False, allow_subnormal=False),
    st.integers(min_value=-3, max_value=3).map(float),
)


def vectors(n=4):
    return arrays(np.float64, n, elements=entries)


# -- NormSpec / norm ---------------------------------------------------------


@pytest.mark.parametrize("text, p", [("1", 1.0), ("2", 2.0), ("inf", math.inf), ("PInf", math.inf), ("P1", 1.0), ("3.5", 3.5)])
def test_normspec_parse(text, p):
    assert NormSpec.parse(text).p == p


def test_normspec_rejects_p_below_one():
    with pytest.raises(DomainError):
        NormSpec(0.5)


def test_norm_examples():
    assert norm([3, 4], P2) == 5
    assert norm([1, -2, 3], P1) == 6
    assert norm([1, -2, 3], PINF) == 3


def test_general_norm_matches_numpy():
    v = np.array([1e200, -3e200, 2e199])
    assert norm(v, NormSpec(3)) == pytest.approx(np.sum(np.abs(v / 1e200) ** 3) ** (1 / 3) * 1e200, rel=1e-14)


@given(vectors(), st.sampled_from(SPECS))
def test_norm_nonnegative_and_definite(v, spec):
    n = norm(v, spec)
    assert n >= 0
    assert (n == 0) == (not np.any(v))


# -- semi-inner-product examples -----------------------------------------------


@pytest.mark.parametrize("spec", SPECS, ids=spec_ids)
def test_limit_of_self_pairing(spec):
    u = np.array([1.5, -2.0, 0.5])
    est = semi_inner_limit(u, u, spec)
    assert abs(est.value - norm(u, spec) ** 2) <= est.uncertainty + 1e-12


def test_limit_examples():
    assert semi_inner_limit([1, 0], [0, 1], P1).value == pytest.approx(1.0, abs=1e-9)
    assert semi_inner_limit([1, 0], [0, 1], P2).value == pytest.approx(0.0, abs=1e-9)


def test_limit_with_zero_base():
    assert semi_inner_limit([1.0, 2.0], [0.0, 0.0], P1) == (0.0, 0.0)


def test_closed_form_examples():
    assert semi_inner([2, 0], [3, 0], P2) == 6
    assert semi_inner([1, -1], [-2, 0], P1) == 0
    assert semi_inner([5, 1], [3, 3], PINF) == 15


@pytest.mark.parametrize("spec", SPECS, ids=spec_ids)
def test_closed_form_zero_base(spec):
    assert semi_inner([1.0, -4.0], [0.0, 0.0], spec) == 0.0


def test_general_p_has_no_closed_form():
    with pytest.raises(UnsupportedNormError):
        semi_inner([1.0], [1.0], NormSpec(3))


def test_general_p_limit_matches_gradient():
    # for 1 < p < inf the norm is differentiable away from 0
    p = 3.0
    v = np.array([0.3, -1.0, 2.0])
    w = np.array([1.0, 2.0, -0.5])
    nw = norm(w, NormSpec(p))
    grad = np.sign(w) * np.abs(w) ** (p - 1) / nw ** (p - 1)
    est = semi_inner_limit(v, w, NormSpec(p))
    assert est.value == pytest.approx(nw * grad @ v, abs=max(est.uncertainty, 1e-9))


# -- the four laws -------------------------------------------------------------


@given(vectors(), vectors(), st.sampled_from(SPECS))
def test_cauchy_schwarz_type_bound(u, v, spec):
    assert semi_inner(u, v, spec) <= norm(u, spec) * norm(v, spec) + 1e-12


@given(vectors(), st.sampled_from(SPECS))
def test_self_pairing_is_squared_norm(u, spec):
    n2 = norm(u, spec) ** 2
    assert semi_inner(u, u, spec) == pytest.approx(n2, rel=1e-12, abs=1e-300)


@given(vectors(), vectors(), st.floats(min_value=0, max_value=10), st.sampled_from(SPECS))
def test_positive_homogeneity(u, v, c, spec):
    lhs = semi_inner(c * u, v, spec)
    rhs = c * semi_inner(u, v, spec)
    # relative to the natural magnitude of the pairing, which bounds rounding in the sums
    scale = norm(c * u, spec) * norm(v, spec)
    assert abs(lhs - rhs) <= 1e-12 * scale


@given(vectors(), vectors(), vectors(), st.sampled_from(SPECS))
def test_subadditivity(u, v, w, spec):
    assert semi_inner(u + v, w, spec) <= semi_inner(u, w, spec) + semi_inner(v, w, spec) + 1e-12


@pytest.mark.parametrize("spec", SPECS, ids=spec_ids)
def test_closed_form_within_limit_uncertainty(spec, rng):
    for _ in range(60):
        n = int(rng.integers(1, 7))
        v = rng.uniform(-1, 1, n)
        w = rng.uniform(-1, 1, n)
        est = semi_inner_limit(v, w, spec)
        assert abs(semi_inner(v, w, spec) - est.value) <= est.uncertainty


@pytest.mark.parametrize("spec", SPECS, ids=spec_ids)
def test_closed_form_within_limit_uncertainty_with_ties(spec):
    w = np.array([2.0, -2.0, 1.0, 0.0])
    for v in ([1.0, 3.0, -1.0, 2.0], [-1.0, -1.0, 5.0, -4.0], [0.0, 0.0, 0.0, 1.0]):
        est = semi_inner_limit(v, w, spec)
        assert abs(semi_inner(v, w, spec) - est.value) <= est.uncertainty


# -- Dini derivative -----------------------------------------------------------


def test_dini_examples():
    exp_curve = lambda t: np.array([math.exp(t), 0.0])
    assert dini_derivative_check(exp_curve, exp_curve, 0.0, P2) <= 1e-6
    rot = lambda t: np.array([math.cos(t), math.sin(t)])
    drot = lambda t: np.array([-math.sin(t), math.cos(t)])
    assert dini_derivative_check(rot, drot, 0.3, P2) <= 1e-6
    v = lambda t: np.array([math.exp(-t), math.exp(-2 * t)])
    dv = lambda t: np.array([-math.exp(-t), -2 * math.exp(-2 * t)])
    assert dini_derivative_check(v, dv, 0.5, P1) <= 1e-5


def test_dini_at_kink_of_max_norm():
    # ||(1, t)||_inf has a right derivative 1 at t = 1, where the max switches
    v = lambda t: np.array([1.0, t])
    dv = lambda t: np.array([0.0, 1.0])
    assert dini_derivative_check(v, dv, 1.0, PINF) <= 1e-6


def test_dini_singular_point():
    with pytest.raises(DomainError):
        dini_derivative_check(lambda t: np.zeros(2), lambda t: np.ones(2), 0.0, P2)


# -- logarithmic norms -------------------------------------------------------


def test_log_norm_examples():
    assert log_norm(np.diag([-1.0, -2.0]), P2) == pytest.approx(-1.0, abs=1e-15)
    for spec in SPECS:
        assert log_norm(np.eye(4), spec) == pytest.approx(1.0, abs=1e-15)
    assert log_norm([[-2.0, 1.0], [0.0, -3.0]], PINF) == -1.0
    assert log_norm([[-2.0, 1.0], [0.0, -3.0]], P1) == -2.0


def test_log_norm_limit_examples():
    for spec in SPECS:
        assert log_norm_limit(np.zeros((3, 3)), spec).value == pytest.approx(0.0, abs=1e-12)
    assert log_norm_limit([[3.0]], P1).value == pytest.approx(3.0, abs=1e-9)


@pytest.mark.parametrize("spec", SPECS, ids=spec_ids)
def test_log_norm_closed_form_vs_limit(spec, rng):
    for _ in range(30):
        a = rng.uniform(-1, 1, (5, 5))
        assert abs(log_norm(a, spec) - log_norm_limit(a, spec).value) <= 1e-6


def test_log_norm_symmetric_is_top_eigenvalue(rng):
    b = rng.normal(size=(7, 7))
    s = b + b.T
    assert log_norm(s, P2) == pytest.approx(np.linalg.eigvalsh(s)[-1], abs=1e-12)


@given(arrays(np.float64, (3, 3), elements=st.floats(-5, 5)), st.sampled_from(SPECS))
def test_log_norm_bounded_by_operator_norm(a, spec):
    # mu(A) <= ||A|| and mu shifts with A + t I; the 2-norm comes from
    # power iteration converged to ~1e-12 relative, hence the scaled margin
    op = operator_norm(a, spec)
    assert log_norm(a, spec) <= op + 1e-10 * op + 1e-12
    assert log_norm(a + 2.0 * np.eye(3), spec) == pytest.approx(log_norm(a, spec) + 2.0, abs=1e-12)


def test_operator_two_norm_matches_svd(rng):
    a = rng.normal(size=(6, 6))
    assert operator_norm(a, P2) == pytest.approx(np.linalg.svd(a, compute_uv=False)[0], rel=1e-10)


def test_log_norm_rejects_bad_matrices():
    with pytest.raises(DomainError):
        log_norm(np.ones((2, 3)), P2)
    with pytest.raises(DomainError):
        log_norm([[math.nan]], P2)
    with pytest.raises(UnsupportedNormError):
        log_norm(np.eye(2), NormSpec(3))
