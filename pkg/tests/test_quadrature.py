import math

import numpy as np
import pytest
import scipy.integrate

from monospan import NumericalError, integrate


def test_polynomial_is_exact():
    # G7/K15 integrates degree <= 13 exactly on a single cell
    res = integrate(lambda x: x**7 - 3 * x**4 + 2, 0.0, 1.0)
    assert abs(res.value - (1 / 8 - 3 / 5 + 2)) < 1e-15
    assert res.error < 1e-12


def test_endpoint_singularity_x_power():
    # integral of x^p over [0,1] with p just inside the admissible range
    p = -0.49
    res = integrate(lambda x: x**p, 0.0, 1.0)
    assert abs(res.value - 1 / (p + 1)) < 1e-9


def test_complex_oscillatory_against_scipy():
    s = 0.3 + 7.0j

    def f(x):
        return x**s

    res = integrate(f, 0.0, 1.0)
    re, _ = scipy.integrate.quad(lambda x: (x**s).real, 0, 1, limit=200)
    im, _ = scipy.integrate.quad(lambda x: (x**s).imag, 0, 1, limit=200)
    assert abs(res.value - complex(re, im)) < 1e-10
    assert abs(res.value - 1 / (s + 1)) < 1e-10


def test_breakpoints_handle_jump():
    f = lambda x: np.where(x >= 0.5, 1.0, 0.0)
    res = integrate(f, 0.0, 1.0, breakpoints=(0.5,))
    assert abs(res.value - 0.5) < 1e-13


def test_log_powers():
    # integral of (ln x)^4 over [0,1] is 4! = 24
    res = integrate(lambda x: np.log(x) ** 4, 0.0, 1.0)
    assert abs(res.value - 24.0) < 1e-9


def test_cell_limit_raises():
    with pytest.raises(NumericalError):
        integrate(lambda x: x**-0.4999, 0.0, 1.0, tol=1e-300, limit=50)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_nonfinite_integrand_raises():
    with pytest.raises(NumericalError):
        integrate(lambda x: 1.0 / (x - 0.3), 0.0, 1.0, breakpoints=(0.3,))


def test_reproducible_summation():
    f = lambda x: x**-0.3 * np.cos(40 * x)
    a = integrate(f, 0.0, 1.0)
    b = integrate(f, 0.0, 1.0)
    assert a.value == b.value
