import math

import numpy as np
import pytest
from scipy import special

from supertrees.airy import SERIES_LIMIT, airy, airy_log_derivative, airy_pair, airy_prime, airy_zero


def test_values_at_origin():
    assert airy(0) == pytest.approx(0.3550280538878172, rel=1e-15)
    assert airy_prime(0) == pytest.approx(-0.2588194037928068, rel=1e-15)


@pytest.mark.parametrize("z", np.concatenate([np.linspace(-25, 10, 71), [-SERIES_LIMIT, SERIES_LIMIT, 15.0, 30.0]]))
def test_agrees_with_independent_implementation(z):
    ai, dai = airy_pair(z)
    ref_ai, ref_dai = special.airy(z)[:2]
    scale = max(abs(ref_ai), 1e-300) if z > 0 else 1 / (math.pi**0.5 * max(abs(z), 1) ** 0.25)
    dscale = max(abs(ref_dai), 1e-300) if z > 0 else max(abs(z), 1) ** 0.25 / math.pi**0.5
    assert abs(ai - ref_ai) <= 1e-11 * scale
    assert abs(dai - ref_dai) <= 1e-11 * dscale


def test_continuity_across_method_switch():
    for z in (-SERIES_LIMIT, SERIES_LIMIT):
        below, above = airy_pair(z * (1 - 1e-12)), airy_pair(z * (1 + 1e-12))
        assert below[0] == pytest.approx(above[0], rel=1e-9, abs=1e-14)


@pytest.mark.parametrize("i,expected", [(1, -2.338107410459767), (2, -4.087949444130970), (3, -5.520559828095551)])
def test_zeros(i, expected):
    assert airy_zero(i) == pytest.approx(expected, abs=1e-12)
    assert abs(airy(airy_zero(i))) < 1e-13


def test_zero_numbering():
    with pytest.raises(ValueError):
        airy_zero(0)


def test_log_derivative_large_argument():
    # Ai'/Ai ~ -sqrt(z) - 1/(4z) for large z
    z = 40.0
    assert airy_log_derivative(z) == pytest.approx(-math.sqrt(z) - 1 / (4 * z), rel=1e-5)
