from fractions import Fraction

import pytest

from legheights import LegendreCurve, LegendreFiberPoint


def x2_point(k) -> LegendreFiberPoint:
    """Point ([2 : 2k : 1], lambda = 2 - 2k^2) of the x = 2 family."""
    k = Fraction(k)
    lam = 2 - 2 * k * k
    return LegendreCurve(lam).point(2, 2 * k)


@pytest.fixture
def sample_point() -> LegendreFiberPoint:
    return x2_point(2)
