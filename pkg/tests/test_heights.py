import math
import random
from fractions import Fraction

import pytest

from legheights import (
    LegendreCurve,
    ProductFiberPoint,
    lambda_height,
    mul_n,
    neg,
    neron_tate,
    neron_tate_product,
    normalize_projective,
    segre_height,
    silverman_tate_ratio,
    szpiro_ullmo_bound,
    total_height,
    weil_height,
)
from legheights.errors import NonConvergence
from legheights.tate import doubling_data, tate_limit

from conftest import x2_point

LOG2 = math.log(2)
LOG3 = math.log(3)


# -- Weil / total / Segre ----------------------------------------------------


def test_weil_height_basic():
    assert weil_height(normalize_projective([1, 2])) == pytest.approx(LOG2)
    assert weil_height(normalize_projective([1, 1])) == 0.0
    assert weil_height(normalize_projective([4, 6])) == pytest.approx(LOG3)


def test_total_height_identity_component():
    O = LegendreCurve(2).identity()
    assert total_height(ProductFiberPoint([O])) == pytest.approx(LOG2)


def test_total_height_two_identities():
    O = LegendreCurve(Fraction(1, 2)).identity()
    assert total_height(ProductFiberPoint([O, O])) == pytest.approx(LOG2)


def test_total_height_sample(sample_point):
    got = total_height(ProductFiberPoint([sample_point]))
    assert got == pytest.approx(math.log(4) + math.log(6))


def test_segre_height_examples(sample_point):
    O = LegendreCurve(2).identity()
    assert segre_height(ProductFiberPoint([O])) == pytest.approx(LOG2)
    assert segre_height(ProductFiberPoint([sample_point])) == pytest.approx(math.log(24))


def test_segre_equals_total_exactly():
    from legheights.heights import segre_point

    rng = random.Random(9)
    for _ in range(40):
        g = rng.randrange(1, 4)
        k = Fraction(rng.randrange(2, 25), rng.randrange(1, 5))
        if abs(k) == 1:
            continue
        base = x2_point(k)
        comps = [mul_n(base, rng.randrange(-2, 4)) for _ in range(g)]
        pp = ProductFiberPoint(comps)
        # exact integer-level identity: coprime Segre coordinates whose max
        # modulus is the product of the factor maxima
        sp = segre_point(pp)
        lam = pp.lam
        expect_max = math.prod(max(abs(c) for c in comp.point.coords) for comp in comps)
        expect_max *= max(abs(lam.numerator), lam.denominator)
        assert max(abs(c) for c in sp.coords) == expect_max
        # float routes agree to rounding of the final log
        assert segre_height(pp) == pytest.approx(total_height(pp), rel=1e-14, abs=1e-12)


# -- canonical height --------------------------------------------------------


def test_nt_zero_on_identity_and_torsion():
    E = LegendreCurve(Fraction(-6))
    assert neron_tate(E.identity()).value == 0.0
    assert neron_tate(E.identity()).error_bound == 0.0
    for x in (0, 1, Fraction(-6)):
        est = neron_tate(E.point(x, 0))
        assert est.value == 0.0 and est.error_bound == 0.0


def test_nt_positive_and_depth_stable(sample_point):
    est = neron_tate(sample_point, 1e-8)
    assert est.value > 0.3
    assert est.error_bound <= 1e-8
    deeper = neron_tate(sample_point, 1e-10)
    assert deeper.depth > est.depth
    assert abs(deeper.value - est.value) <= est.error_bound + deeper.error_bound


def test_nt_quadraticity(sample_point):
    tol = 1e-8
    base = neron_tate(sample_point, tol)
    twice = neron_tate(mul_n(sample_point, 2), tol)
    assert abs(twice.value - 4 * base.value) <= 5 * tol


def test_nt_parity(sample_point):
    tol = 1e-8
    assert abs(
        neron_tate(neg(sample_point), tol).value - neron_tate(sample_point, tol).value
    ) <= 2 * tol


@pytest.mark.parametrize("m", [-5, -3, 2, 3, 4, 5])
def test_nt_scales_quadratically(m, sample_point):
    tol = 1e-9
    base = neron_tate(sample_point, tol)
    scaled = neron_tate(mul_n(sample_point, m), tol)
    assert abs(scaled.value - m * m * base.value) <= (m * m + 1) * tol


def test_nt_product_additive(sample_point):
    O = LegendreCurve(sample_point.lam).identity()
    single = neron_tate(sample_point, 5e-9)
    pair = neron_tate_product(ProductFiberPoint([sample_point, O]), 1e-8)
    assert abs(pair.value - single.value) <= 2e-8
    double = neron_tate_product(ProductFiberPoint([sample_point, sample_point]), 1e-8)
    assert abs(double.value - 2 * single.value) <= 2e-8
    assert pair.value >= 0.0


def test_nt_exact_mode_agrees_with_tracked(sample_point):
    loose = 2e-4
    exact = neron_tate(sample_point, loose, tracked=False)
    tracked = neron_tate(sample_point, loose, tracked=True)
    assert exact.error_bound <= loose
    assert abs(exact.value - tracked.value) <= exact.error_bound + tracked.error_bound


def test_nt_exact_mode_budget_exhaustion(sample_point):
    with pytest.raises(NonConvergence):
        neron_tate(sample_point, 1e-12, tracked=False, bit_budget=4096)


def test_nt_unreachable_depth(sample_point):
    with pytest.raises(NonConvergence):
        neron_tate(sample_point, 1e-300)


def test_tate_limit_rejects_bad_tolerance():
    dd = doubling_data(Fraction(-6))
    with pytest.raises(NonConvergence):
        tate_limit(dd, 2, 1, 0.0)


def test_error_bound_decays_geometrically(sample_point):
    prev = None
    for tol in (1e-4, 1e-6, 1e-8):
        est = neron_tate(sample_point, tol)
        if prev is not None:
            # four extra doublings shrink the certified tail by >= 4^3
            assert est.error_bound < prev / 50
        prev = est.error_bound


# -- comparison ratio ----------------------------------------------------------


def test_st_ratio_identity_over_lambda_two():
    O = LegendreCurve(2).identity()
    ratio = silverman_tate_ratio(ProductFiberPoint([O]))
    assert ratio == pytest.approx(LOG2)


def test_st_ratio_torsion_large_lambda():
    E = LegendreCurve(10**6)
    ratio = silverman_tate_ratio(ProductFiberPoint([E.point(0, 0)]))
    assert ratio == pytest.approx(1.0, abs=1e-12)  # h(P) = 0, so total = h(lambda)


def test_st_ratio_nonnegative(sample_point):
    assert silverman_tate_ratio(ProductFiberPoint([sample_point])) >= 0.0


# -- isogeny-growth bound -------------------------------------------------------


def test_su_trivial_level():
    assert szpiro_ullmo_bound(1, 1.25, 0.5) == pytest.approx(0.75)


def test_su_hand_values():
    assert szpiro_ullmo_bound(2, 0, 0) == pytest.approx(LOG2 / 6, abs=1e-14)
    assert szpiro_ullmo_bound(4, 0, 0) == pytest.approx(LOG2 / 2, abs=1e-14)


def test_su_monotone_along_prime_powers():
    for p in (2, 3, 5, 7, 11, 13):
        prev = None
        e = 1
        while p**e <= 10**4:
            val = szpiro_ullmo_bound(p**e, 0, 0)
            if prev is not None and p**(e - 1) > 3:
                assert val >= prev
            prev = val
            e += 1


def test_su_rejects_nonpositive():
    with pytest.raises(ValueError):
        szpiro_ullmo_bound(0, 0, 0)


# -- family-level sanity ---------------------------------------------------------


def test_lambda_height():
    assert lambda_height(Fraction(-6)) == pytest.approx(math.log(6))
    assert lambda_height(Fraction(2, 3)) == pytest.approx(LOG3)
