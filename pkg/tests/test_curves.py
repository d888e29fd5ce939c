import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from cyclic_covers.curves import (
    CurveSpec,
    FiberProfile,
    InvalidCurveError,
    count_points,
    fiber_profile,
    fiber_size,
    genus,
    genus_weight,
    make_curve,
)
from cyclic_covers.families import FamilySpec, enumerate_family, squarefree_monics
from cyclic_covers.field import make_classifier, make_field, prime_power
from cyclic_covers.poly import Polynomial, powerfree_decompose, weighted_degree

import oracles

F2, F3, F5, F7 = make_field(2), make_field(3), make_field(5), make_field(7)


def P(F, *c):
    return Polynomial(F, c)


def brute_fiber(F, f, x, m):
    v = f(F.element(x)).value
    return sum(1 for y in range(F.q) if F.power(y, m) == v)


def test_fiber_examples():
    c = make_curve(P(F5, 1), 2)
    assert fiber_size(c, F5.element(3)) == 2
    c = make_curve(P(F3, 0, 1), 2)
    assert [fiber_size(c, x) for x in range(3)] == [1, 2, 0]
    assert count_points(c) == 3
    assert fiber_profile(c) == FiberProfile(1, 1, 1)
    assert fiber_size(make_curve(P(F3, 2), 2), 0) == 0


def test_sigma_one_fields_have_singleton_fibers():
    for f in enumerate_family(FamilySpec(F2, 4, (1, 2, 3), 5)):
        c = make_curve(f, 2)
        assert count_points(c) == 2
        prof = fiber_profile(c)
        assert prof.k0 == 0 and prof.ksigma == 0 and prof.k1 == 2


def test_constant_mth_power():
    c = make_curve(P(F7, 6), 3)  # 6 = 3^3 mod 7
    assert count_points(c) == 7 * 3
    assert fiber_profile(make_curve(P(F5, 4), 2)) == FiberProfile(0, 0, 5)


def test_curve_spec_validation():
    with pytest.raises(ValueError):
        CurveSpec(2, P(F5, 1), make_classifier(F7, 2))
    with pytest.raises(ValueError):
        CurveSpec(2, P(F5, 1), make_classifier(F5, 4))


ORDERS = [q for q in range(2, 26) if q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25)]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(ORDERS), st.integers(2, 6), st.data())
def test_fibers_match_y_search(q, m, data):
    F = make_field(*prime_power(q))
    coeffs = data.draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=7))
    f = Polynomial(F, tuple(coeffs))
    c = make_curve(f, m)
    sizes = [brute_fiber(F, f, x, m) for x in range(q)]
    assert [fiber_size(c, x) for x in range(q)] == sizes
    assert count_points(c) == sum(sizes)
    prof = fiber_profile(c)
    assert prof.k0 + prof.k1 + prof.ksigma == q
    sigma = gcd(m, q - 1)
    assert count_points(c) <= q * sigma
    if sigma > 1:
        assert count_points(c) == prof.k1 + sigma * prof.ksigma


@pytest.mark.parametrize("q,m", [(5, 2), (7, 3), (5, 4), (13, 4), (7, 6)])
def test_scaling_by_mth_power_keeps_profile(q, m):
    F = make_field(q)
    cls = make_classifier(F, m)
    for f in [P(F, 1, 2, 0, 1), P(F, 3, 0, 1, 1, 1), P(F, 0, 1, 4)]:
        base = fiber_profile(make_curve(f, m))
        for u in F.units():
            scaled = fiber_profile(make_curve(f * F.element(u), m))
            if cls.is_mth_power(u):
                assert scaled == base
            else:
                assert scaled.k1 == base.k1  # roots do not move


def test_points_match_oracle_on_prime_field_family():
    for f in oracles.family(3, 4, (1, 2, 3), 4):
        assert count_points(make_curve(P(F3, *f), 2)) == oracles.points(f, 3, 2)


def test_genus_examples():
    x = Polynomial.x(F7)
    quintic = x**5 - x
    rep = genus(powerfree_decompose(quintic, 2), 2)
    assert rep.genus == 2 and rep.valid_hypotheses
    assert rep.branch_data == ((1, 5, 5),)
    quartic = x**4 + x + 3
    dec = powerfree_decompose(quartic, 3)
    assert dec.degrees() == (4, 0)
    assert genus(dec, 3).genus == 3
    with pytest.raises(ValueError):
        genus(powerfree_decompose(P(F7, 3), 2), 2)


def test_genus_flags_hypotheses():
    x = Polynomial.x(F5)
    dec = powerfree_decompose(x**3 + x + 1, 2)
    assert genus(dec, 2).valid_hypotheses  # 5 = 1 mod 2
    assert not genus(dec, 3).valid_hypotheses  # 5 != 1 mod 3
    assert not genus(powerfree_decompose(Polynomial.x(F3) ** 3 + 2 * Polynomial.x(F3) + 1, 2), 3).valid_hypotheses


def test_degenerate_cover_is_reported():
    x = Polynomial.x(F5)
    dec = powerfree_decompose((x + 1) ** 2, 4)  # y^4 = (x + 1)^2 is reducible
    with pytest.raises(InvalidCurveError) as err:
        genus(dec, 4)
    assert err.value.twice_genus == -2


@pytest.mark.parametrize("q", [3, 5, 7])
def test_hyperelliptic_genus_from_degree(q):
    F = make_field(q)
    for k in range(1, 8 if q < 7 else 6):
        for f in squarefree_monics(F, k):
            g = genus(powerfree_decompose(Polynomial(F, f), 2), 2).genus
            assert g == (k - 1) // 2


@pytest.mark.parametrize("m,n,q", [(2, 2, 5), (3, 3, 7), (4, 4, 5), (3, 2, 7), (4, 3, 5)])
def test_genus_matches_ramification_oracle(m, n, q):
    F = make_field(q)
    for k in range(1, 6):
        for f in oracles.monics(q, k):
            dec = powerfree_decompose(Polynomial(F, f), n)
            if not dec:
                continue
            expected = oracles.genus_by_ramification(f, q, m)
            try:
                got = genus(dec, m).genus
            except InvalidCurveError:
                got = None
            assert got == expected
            w = weighted_degree(dec, genus_weight(m, n))
            twice = 2 * got if got is not None else None
            if twice is not None:
                assert twice - 2 + m + gcd(m, k) == w


def test_genus_weight_examples():
    assert genus_weight(2, 2) == (1,)
    assert genus_weight(3, 3) == (2, 2)
    assert genus_weight(4, 4) == (3, 2, 3)
    with pytest.raises(ValueError):
        genus_weight(1, 3)


def test_genus_report_json():
    x = Polynomial.x(F7)
    obj = genus(powerfree_decompose(x**5 - x, 2), 2).to_json()
    assert obj["genus"] == 2
    assert obj["branch_data"] == [{"j": 1, "deg": 5, "contribution": 5}]
