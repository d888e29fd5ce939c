from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cyclic_covers.field import make_field
from cyclic_covers.zeta import (
    ZetaQuery,
    restricted_sqfree_closed,
    restricted_sqfree_counts,
    restricted_sqfree_partial,
    tail_bound,
    zeta_closed,
)

import oracles

F2, F3, F4, F5 = make_field(2), make_field(3), make_field(2, 2), make_field(5)


def test_zeta_closed_examples():
    assert zeta_closed(F3, 2) == Fraction(3, 2)
    assert zeta_closed(F2, 3) == Fraction(4, 3)
    with pytest.raises(ValueError):
        zeta_closed(F3, 1)


@pytest.mark.parametrize("F", [F2, F3, F5])
def test_zeta_is_truncated_sum_plus_tail(F):
    q = Fraction(F.q)
    for s in (2, 3, 4):
        for D in range(6):
            head = sum(q**d * q ** (-s * d) for d in range(D + 1))
            tail = q ** ((1 - s) * (D + 1)) / (1 - q ** (1 - s))
            assert zeta_closed(F, s) == head + tail


def test_query_validation():
    with pytest.raises(ValueError):
        ZetaQuery(1)
    with pytest.raises(ValueError):
        ZetaQuery(2, (0, 0))
    with pytest.raises(ValueError):
        ZetaQuery(2, (), -1)
    with pytest.raises(ValueError):
        restricted_sqfree_closed(F2, ZetaQuery(2, (0, 1, 2)))
    assert ZetaQuery(2, (F3.element(2),)).excluded == (2,)


def test_closed_examples():
    assert restricted_sqfree_closed(F3, ZetaQuery(2)) == Fraction(13, 9)
    assert restricted_sqfree_closed(F3, ZetaQuery(2, (0,))) == Fraction(13, 10)


def test_closed_is_ratio_of_zetas():
    for F in (F2, F3, F4, F5):
        for t in (2, 3, 4):
            assert restricted_sqfree_closed(F, ZetaQuery(t)) == zeta_closed(F, t) / zeta_closed(F, 2 * t)


def test_partial_examples():
    assert restricted_sqfree_partial(F3, ZetaQuery(2, (), 1)) == Fraction(4, 3)
    assert restricted_sqfree_partial(F3, ZetaQuery(2, (), 4)) == Fraction(350, 243)
    assert restricted_sqfree_partial(F3, ZetaQuery(2, (), 0)) == 1
    assert restricted_sqfree_partial(F3, ZetaQuery(2, (0,), 0)) == 1


def test_tail_bound_examples():
    assert tail_bound(F3, 2, 4) == Fraction(1, 243)
    assert Fraction(13, 9) - Fraction(350, 243) == tail_bound(F3, 2, 4)
    bounds = [tail_bound(F3, 2, D) for D in range(20)]
    assert all(a > b for a, b in zip(bounds, bounds[1:]))
    with pytest.raises(ValueError):
        tail_bound(F3, 1, 4)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_counts_match_brute_force(p):
    F = make_field(p)
    for r in range(min(p, 3) + 1):
        pts = list(range(r))
        counts = restricted_sqfree_counts(F, r, 5)
        for k, c in enumerate(counts):
            brute = sum(1 for f in oracles.monics(p, k)
                        if oracles.parts(f, p, 2) is not None
                        and all(oracles.evaluate(f, x, p) for x in pts))
            assert c == brute


@pytest.mark.parametrize("F", [F2, F3, F4, F5])
def test_enumeration_and_counts_agree(F):
    for t in (2, 3):
        for r in range(min(F.q, 3) + 1):
            for D in range(6):
                qy = ZetaQuery(t, tuple(range(r)), D)
                assert (restricted_sqfree_partial(F, qy, "enumerate")
                        == restricted_sqfree_partial(F, qy, "count"))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_truncation_error_within_bound(q):
    F = make_field(q)
    for t in (2, 3):
        for r in (0, 1, 2):
            prev = Fraction(0)
            for D in range(31):
                qy = ZetaQuery(t, tuple(range(r)), D)
                partial = restricted_sqfree_partial(F, qy)
                closed = restricted_sqfree_closed(F, qy)
                assert partial >= prev
                assert 0 <= closed - partial <= tail_bound(F, t, D)
                if r == 0 and D >= 1:
                    assert closed - partial == tail_bound(F, t, D)
                prev = partial


def test_euler_product_consistency():
    """Restricted partial ~ unrestricted partial times the local factors, within 2x the bound."""
    for F in (F3, F5):
        for t in (2, 3):
            for r in (1, 2):
                for D in (10, 20, 30):
                    full = restricted_sqfree_partial(F, ZetaQuery(t, (), D))
                    local = (1 / (1 + Fraction(F.q) ** -t)) ** r
                    restricted = restricted_sqfree_partial(F, ZetaQuery(t, tuple(range(r)), D))
                    assert abs(restricted - full * local) <= 2 * tail_bound(F, t, D)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7]), st.integers(2, 5), st.integers(0, 40), st.data())
def test_partial_below_closed(q, t, D, data):
    F = make_field(*{4: (2, 2)}.get(q, (q, 1)))
    r = data.draw(st.integers(0, min(q, 3)))
    qy = ZetaQuery(t, tuple(range(r)), D)
    gap = restricted_sqfree_closed(F, qy) - restricted_sqfree_partial(F, qy, "count")
    assert 0 <= gap <= tail_bound(F, t, D)
