import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from scoremetric import (BudgetExhausted, PreconditionError, brute_nearest_prefix, delegate_index,
                         make_space, separation_index, signature)
from scoremetric.base_space import IntervalSpace
from scoremetric.delegates import (DelegateStream, agreement_depth, first_disagreement,
                                   parse_signature)
from conftest import dyadics


def test_examples_interval(interval):
    x = interval.parse_point("0.3")
    assert [delegate_index(interval, x, n) for n in range(1, 10)] == [1, 1, 3, 4, 4, 4, 4, 4, 4]
    assert signature(interval, x, 9).indices == (1, 1, 3, 4, 4, 4, 4, 4, 4)
    assert signature(interval, interval.parse_point("1/2"), 5).indices == (1, 1, 3, 3, 3)
    assert signature(interval, interval.parse_point("0"), 4).indices == (1, 1, 1, 1)


def test_examples_finite(abc):
    c, b = abc.parse_point("c"), abc.parse_point("b")
    assert [delegate_index(abc, c, n) for n in (1, 2, 3)] == [1, 2, 3]
    assert signature(abc, b, 3).indices == (1, 2, 2)
    # past exhaustion the delegate is frozen
    assert signature(abc, b, 7).indices == (1, 2, 2, 2, 2, 2, 2)


def test_first_delegate_is_r1(interval, euclid2, abc):
    rng = random.Random(3)
    for s in (interval, euclid2, abc):
        for _ in range(20):
            assert delegate_index(s, s.random_point(rng), 1) == 1


def test_brute_examples(interval, abc):
    assert brute_nearest_prefix(interval, interval.parse_point("0.3"), 9) == 4
    assert brute_nearest_prefix(interval, interval.parse_point("1/2"), 2) == 1
    assert brute_nearest_prefix(abc, abc.parse_point("c"), 2) == 2


def test_signature_serialisation(interval):
    sig = signature(interval, interval.parse_point("0.3"), 5)
    assert str(sig) == "1,1,3,4,4"
    assert parse_signature(str(sig)) == sig.indices
    assert sig.N == 5


def test_signature_invariants(euclid2):
    rng = random.Random(5)
    for _ in range(50):
        x = euclid2.random_point(rng)
        idx = signature(euclid2, x, 64).indices
        assert idx[0] == 1
        for n in range(2, 65):
            assert idx[n - 1] in (idx[n - 2], n)
        toks = [euclid2.token(x, euclid2.dense_point(i)) for i in idx]
        assert all(a >= b for a, b in zip(toks, toks[1:]))


@settings(max_examples=200, deadline=None)
@given(dyadics(14))
def test_recursion_equals_argmin(x):
    s = IntervalSpace()
    st = DelegateStream(s, x)
    for n in range(1, 70):
        assert st[n] == brute_nearest_prefix(s, x, n)


def test_separation_examples(interval):
    p = interval.parse_point
    assert separation_index(interval, p("0"), p("1"), 1) == 2
    assert separation_index(interval, p("1/4"), p("3/4"), Fraction(1, 2)) == 5
    with pytest.raises(PreconditionError):
        separation_index(interval, p("0"), p("1/8"), Fraction(1, 4))


def test_separation_guarantee(interval):
    p = interval.parse_point
    for x, y in [("0", "1"), ("1/4", "3/4")]:
        N = separation_index(interval, p(x), p(y), Fraction(1, 2))
        sx, sy = DelegateStream(interval, p(x)), DelegateStream(interval, p(y))
        assert all(sx[j] != sy[j] for j in range(N, N + 65))


def test_separation_budget(interval):
    p = interval.parse_point
    with pytest.raises(BudgetExhausted):
        separation_index(interval, p("1/3"), p("2/3"), Fraction(1, 1 << 10), imax=8)


def test_first_disagreement(interval):
    p = interval.parse_point
    sx, sy = DelegateStream(interval, p("1/2")), DelegateStream(interval, p("5/8"))
    assert first_disagreement(sx, sy, 0, 100) == 2
    same = DelegateStream(interval, p("1/2"))
    assert first_disagreement(same, DelegateStream(interval, p("1/2")), 0, 100) is None


def test_stream_freezes_on_dense_point(interval):
    st = DelegateStream(interval, interval.parse_point("3/8"))
    assert st[10_000] == 7
    assert st.frozen and st.computed() == 7


@pytest.mark.parametrize("cfg", ["interval", {"kind": "euclid", "dim": 2},
                                 {"kind": "interval", "enumeration": "block_swap"}])
def test_agreement_depth_is_sound(cfg):
    s = make_space(cfg)
    rng = random.Random(11)
    for k in (1, 2, 3, 4):
        eps = Fraction(1, 1 << k)
        N = agreement_depth(s, eps)
        by_delegate = {}
        for _ in range(400):
            x = s.random_point(rng)
            by_delegate.setdefault(DelegateStream(s, x)[N], []).append(x)
        for group in by_delegate.values():
            for x in group:
                for y in group:
                    assert s.token(x, y) < s.eps_token(eps)
