import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjgeom import (Field, FiniteVector, SemiInnerProductSelector, ShapeMismatch, ZeroVector,
                    bj_orthogonal_vec, is_smooth_vec, norm, semi_inner_product, support_range)
from bjgeom.oracle import vector_oracle
from bjgeom.vectors import extreme_support_functionals

L1, LINF = FiniteVector.l1, FiniteVector.linf


def test_norms():
    assert norm(L1([1, -1, 2])) == 4
    assert norm(LINF([1, -3, 2])) == 3
    assert norm(L1([0, 0])) == 0
    assert norm(L1([3 + 4j, 0])) == pytest.approx(5)


def test_support_range_l1_real_is_interval():
    for a, b in [(0.5, 2.0), (-1.0, -3.0), (2.0, 0.0)]:
        r = support_range(L1([1, 0]), L1([a, b]))
        assert r.interval() == (a - abs(b), a + abs(b))


def test_support_range_linf_points():
    r = support_range(LINF([1, 1]), LINF([1, -1]))
    assert sorted(c for c, _ in r.atoms) == [-1, 1]
    assert r.interval() == (-1, 1)


def test_support_range_l1_complex_disk():
    r = support_range(L1([1j, 0, 0]), L1([1, 1, 1], Field.COMPLEX))
    (c, rad), = r.atoms
    assert c == pytest.approx(-1j)
    assert rad == 2


def test_support_range_rejects_bad_input():
    with pytest.raises(ZeroVector):
        support_range(L1([0, 0]), L1([1, 1]))
    with pytest.raises(ShapeMismatch):
        support_range(L1([1, 0]), L1([1, 0, 0]))
    with pytest.raises(ShapeMismatch):
        support_range(L1([1, 0]), LINF([1, 0]))


@pytest.mark.parametrize("x, y, expected", [
    (LINF([1, 1]), LINF([1, -1]), True),
    (L1([1, 1]), L1([1, 1]), False),
    (L1([1, 0]), L1([1, 2]), True),
    (L1([1, 0]), L1([1, 0.5]), False),
    (LINF([2, 1]), LINF([0, 7]), True),
])
def test_bj_examples_match_oracle(x, y, expected):
    assert bj_orthogonal_vec(x, y) is expected
    assert vector_oracle(x, y) is expected


def test_zero_is_orthogonal_to_everything():
    assert bj_orthogonal_vec(L1([1, 2]), L1([0, 0]))


@pytest.mark.parametrize("x, expected", [
    (L1([1, -2]), True), (LINF([3, 3]), False), (L1([1, 0]), False),
    (LINF([3, -1]), True), (L1([1j, 2]), True),
])
def test_smoothness(x, expected):
    assert is_smooth_vec(x) is expected


def test_smoothness_rejects_zero():
    with pytest.raises(ZeroVector):
        is_smooth_vec(L1([0, 0]))


def test_extreme_support_functionals_norm_x():
    x = L1([2, 0, -1, 0])
    fs = extreme_support_functionals(x)
    assert len(fs) == 4
    for f in fs:
        assert np.abs(f).max() == 1
        assert np.dot(f, x.entries) == norm(x)


def test_semi_inner_product_example():
    sel = SemiInnerProductSelector()
    x, y = L1([2, 0]), L1([3, 5])
    assert np.array_equal(sel(x), [1, 1])
    assert semi_inner_product(y, x, sel) == 16
    assert semi_inner_product(x, x, sel) == 4


def test_semi_inner_product_constant_on_lines():
    sel = SemiInnerProductSelector(seed=3)
    x = L1([0, 1, 0, -2])
    f = sel(x)
    assert np.array_equal(f, sel(L1(-5 * x.entries)))
    assert np.dot(f, sel.representative(x)[0]) == pytest.approx(1)


vec = st.lists(st.integers(-4, 4), min_size=2, max_size=5)


@settings(max_examples=60, deadline=None)
@given(vec, st.sampled_from([-3.0, -0.5, 2.0]))
def test_semi_inner_product_homogeneity(xs, a):
    x = L1(xs)
    if norm(x) == 0:
        return
    y = L1(np.arange(len(xs)) - 1.0)
    sel = SemiInnerProductSelector()
    assert semi_inner_product(x, x, sel) == pytest.approx(norm(x) ** 2)
    assert semi_inner_product(y, L1(a * x.entries), sel) == pytest.approx(a * semi_inner_product(y, x, sel))
    assert semi_inner_product(L1(a * y.entries), x, sel) == pytest.approx(a * semi_inner_product(y, x, sel))


@settings(max_examples=150, deadline=None)
@given(vec.flatmap(lambda xs: st.tuples(st.just(xs), st.lists(st.integers(-4, 4), min_size=len(xs),
                                                               max_size=len(xs)))),
       st.booleans())
def test_bj_agrees_with_oracle(pair, use_linf):
    xs, ys = pair
    make = LINF if use_linf else L1
    x, y = make(xs), make(ys)
    if norm(x) == 0:
        return
    assert bj_orthogonal_vec(x, y) == vector_oracle(x, y)


@settings(max_examples=60, deadline=None)
@given(vec, st.sampled_from([-2.0, 0.5, 3.0]))
def test_bj_homogeneous_in_both_arguments(xs, a):
    x = L1(xs)
    if norm(x) == 0:
        return
    y = L1(np.ones(len(xs)))
    assert bj_orthogonal_vec(x, y) == bj_orthogonal_vec(L1(a * x.entries), L1(-a * y.entries))
