import math

import numpy as np
import pytest

from bjgeom import (BudgetExhausted, NotNormalized, OperatorMatrix, VectorSystem, alternating_ascent,
                    bilinear_objective, lower_bound)
from bjgeom.grothendieck import extreme_pool, sign_pool
from bjgeom.operators import op_norm

H = np.array([[1.0, 1.0], [1.0, -1.0]]) / 2


def test_objective_examples():
    assert bilinear_objective(OperatorMatrix([[1.0]]), VectorSystem([[1, 0]], [[1, 0]])) == 1
    assert bilinear_objective(OperatorMatrix([[1.0]]), VectorSystem([[1, 0]], [[0, 1]])) == 0
    c = math.sqrt(0.5)
    sys = VectorSystem([[1, 0], [0, 1]], [[c, c], [c, -c]])
    assert bilinear_objective(OperatorMatrix(H), sys) == pytest.approx(math.sqrt(2), abs=1e-15)


def test_objective_bounded_by_norm_for_parallel_vectors():
    # one-dimensional systems are sign choices, so the value is at most ||T||
    rng = np.random.default_rng(0)
    for _ in range(20):
        A = rng.normal(size=(3, 3))
        A /= op_norm(A)
        sys = VectorSystem(rng.choice([-1.0, 1.0], size=(3, 1)), rng.choice([-1.0, 1.0], size=(3, 1)))
        assert bilinear_objective(A, sys) <= 1 + 1e-12


def test_system_validation():
    with pytest.raises(ValueError):
        VectorSystem([[1, 1]], [[1, 0]])
    with pytest.raises(ValueError):
        VectorSystem([[1, 0]], [[1, 0, 0]])
    with pytest.raises(NotNormalized):
        bilinear_objective(OperatorMatrix([[2.0]]), VectorSystem([[1]], [[1]]))


def test_ascent_trace_is_monotone():
    trace = []
    value, sys = alternating_ascent(H, 4, seed=3, trace=trace)
    assert all(b >= a - 1e-12 for a, b in zip(trace, trace[1:]))
    assert value == pytest.approx(math.sqrt(2), abs=1e-6)
    assert value == pytest.approx(bilinear_objective(H, sys), abs=1e-15)


def test_ascent_is_deterministic():
    a = alternating_ascent(H, 3, seed=11)
    b = alternating_ascent(H, 3, seed=11)
    assert a[0] == b[0] and np.array_equal(a[1].X, b[1].X)


def test_sign_pool():
    pool = sign_pool(2, 2)
    assert len(pool) == 2
    assert all(op_norm(S) == pytest.approx(1) for S in pool)
    assert all(np.all(S[0] > 0) and np.all(S[:, 0] > 0) for S in pool)
    assert len(sign_pool(3, 3)) == 16


def test_extreme_pool_is_certified_and_distinct():
    pool = extreme_pool(2, 3, 6, np.random.default_rng(0))
    keys = {np.round(A, 12).tobytes() for A in pool}
    assert len(keys) == len(pool) > 0


def test_lower_bound_small_cases():
    assert lower_bound(1, 1, budget=64).best_value == 1.0
    r = lower_bound(2, 2, budget=256, seed=7)
    assert abs(r.best_value - math.sqrt(2)) <= 1e-3
    assert not r.budget_exhausted


def test_lower_bound_pool_monotone():
    small = lower_bound(2, 3, budget=128, seed=1)
    big = lower_bound(2, 3, budget=128, seed=1,
                      extra_operators=[(small.best_operator, small.best_system)])
    assert big.best_value >= small.best_value - 1e-12


def test_lower_bound_embedding_monotone():
    r = lower_bound(2, 2, budget=256, seed=0)
    A = np.zeros((3, 3))
    A[:2, :2] = r.best_operator.entries
    up = lower_bound(3, 3, budget=64, seed=0, extra_operators=[(A, r.best_system)])
    assert up.best_value >= r.best_value - 1e-12


def test_lower_bound_determinism_and_workers():
    a = lower_bound(2, 3, budget=128, seed=5)
    b = lower_bound(2, 3, budget=128, seed=5, workers=2)
    assert a.to_dict() == b.to_dict()


def test_budget_exhausted():
    r = lower_bound(4, 4, budget=32, seed=0)
    assert r.budget_exhausted
    with pytest.raises(BudgetExhausted) as info:
        lower_bound(4, 4, budget=32, seed=0, strict=True)
    assert info.value.result.best_value == r.best_value
