import numpy as np
import pytest

from bjgeom import (NotNormalized, OperatorMatrix, WrongVerdict, decompose_midpoint,
                    is_extreme_contraction, op_norm)
from bjgeom.extremality import Verdict

E = OperatorMatrix


def _midpoint_ok(cert, T):
    t1, t2 = decompose_midpoint(cert, T)
    assert np.allclose((t1.entries + t2.entries) / 2, T.entries, atol=1e-14)
    assert op_norm(t1) <= 1 + 1e-9 and op_norm(t2) <= 1 + 1e-9
    assert not np.allclose(t1.entries, t2.entries)


def test_fixtures():
    assert is_extreme_contraction(E([[1, 0], [0, 0]])).verdict is Verdict.EXTREME
    T = E([[0.5, 0], [0, 0.5]])
    cert = is_extreme_contraction(T)
    assert cert.verdict is Verdict.NOT_EXTREME
    assert cert.perturbation.entries.tolist() == [[0.5, 0], [0, -0.5]]
    t1, t2 = decompose_midpoint(cert, T)
    assert t1.entries.tolist() == [[1, 0], [0, 0]]
    assert t2.entries.tolist() == [[0, 0], [0, 1]]
    assert is_extreme_contraction(E([[0.5, 0.5, 0, 0]])).verdict is Verdict.NOT_EXTREME


def test_exact_mode_agrees():
    for A in ([[1, 0], [0, 0]], [[0.5, 0], [0, 0.5]], [[0.5, 0.5, 0, 0]]):
        assert is_extreme_contraction(E(A), exact=True).verdict == is_extreme_contraction(E(A)).verdict


def test_errors():
    with pytest.raises(NotNormalized):
        is_extreme_contraction(E([[2, 0], [0, 0]]))
    with pytest.raises(WrongVerdict):
        decompose_midpoint(is_extreme_contraction(E([[1, 0], [0, 0]])), E([[1, 0], [0, 0]]))


def test_complex_is_inconclusive():
    cert = is_extreme_contraction(E([[1j, 0], [0, 0]]))
    assert cert.verdict is Verdict.INCONCLUSIVE_COMPLEX
    assert cert.to_dict()["verdict"] == "Inconclusive-complex"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_row_ground_truth(n):
    # one row means the unit ball of l1^n, whose vertices are +-e_k
    for k in range(n):
        row = np.zeros(n)
        row[k] = -1.0
        assert is_extreme_contraction(E([row])).verdict is Verdict.EXTREME
    if n >= 2:
        row = np.full(n, 1.0 / n)
        cert = is_extreme_contraction(E([row]))
        assert cert.verdict is Verdict.NOT_EXTREME
        _midpoint_ok(cert, E([row]))


def _signed_perm(rng, k):
    P = np.eye(k)[rng.permutation(k)]
    return P * rng.choice([-1.0, 1.0], size=k)


@pytest.mark.parametrize("seed", range(15))
def test_invariance_under_isometries(seed):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    A = rng.integers(-2, 3, size=(m, n)).astype(float)
    if not A.any():
        A[0, 0] = 1
    A /= op_norm(E(A))
    base = is_extreme_contraction(E(A)).verdict
    moved = _signed_perm(rng, m) @ A @ _signed_perm(rng, n)
    assert is_extreme_contraction(E(moved)).verdict is base
    assert is_extreme_contraction(E(-A)).verdict is base
    cert = is_extreme_contraction(E(A))
    if cert.verdict is Verdict.NOT_EXTREME:
        _midpoint_ok(cert, E(A))
