import numpy as np
import pytest

from bjgeom import (OperatorMatrix, PreconditionViolated, ZeroOperator, check_symmetry_pair,
                    left_symmetry_witness, op_norm, right_symmetry_witness)
from bjgeom.oracle import operator_oracle
from bjgeom.symmetry import Direction, Path, verify_pair

E = OperatorMatrix


def _assert_right(rep):
    T, S = rep.subject, rep.witness
    assert rep.direction is Direction.RIGHT and rep.verified
    assert operator_oracle(S, T) and not operator_oracle(T, S)
    assert check_symmetry_pair(S, T).classification == "left-only"
    assert check_symmetry_pair(T, S).classification == "right-only"


def test_right_witness_single_row():
    _assert_right(right_symmetry_witness(E([[0.5, 0.5, 0, 0]])))


def test_right_witness_two_rows():
    rep = right_symmetry_witness(E([[0.5, 0.5, 0, 0], [0, 0, 0, 0]]))
    _assert_right(rep)
    assert rep.to_dict()["direction"] == "RightViolation"


def test_right_witness_aligned_delta_schedule():
    T = E([[0.25, 0.25, 0, 0], [0, 0, 0.25, 0.25]])
    rep = right_symmetry_witness(T)
    _assert_right(rep)
    assert rep.construction_path is Path.ALIGNED
    schedule = rep.parameters["aligned"]["schedule"]
    deltas = [d for d, _ in schedule]
    assert deltas == sorted(deltas, reverse=True)
    assert schedule[-1][1] and not any(ok for _, ok in schedule[:-1])


def test_right_witness_preconditions():
    with pytest.raises(PreconditionViolated):
        right_symmetry_witness(E([[1, 0, 0, 0]]))
    with pytest.raises(PreconditionViolated):
        right_symmetry_witness(E([[0.5, 0.5, 0]]))
    with pytest.raises(PreconditionViolated):
        right_symmetry_witness(E([[1, 1, 0, 0]]))
    with pytest.raises(ZeroOperator):
        right_symmetry_witness(E(np.zeros((1, 4))))


@pytest.mark.parametrize("seed", range(8))
def test_right_witness_random(seed):
    rng = np.random.default_rng(seed)
    A = np.zeros((2, 5))
    A[:, :3] = rng.integers(-2, 3, size=(2, 3))
    if not A.any():
        A[0, 0] = 1
    A /= op_norm(E(A))
    _assert_right(right_symmetry_witness(E(A)))


def test_left_witness_everything_norming():
    rep = left_symmetry_witness(E([[1, 0], [0, 0]]))
    assert rep.verified and rep.direction is Direction.LEFT
    assert rep.parameters["branch"] == "two-norming-points"
    assert check_symmetry_pair(rep.subject, rep.witness).classification == "left-only"


def test_left_witness_zero_coordinate_branch():
    T = E([[1, 0.5], [0, 0]])
    rep = left_symmetry_witness(T)
    assert rep.verified
    assert rep.parameters["branch"] == "zero-coordinate"
    assert operator_oracle(T, rep.witness) and not operator_oracle(rep.witness, T)


def test_left_witness_preconditions():
    with pytest.raises(PreconditionViolated):
        left_symmetry_witness(E([[1, 0.5], [0.1, 0]]))
    with pytest.raises(ZeroOperator):
        left_symmetry_witness(E([[0, 0]]))
    with pytest.raises(PreconditionViolated):
        left_symmetry_witness(E([[1j, 0], [0, 0]]))


def test_check_symmetry_pair():
    T = E([[1, 0], [0, 0]])
    with pytest.raises(ZeroOperator):
        check_symmetry_pair(T, E(np.zeros((2, 2))))
    assert check_symmetry_pair(T, T).classification == "none"
    assert check_symmetry_pair(T, E([[0, 1], [0, 0]])).classification == "mutual"


def test_verify_pair_reports_failure():
    ver = verify_pair(E([[1, 0], [0, 0]]), E([[1, 0], [0, 0]]), Direction.LEFT)
    assert not ver["exact_ok"] and not ver["oracle_ok"]
