import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjgeom import DimensionError, ParseError
from bjgeom.matrixio import format_matrix, parse_matrix, parse_matrix_text, write_matrix
from bjgeom.vectors import Field


def test_parse_real():
    T = parse_matrix_text("1 4 real\n0.5 0.5 0 0\n")
    assert T.shape == (1, 4) and T.field is Field.REAL
    assert T.entries.tolist() == [[0.5, 0.5, 0, 0]]


def test_parse_complex():
    T = parse_matrix_text("2 2 complex\n1+0i 0+1i\n0+0i 1+0i\n")
    assert T.field is Field.COMPLEX
    assert T.entries.tolist() == [[1, 1j], [0, 1]]


def test_parse_complex_short_forms():
    T = parse_matrix_text("1 4 complex\n-i 2i 3 -1.5e-1-2i\n")
    assert T.entries.tolist() == [[-1j, 2j, 3, -0.15 - 2j]]


def test_comments_and_blank_lines():
    T = parse_matrix_text("# header\n\n2 1 real  # m n field\n1\n\n-2\n")
    assert T.entries.tolist() == [[1], [-2]]


@pytest.mark.parametrize("text, line", [
    ("2 2 real\n1 2 3\n4 5\n", 2),
    ("2 2 real\n1 2\n", None),
    ("1 1 real\nabc\n", 2),
    ("1 1 quaternion\n1\n", 1),
    ("1 1 real\n1+2i\n", 2),
    ("1 1 real\nnan\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_matrix_text(text)
    if line is not None:
        assert info.value.line == line


def test_dimension_limits():
    with pytest.raises(DimensionError):
        parse_matrix_text("17 1 real\n" + "1\n" * 17)
    with pytest.raises(DimensionError):
        parse_matrix_text("0 1 real\n")


def test_file_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    A = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    path = tmp_path / "a.mat"
    write_matrix(A, path)
    assert np.array_equal(parse_matrix(path).entries, A)


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_round_trip_is_bit_exact(m, n, data):
    vals = data.draw(st.lists(finite, min_size=m * n, max_size=m * n))
    A = np.array(vals).reshape(m, n)
    B = parse_matrix_text(format_matrix(A)).entries
    assert np.array_equal(A, B)
    assert np.array_equal(np.signbit(A), np.signbit(B))
