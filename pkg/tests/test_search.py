# =========================================================================== #
import numpy as np
import pytest

# --------------------------------------------------------------------------- #
from hkcubes.errors import BudgetExceeded
from hkcubes.search import Move, closure, contains, decode, encode, radix

ROTATE = np.array([1, 2, 0])


def test_encode_decode():
    codes = encode(np.array([[1, 2], [0, 0], [2, 2]]), 3)
    assert codes.tolist() == [7, 0, 8]
    assert decode(codes, 3, 2).tolist() == [[1, 2], [0, 0], [2, 2]]

    assert radix(2, 63)[-1] == 2**62
    with pytest.raises(BudgetExceeded) as err:
        radix(2, 64, label="wide")
    assert err.value.label == "wide"


def test_contains():
    codes = np.array([1, 4, 9])
    assert contains(codes, [0, 1, 9, 10]).tolist() == [False, True, True, False]
    assert contains(np.array([], dtype=np.int64), [3]).tolist() == [False]


def test_closure():
    diagonal = Move(ROTATE, np.array([True, True]), "diag")
    second = Move(ROTATE, np.array([False, True]), "second")

    orbit = closure(np.array([[0, 0]]), [diagonal], 3)
    assert orbit.codes.tolist() == sorted(encode(np.array([[0, 0], [1, 1], [2, 2]]), 3))
    assert orbit.visited == 3

    everything = closure(np.array([[0, 0]]), [second, diagonal], 3)
    assert everything.visited == 9
    assert everything.codes.tolist() == list(range(9))

    # Move order does not change the result.
    again = closure(np.array([[0, 0]]), [diagonal, second], 3)
    assert np.array_equal(again.codes, everything.codes)


def test_closure_without_moves():
    result = closure(np.array([[2, 1], [2, 1]]), [], 3)
    assert result.codes.tolist() == [5]
    assert result.levels == 0


def test_closure_budget():
    moves = [
        Move(ROTATE, np.array([True, False])),
        Move(ROTATE, np.array([False, True])),
    ]
    with pytest.raises(BudgetExceeded) as err:
        closure(np.array([[0, 0]]), moves, 3, budget=4, label="pairs")

    diagnostics = err.value.diagnostics()
    assert diagnostics["label"] == "pairs"
    assert diagnostics["budget"] == 4
    assert diagnostics["visited"] > 4
