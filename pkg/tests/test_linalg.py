import numpy as np
import pytest

from sumsetvc import FieldMatrix, ParameterError, rank
from sumsetvc.linalg import SpanTrackerGF2, SpanTrackerModP, pack_gf2_rows, rank_gf2_packed
from sumsetvc.sampling import SplitMix64


def random_matrix(p, rows, cols, gen):
    return FieldMatrix(
        p, np.array([[gen.below(p) for _ in range(cols)] for _ in range(rows)], dtype=np.int64)
    )


def test_rank_examples():
    for p in (2, 3, 5):
        for k in (1, 3, 6):
            assert rank(FieldMatrix.identity(p, k)) == k
    assert rank(FieldMatrix(2, np.ones((4, 4), dtype=np.int64))) == 1
    assert rank(FieldMatrix.from_rows(5, [[1, 2], [2, 4]])) == 1


def test_rank_zero_and_rectangular():
    assert rank(FieldMatrix(3, np.zeros((3, 5), dtype=np.int64))) == 0
    m = FieldMatrix.from_rows(2, [[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    assert rank(m) == 2  # third row is the sum of the first two


def test_matrix_validation():
    with pytest.raises(ParameterError):
        FieldMatrix(6, np.zeros((2, 2), dtype=np.int64))
    with pytest.raises(ParameterError):
        FieldMatrix(3, np.zeros(4, dtype=np.int64))
    # entries reduce mod p on construction
    m = FieldMatrix.from_rows(3, [[4, -1]])
    assert m.array.tolist() == [[1, 2]]


def test_packed_path_requires_p2():
    m = FieldMatrix.identity(3, 2)
    with pytest.raises(ParameterError):
        rank(m, path="packed")
    with pytest.raises(ParameterError):
        rank(m, path="nonsense")


def test_packed_equals_generic_on_seeded_matrices():
    gen = SplitMix64(99)
    for _ in range(100):
        rows = 1 + gen.below(24)
        cols = 1 + gen.below(24)
        m = random_matrix(2, rows, cols, gen)
        assert rank(m, path="packed") == rank(m, path="generic")


def test_rank_invariant_under_row_permutation_and_transpose():
    for p in (2, 3, 5):
        gen = SplitMix64(1000 + p)
        for _ in range(100):
            rows = 1 + gen.below(10)
            cols = 1 + gen.below(10)
            m = random_matrix(p, rows, cols, gen)
            base = rank(m)
            perm = np.array(
                sorted(range(rows), key=lambda i: gen.next_uint64()), dtype=np.int64
            )
            assert rank(FieldMatrix(p, m.array[perm])) == base
            assert rank(FieldMatrix(p, m.array.T)) == base


def test_pack_gf2_rows_round_trip():
    m = FieldMatrix.from_rows(2, [[1, 0, 1], [0, 0, 1]])
    assert pack_gf2_rows(m) == [0b101, 0b100]
    assert rank_gf2_packed([0b101, 0b100]) == 2
    assert rank_gf2_packed([0b101, 0b101, 0b000]) == 1


def test_span_tracker_gf2_membership():
    tracker = SpanTrackerGF2(4)
    assert tracker.add(0b0011)
    assert tracker.add(0b0101)
    assert not tracker.add(0b0110)  # xor of the first two
    assert tracker.rank == 2
    assert tracker.contains(0b0000)
    assert tracker.contains(0b0110)
    assert not tracker.contains(0b1000)


def test_span_tracker_modp_matches_matrix_rank():
    gen = SplitMix64(7)
    for p in (3, 5):
        for _ in range(25):
            rows = 1 + gen.below(8)
            cols = 1 + gen.below(8)
            m = random_matrix(p, rows, cols, gen)
            tracker = SpanTrackerModP(p, rows)
            for j in range(cols):
                tracker.add(m.array[:, j])
            assert tracker.rank == rank(m)
            # every column reduces to zero once the span is built
            for j in range(cols):
                assert tracker.contains(m.array[:, j])
