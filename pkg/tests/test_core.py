"""Domain types, partition algebra, and serialization."""

import numpy as np
import pytest

from tailclust import (
    ChiMatrix,
    CoverageError,
    DimensionMismatch,
    EmptyGroupError,
    IndexOutOfRange,
    InvalidParam,
    MaximaMatrix,
    OverlapError,
    Partition,
    PseudoObs,
    SeriesMatrix,
    canonicalize,
    is_subpartition,
    partition_from_json,
    partition_to_json,
    partitions_equal,
)
from tailclust.core import MalformedInput

from conftest import random_partition


# ---------------------------------------------------------------------------
# matrix types


def test_series_defaults_and_shape():
    s = SeriesMatrix(np.arange(6.0).reshape(3, 2))
    assert s.n == 3 and s.d == 2
    assert s.names == ("v0", "v1")


def test_series_custom_names():
    s = SeriesMatrix(np.ones((2, 2)), names=("left", "right"))
    assert s.names == ("left", "right")


def test_series_rejects_bad_input():
    with pytest.raises(InvalidParam):
        SeriesMatrix(np.array([1.0, 2.0]))  # 1-D
    with pytest.raises(InvalidParam):
        SeriesMatrix(np.array([[np.nan, 1.0]]))
    with pytest.raises(InvalidParam):
        SeriesMatrix(np.array([[np.inf, 1.0]]))
    with pytest.raises(InvalidParam):
        SeriesMatrix(np.ones((2, 2)), names=("a", "a"))
    with pytest.raises(DimensionMismatch):
        SeriesMatrix(np.ones((2, 2)), names=("a",))
    with pytest.raises(InvalidParam):
        SeriesMatrix(np.empty((0, 2)))


def test_series_values_frozen_and_decoupled():
    raw = np.ones((2, 2))
    s = SeriesMatrix(raw)
    raw[0, 0] = 7.0  # construction copies, later writes must not leak in
    assert s.values[0, 0] == 1.0
    with pytest.raises(ValueError):
        s.values[0, 0] = 3.0


def test_maxima_row_count_must_match():
    MaximaMatrix(np.ones((3, 2)), block_length=2, source_length=7)
    with pytest.raises(DimensionMismatch):
        MaximaMatrix(np.ones((4, 2)), block_length=2, source_length=7)


def test_maxima_block_larger_than_source():
    from tailclust import BlockTooLarge

    with pytest.raises(BlockTooLarge):
        MaximaMatrix(np.ones((1, 1)), block_length=9, source_length=5)


def test_pseudo_obs_accepts_rank_grid_and_ties():
    PseudoObs(np.array([[1.0, 1.0], [1 / 3, 1.0], [2 / 3, 1 / 3]]))


def test_pseudo_obs_rejects_out_of_range():
    with pytest.raises(InvalidParam):
        PseudoObs(np.array([[0.0], [0.5], [1.0]]))
    with pytest.raises(InvalidParam):
        PseudoObs(np.array([[0.5], [1.0], [1.5]]))


def test_pseudo_obs_rejects_tie_free_non_grid():
    # distinct values that are not {1/3, 2/3, 1} cannot be scaled ranks
    with pytest.raises(InvalidParam):
        PseudoObs(np.array([[0.2], [0.5], [1.0]]))


def test_chi_matrix_validation():
    good = np.array([[1.0, 0.3], [0.3, 1.0]])
    ChiMatrix(good, k=10)
    with pytest.raises(InvalidParam):
        ChiMatrix(np.array([[1.0, 0.3], [0.2, 1.0]]), k=10)  # asymmetric
    with pytest.raises(InvalidParam):
        ChiMatrix(np.array([[0.9, 0.3], [0.3, 1.0]]), k=10)  # diagonal
    with pytest.raises(InvalidParam):
        ChiMatrix(np.array([[1.0, 1.2], [1.2, 1.0]]), k=10)  # above 1
    with pytest.raises(InvalidParam):
        ChiMatrix(np.array([[1.0, -18.0], [-18.0, 1.0]]), k=10)  # below 3 - 2k
    with pytest.raises(InvalidParam):
        ChiMatrix(good, k=0)


# ---------------------------------------------------------------------------
# partitions


def test_canonicalize_sorts_members_and_groups():
    part = canonicalize([[1, 0], [2]], d=3)
    assert part.groups == ((0, 1), (2,))


def test_canonicalize_singletons_identity():
    part = canonicalize([[0], [1], [2]], d=3)
    assert part.groups == ((0,), (1,), (2,))


def test_canonicalize_errors():
    with pytest.raises(OverlapError):
        canonicalize([[0, 1], [1, 2]], d=3)
    with pytest.raises(CoverageError):
        canonicalize([[0], [2]], d=3)
    with pytest.raises(EmptyGroupError):
        canonicalize([[0, 1], []], d=2)
    with pytest.raises(IndexOutOfRange):
        canonicalize([[0, 5]], d=2)
    with pytest.raises(IndexOutOfRange):
        canonicalize([[-1, 0]], d=1)


def test_canonicalize_idempotent(rng):
    for _ in range(50):
        part = random_partition(rng, int(rng.integers(1, 9)))
        again = canonicalize(part.groups, part.d)
        assert again.groups == part.groups


def test_partition_constructor_enforces_canonical_form():
    with pytest.raises(InvalidParam):
        Partition(((1, 0),))  # members unsorted
    with pytest.raises(InvalidParam):
        Partition(((2,), (0, 1)))  # groups out of order
    with pytest.raises(OverlapError):
        Partition(((0, 1), (1, 2)))
    with pytest.raises(CoverageError):
        Partition(((0,), (2,)))
    with pytest.raises(EmptyGroupError):
        Partition(())
    with pytest.raises(InvalidParam):
        Partition(((0, True),))  # bools are not indices


def test_partition_properties_and_labels():
    part = Partition(((0, 2), (1,)))
    assert part.d == 3
    assert part.n_groups == 2
    assert part.to_labels().tolist() == [0, 1, 0]


def test_partitions_equal_examples():
    a = canonicalize([[0, 1], [2]], 3)
    b = canonicalize([[2], [1, 0]], 3)
    c = canonicalize([[0], [1, 2]], 3)
    assert partitions_equal(a, b)
    assert not partitions_equal(a, c)
    assert partitions_equal(canonicalize([[0]], 1), canonicalize([[0]], 1))
    with pytest.raises(DimensionMismatch):
        partitions_equal(a, canonicalize([[0, 1]], 2))


def test_partitions_equal_matches_frozenset_comparison(rng):
    for _ in range(200):
        d = int(rng.integers(1, 9))
        a, b = random_partition(rng, d), random_partition(rng, d)
        brute = {frozenset(g) for g in a.groups} == {frozenset(g) for g in b.groups}
        assert partitions_equal(a, b) == brute


def test_is_subpartition_examples():
    singles = canonicalize([[i] for i in range(3)], 3)
    coarse = canonicalize([[0, 1], [2]], 3)
    assert is_subpartition(singles, coarse)
    assert not is_subpartition(canonicalize([[0, 1, 2]], 3), coarse)
    assert is_subpartition(
        canonicalize([[0, 1], [2], [3]], 4), canonicalize([[0, 1, 2], [3]], 4)
    )
    with pytest.raises(DimensionMismatch):
        is_subpartition(singles, canonicalize([[0]], 1))


def _brute_subpartition(s, o):
    return all(any(set(g) <= set(h) for h in o.groups) for g in s.groups)


def test_is_subpartition_reflexive_and_matches_brute_force(rng):
    for _ in range(200):
        d = int(rng.integers(1, 8))
        s, o = random_partition(rng, d), random_partition(rng, d)
        assert is_subpartition(s, s)
        assert is_subpartition(s, o) == _brute_subpartition(s, o)


def test_is_subpartition_transitive(rng):
    hits = 0
    for _ in range(500):
        d = int(rng.integers(2, 7))
        a, b, c = (random_partition(rng, d) for _ in range(3))
        if is_subpartition(a, b) and is_subpartition(b, c):
            hits += 1
            assert is_subpartition(a, c)
    assert hits > 0  # the property was actually exercised


def test_intersection_refines_both(rng):
    # common refinement via equivalence classes of paired labels
    for _ in range(100):
        d = int(rng.integers(1, 8))
        a, b = random_partition(rng, d), random_partition(rng, d)
        la, lb = a.to_labels(), b.to_labels()
        groups = {}
        for i in range(d):
            groups.setdefault((la[i], lb[i]), []).append(i)
        meet = canonicalize(groups.values(), d)
        assert is_subpartition(meet, a) and is_subpartition(meet, b)


# ---------------------------------------------------------------------------
# JSON round trip


def test_partition_json_round_trip():
    names = ("alpha", "beta", "gamma")
    part = canonicalize([[0, 2], [1]], 3)
    text = partition_to_json(part, names)
    assert partitions_equal(partition_from_json(text, names), part)
    assert '"clusters"' in text


def test_partition_json_name_order_is_canonical():
    text = partition_to_json(canonicalize([[2], [0, 1]], 3), ("a", "b", "c"))
    assert text.index('"a"') < text.index('"c"')


def test_partition_from_json_errors():
    names = ("a", "b")
    with pytest.raises(MalformedInput):
        partition_from_json("{not json", names)
    with pytest.raises(MalformedInput):
        partition_from_json('{"wrong": []}', names)
    with pytest.raises(MalformedInput):
        partition_from_json('{"clusters": [["a", "zzz"]]}', names)
    with pytest.raises(DimensionMismatch):
        partition_to_json(canonicalize([[0, 1]], 2), ("a",))


def test_partition_json_rejects_non_partitions():
    names = ("a", "b")
    with pytest.raises(OverlapError):
        partition_from_json('{"clusters": [["a", "b"], ["b"]]}', names)
    with pytest.raises(CoverageError):
        partition_from_json('{"clusters": [["a"]]}', names)
