import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isogrus.combinatorics import (
    InvalidTilingError,
    InvalidWeightError,
    TilePartition,
    Weight,
    addable_removable,
    bruhat_leq,
    empty_partition,
    enumerate_tilepartitions,
    enumerate_weights,
    tile_content,
    tilepartition_to_weight,
    weight_to_tilepartition,
)


def weights(max_n=8):
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.sampled_from(enumerate_weights(n))
    )


class TestWeights:
    def test_counts(self):
        for n in range(1, 13):
            assert len(enumerate_weights(n)) == 2 ** (n - 1)

    def test_rejects_bad_rank(self):
        with pytest.raises(InvalidWeightError):
            Weight("")
        with pytest.raises(InvalidWeightError):
            enumerate_weights(0)

    def test_rejects_odd_ups(self):
        with pytest.raises(InvalidWeightError):
            Weight("ud" * 3 + "u")
        with pytest.raises(InvalidWeightError):
            Weight("u")

    def test_rejects_bad_symbols(self):
        with pytest.raises(InvalidWeightError):
            Weight("uxd")

    def test_enumeration_order_and_content(self):
        assert [w.arrows for w in enumerate_weights(2)] == ["dd", "uu"]
        assert [w.arrows for w in enumerate_weights(3)] == ["ddd", "duu", "udu", "uud"]

    def test_json_round_trip(self):
        w = Weight("uudd")
        assert Weight.from_json(w.to_json()) == w


class TestBijection:
    def test_identity_is_empty(self):
        for n in range(1, 9):
            assert weight_to_tilepartition(Weight("d" * n)) == empty_partition(n)
            assert tilepartition_to_weight(empty_partition(n)) == Weight("d" * n)

    def test_single_tile(self):
        assert weight_to_tilepartition(Weight("uu")) == TilePartition(2, (1,))
        assert tilepartition_to_weight(TilePartition(2, (1,))) == Weight("uu")

    def test_long_staircase_example(self):
        # 21-tile shape built from the word with seven ascending runs
        t = TilePartition(8, (1, 2, 3, 4, 5, 3, 3))
        assert tilepartition_to_weight(t) == Weight("uuudduuu")
        assert weight_to_tilepartition(Weight("uuudduuud")) == TilePartition(
            9, (1, 2, 3, 4, 5, 3, 3)
        )

    def test_rank7_example_round_trip(self):
        t = TilePartition(7, (1, 2, 1, 1))
        w = tilepartition_to_weight(t)
        assert w == Weight("duddudd")
        assert weight_to_tilepartition(w) == t

    @settings(max_examples=200, deadline=None)
    @given(weights(10))
    def test_round_trip(self, w):
        assert tilepartition_to_weight(weight_to_tilepartition(w)) == w

    def test_full_round_trip_small(self):
        for n in range(1, 9):
            seen = set()
            for w in enumerate_weights(n):
                t = weight_to_tilepartition(w)
                assert tilepartition_to_weight(t) == w
                seen.add(t)
            assert len(seen) == 2 ** (n - 1)


class TestContents:
    def test_diagonal_alternation(self):
        assert tile_content(1, 1) == 0
        assert tile_content(2, 2) == 1
        assert tile_content(3, 3) == 0
        assert tile_content(4, 4) == 1

    def test_off_diagonal(self):
        assert tile_content(2, 1) == 2
        assert tile_content(7, 3) == 5
        assert tile_content(9, 1) == 9

    def test_outside_region(self):
        with pytest.raises(InvalidTilingError):
            tile_content(2, 3)

    def test_content_range(self):
        for n in range(1, 9):
            for t in enumerate_tilepartitions(n):
                for (r, c) in t.tiles():
                    assert 0 <= tile_content(r, c) <= n - 1


class TestAddRemove:
    def test_empty_rank3(self):
        add, rem = addable_removable(empty_partition(3))
        assert add == {(1, 1)} and rem == set()

    def test_single_tile_rank3(self):
        add, rem = addable_removable(TilePartition(3, (1,)))
        assert rem == {(1, 1)} and add == {(2, 1)}

    def test_per_content_uniqueness(self):
        for t in enumerate_tilepartitions(7):
            add, rem = addable_removable(t)
            for group in (add, rem):
                contents = [tile_content(r, c) for (r, c) in group]
                assert len(contents) == len(set(contents))

    def test_add_remove_inverse(self):
        for t in enumerate_tilepartitions(6):
            add, rem = addable_removable(t)
            for (r, c) in rem:
                rows = list(t.rows)
                rows[r - 1] -= 1
                while rows and rows[-1] == 0:
                    rows.pop()
                smaller = TilePartition(t.n, tuple(rows))
                back, _ = addable_removable(smaller)
                assert (r, c) in back


class TestBruhat:
    def test_empty_below_everything(self):
        for t in enumerate_tilepartitions(5):
            assert bruhat_leq(empty_partition(5), t)

    def test_containment_example(self):
        assert bruhat_leq(TilePartition(3, (1,)), TilePartition(3, (1, 2)))
        assert not bruhat_leq(TilePartition(3, (1, 2)), TilePartition(3, (1,)))

    def test_rank_mismatch(self):
        with pytest.raises(InvalidTilingError):
            bruhat_leq(empty_partition(3), empty_partition(4))

    def test_partial_order_axioms(self):
        ts = enumerate_tilepartitions(6)
        for a in ts:
            assert bruhat_leq(a, a)
        import random

        rng = random.Random(1)
        for _ in range(400):
            a, b, c = rng.choice(ts), rng.choice(ts), rng.choice(ts)
            if bruhat_leq(a, b) and bruhat_leq(b, a):
                assert a == b
            if bruhat_leq(a, b) and bruhat_leq(b, c):
                assert bruhat_leq(a, c)

    def test_length_monotone_on_covers(self):
        for t in enumerate_tilepartitions(6):
            _, rem = addable_removable(t)
            for (r, c) in rem:
                rows = list(t.rows)
                rows[r - 1] -= 1
                while rows and rows[-1] == 0:
                    rows.pop()
                smaller = TilePartition(t.n, tuple(rows))
                assert bruhat_leq(smaller, t)
                assert smaller.length == t.length - 1


class TestValidation:
    def test_unsupported_rows_rejected(self):
        with pytest.raises(InvalidTilingError):
            TilePartition(5, (1, 2, 2, 4))  # row 4 overhangs row 3

    def test_row_too_long(self):
        with pytest.raises(InvalidTilingError):
            TilePartition(4, (2,))

    def test_json_round_trip(self):
        t = TilePartition(7, (1, 2, 1, 1))
        assert TilePartition.from_json(t.to_json()) == t
