import itertools
from collections import Counter
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiedmonoids.errors import (
    BoundExceededError,
    GroundMismatchError,
    MalformedPartitionError,
)
from tiedmonoids.setpartitions import (
    CountTable,
    DoublePartition,
    SetPartition,
    atom,
    bell,
    canonicalize,
    enumerate_linear,
    enumerate_partitions,
    fitzgerald_decompose,
    is_linear,
    stirling2,
)


def rgs_strategy(max_m=8):
    def build(draw):
        m = draw(st.integers(1, max_m))
        rgs = [0]
        top = 0
        for _ in range(m - 1):
            v = draw(st.integers(0, top + 1))
            rgs.append(v)
            top = max(top, v)
        return SetPartition(m, tuple(rgs))

    return st.composite(build)()


class TestCanonicalize:
    def test_min_element_numbering(self):
        p = canonicalize([{2, 5}, {1}, {3, 4}], 5)
        assert p.rgs == (0, 1, 2, 2, 1)

    def test_independent_of_input_order(self):
        a = canonicalize([[3, 4], [5, 2], [1]], 5)
        b = canonicalize([{1}, {2, 5}, {4, 3}], 5)
        assert a == b

    def test_unity(self):
        assert canonicalize([{k} for k in range(1, 6)], 5) == SetPartition.unity(5)

    def test_linear_graph_example(self):
        p = canonicalize([{1, 4}, {2, 5, 7}, {3}, {6}], 7)
        assert p.to_text() == "1,4|2,5,7|3|6"

    def test_errors(self):
        with pytest.raises(MalformedPartitionError):
            canonicalize([{1, 2}, {2, 3}], 3)  # overlap
        with pytest.raises(MalformedPartitionError):
            canonicalize([{1, 2}], 3)  # gap
        with pytest.raises(MalformedPartitionError):
            canonicalize([{1, 4}], 3)  # out of range
        with pytest.raises(MalformedPartitionError):
            canonicalize([], 0)

    def test_decode_recanonicalize_roundtrip(self):
        for p in enumerate_partitions(5):
            assert canonicalize(p.blocks(), 5) == p


class TestJoin:
    def test_transitive_closure(self):
        a = canonicalize([{1, 2}, {3}], 3)
        b = canonicalize([{2, 3}, {1}], 3)
        assert a.join(b) == canonicalize([{1, 2, 3}], 3)

    def test_unity_neutral(self):
        one = SetPartition.unity(4)
        for p in enumerate_partitions(4):
            assert p.join(one) == p

    def test_atom_absorption(self):
        # joining the 1-2 atom with the 2-3 atom equals joining it with 1-3
        m = 4
        lhs = atom(m, (1, 2)) * atom(m, (2, 3))
        rhs = atom(m, (1, 2)) * atom(m, (1, 3))
        assert lhs == rhs == atom(m, (2, 3)) * atom(m, (1, 3))

    def test_mismatch(self):
        with pytest.raises(GroundMismatchError):
            SetPartition.unity(3).join(SetPartition.unity(4))

    def test_laws_exhaustive_small(self):
        parts = list(enumerate_partitions(4))
        for p, q in itertools.product(parts, repeat=2):
            assert p * q == q * p
        for p, q, r in itertools.islice(itertools.product(parts, repeat=3), 0, None):
            assert (p * q) * r == p * (q * r)
        for p in parts:
            assert p * p == p

    @settings(max_examples=150, deadline=None)
    @given(rgs_strategy(), rgs_strategy(), rgs_strategy())
    def test_laws_random(self, p, q, r):
        m = max(p.m, q.m, r.m)

        def pad(x):
            return SetPartition(m, x.rgs + tuple(range(x.num_blocks, x.num_blocks + m - x.m)))

        p, q, r = pad(p), pad(q), pad(r)
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * p == p


class TestFinerThan:
    def test_unity_finest(self):
        one = SetPartition.unity(4)
        for p in enumerate_partitions(4):
            assert one.finer_than(p)

    def test_basic(self):
        assert canonicalize([{1, 2}, {3}], 3).finer_than(canonicalize([{1, 2, 3}], 3))

    def test_equivalence_with_join(self):
        parts = list(enumerate_partitions(5))
        for p, q in itertools.product(parts, repeat=2):
            assert p.finer_than(q) == (p * q == q)

    def test_partial_order(self):
        parts = list(enumerate_partitions(4))
        for p in parts:
            assert p.finer_than(p)
        for p, q in itertools.combinations(parts, 2):
            assert not (p.finer_than(q) and q.finer_than(p))
        finer = {
            (i, j)
            for i, p in enumerate(parts)
            for j, q in enumerate(parts)
            if p.finer_than(q)
        }
        for i, j in finer:
            for k in range(len(parts)):
                if (j, k) in finer:
                    assert (i, k) in finer


class TestAtom:
    def test_pair(self):
        assert atom(4, (1, 3)).to_text() == "1,3|2|4"

    def test_singleton_is_unity(self):
        assert atom(5, (3,)) == SetPartition.unity(5)

    def test_full_block(self):
        assert atom(3, (1, 2, 3)) == canonicalize([{1, 2, 3}], 3)

    def test_fitzgerald_relations_all_indices(self):
        # idempotence, commutation and the absorption law for pair atoms
        m = 6
        pairs = list(itertools.combinations(range(1, m + 1), 2))
        for i, j in pairs:
            e = atom(m, (i, j))
            assert e * e == e
        for a, b in itertools.product(pairs, repeat=2):
            assert atom(m, a) * atom(m, b) == atom(m, b) * atom(m, a)
        for i, j, k in itertools.combinations(range(1, m + 1), 3):
            x = atom(m, (i, j)) * atom(m, (j, k))
            assert x == atom(m, (i, j)) * atom(m, (i, k))
            assert x == atom(m, (j, k)) * atom(m, (i, k))


class TestFitzgeraldDecompose:
    def test_block_chain(self):
        assert fitzgerald_decompose(atom(5, (1, 3, 4))) == [(1, 3), (3, 4)]

    def test_unity_empty(self):
        assert fitzgerald_decompose(SetPartition.unity(4)) == []

    def test_roundtrip_exhaustive(self):
        for m in range(1, 7):
            for p in enumerate_partitions(m):
                out = SetPartition.unity(m)
                for i, j in fitzgerald_decompose(p):
                    out = out * atom(m, (i, j))
                assert out == p


class TestEnumeration:
    def test_counts(self):
        assert len(list(enumerate_partitions(1))) == 1
        assert len(list(enumerate_partitions(3))) == 5
        assert len(list(enumerate_partitions(8))) == 4140

    def test_lex_order_and_uniqueness(self):
        seen = [p.rgs for p in enumerate_partitions(5)]
        assert seen == sorted(seen)
        assert len(set(seen)) == len(seen)

    def test_block_counts_are_stirling(self):
        for m in range(1, 9):
            hist = Counter(p.num_blocks for p in enumerate_partitions(m))
            for k in range(1, m + 1):
                assert hist[k] == stirling2(m, k)

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            list(enumerate_partitions(9, bound=8))
        with pytest.raises(MalformedPartitionError):
            list(enumerate_partitions(0))


class TestLinear:
    def test_interval_example(self):
        p = canonicalize([{1}, {2}, {3, 4, 5, 6}, {7, 8}, {9}], 9)
        assert is_linear(p)

    def test_non_interval(self):
        assert not is_linear(canonicalize([{1, 3}, {2}], 3))

    def test_count(self):
        assert len(list(enumerate_linear(6))) == 32
        for m in range(1, 9):
            assert len(list(enumerate_linear(m))) == 2 ** (m - 1)

    def test_matches_filter(self):
        for m in range(1, 7):
            direct = {p.key() for p in enumerate_linear(m)}
            filtered = {p.key() for p in enumerate_partitions(m) if is_linear(p)}
            assert direct == filtered

    def test_blocks_binomial(self):
        for m in range(1, 9):
            hist = Counter(p.num_blocks for p in enumerate_linear(m))
            for k in range(1, m + 1):
                assert hist[k] == comb(m - 1, k - 1)

    def test_closed_under_join(self):
        lin = list(enumerate_linear(5))
        for p, q in itertools.product(lin, repeat=2):
            assert is_linear(p * q)


class TestCounts:
    def test_bell_values(self):
        assert [bell(m) for m in range(9)] == [1, 1, 2, 5, 15, 52, 203, 877, 4140]

    def test_stirling_values(self):
        assert stirling2(5, 2) == 15
        assert stirling2(6, 3) == 90
        assert stirling2(4, 0) == 0

    def test_bound(self):
        table = CountTable(bound=10)
        with pytest.raises(BoundExceededError):
            table.bell(11)
        with pytest.raises(BoundExceededError):
            table.stirling(11, 2)


class TestText:
    def test_roundtrip(self):
        for p in enumerate_partitions(5):
            assert SetPartition.from_text(p.to_text()) == p

    def test_whitespace_insignificant(self):
        assert SetPartition.from_text(" 1 , 4 | 2,5 , 7|3| 6 ") == SetPartition.from_text(
            "1,4|2,5,7|3|6"
        )

    def test_bad_text(self):
        with pytest.raises(MalformedPartitionError):
            SetPartition.from_text("1,|2")
        with pytest.raises(MalformedPartitionError):
            SetPartition.from_text("")


class TestDoublePartition:
    def test_requires_refinement(self):
        with pytest.raises(MalformedPartitionError):
            DoublePartition(canonicalize([{1, 2}], 2), SetPartition.unity(2))

    def test_componentwise_product(self):
        a = DoublePartition(SetPartition.unity(3), atom(3, (1, 2)))
        b = DoublePartition(atom(3, (2, 3)), atom(3, (2, 3)))
        prod = a * b
        assert prod.fine == atom(3, (2, 3))
        assert prod.coarse == atom(3, (1, 2)) * atom(3, (2, 3))
