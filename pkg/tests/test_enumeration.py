from itertools import permutations

import pytest

from permpos.enumeration import (
    ClassCountTable,
    PositionalClass,
    classify,
    count_ending_with_one,
    count_table,
    count_tables,
    generate_avoiders,
    iter_class_members,
)
from permpos.genfun import f_series, t1k_series
from permpos.permutations import DomainError, Permutation, word_contains


def filter_oracle(n, pat):
    """Oracle: filter all n! permutations with the generic subsequence scan."""
    out = []
    for values in permutations(range(1, n + 1)):
        if len(pat) > n or not word_contains(values, pat):
            out.append(values)
    return out


class TestGenerateAvoiders:
    def test_small_counts(self):
        assert sum(1 for _ in generate_avoiders(3)) == 6
        assert sum(1 for _ in generate_avoiders(4)) == 23
        assert sum(1 for _ in generate_avoiders(7)) == 2762

    def test_matches_filter_oracle_and_lex_order(self):
        for n in range(0, 9):
            got = [p.values for p in generate_avoiders(n)]
            want = filter_oracle(n, (1, 3, 2, 4))
            assert got == want  # filter over itertools.permutations is lex

    def test_other_patterns(self):
        catalan = [1, 1, 2, 5, 14, 42, 132]
        for pat in ((1, 3, 2), (2, 1, 3)):
            for n in range(7):
                got = [p.values for p in generate_avoiders(n, Permutation(pat))]
                assert got == filter_oracle(n, pat)
                assert len(got) == catalan[n]
        assert [p.values for p in generate_avoiders(3, Permutation((2, 1)))] == \
            [(1, 2, 3)]

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            list(generate_avoiders(-1))
        with pytest.raises(ValueError):
            list(generate_avoiders(3, Permutation(())))


class TestClassify:
    def test_examples(self):
        assert classify(Permutation((2, 3, 1))) == PositionalClass(2, 1)
        assert classify(Permutation((1, 2, 3, 4))) == PositionalClass(1, 3)
        assert classify(Permutation((3, 1, 2))) is None
        assert classify(Permutation((3, 5, 1, 4, 2))) == PositionalClass(3, 1)
        assert classify(Permutation((1,))) is None
        assert classify(Permutation(())) is None

    def test_validates_avoidance(self):
        with pytest.raises(DomainError):
            classify(Permutation((1, 3, 2, 4)))
        assert classify(Permutation((1, 3, 2, 4)), validate=False) == \
            PositionalClass(1, 3)

    def test_partitions_avoiders(self):
        # every avoider not starting with n gets exactly one class; the rest
        # are counted by the size-(n-1) total
        for n in range(2, 8):
            avoiders = list(generate_avoiders(n))
            classified = [p for p in avoiders if p.values[0] != n]
            assert all(classify(p) is not None for p in classified)
            assert all(classify(p) is None for p in avoiders
                       if p.values[0] == n)

    def test_smaller_values_live_right_of_max(self):
        for n in range(2, 8):
            for p in generate_avoiders(n):
                cls = classify(p)
                if cls is None:
                    continue
                pos_n = p.position(n)
                for b in range(1, cls.a):
                    assert p.position(b) > pos_n


class TestCountTables:
    def test_against_filter_oracle(self, tables8):
        for n in range(1, 9):
            avoiders = filter_oracle(n, (1, 3, 2, 4))
            assert tables8[n].total == len(avoiders)
            by_class = {}
            for values in avoiders:
                cls = classify(Permutation(values, validate=False), validate=False)
                if cls is not None:
                    by_class[cls] = by_class.get(cls, 0) + 1
            assert tables8[n].counts == {(a, k): c for (a, k), c in by_class.items()}

    def test_known_small_tables(self, tables8):
        t4 = tables8[4]
        assert (t4.count(1, 1), t4.count(1, 2), t4.count(1, 3)) == (6, 4, 1)
        assert t4.count(2, 1) == 3
        t2 = tables8[2]
        assert t2.total == 2 and t2.counts == {(1, 1): 1}

    def test_partition_invariant(self, tables8):
        for n in range(2, 9):
            assert tables8[n].classified_total() == \
                tables8[n].total - tables8[n - 1].total

    def test_worker_counts_agree(self, tables11):
        redo = count_tables(11, workers=3)
        for n in range(1, 12):
            assert redo[n].total == tables11[n].total
            assert redo[n].counts == tables11[n].counts

    def test_key_bounds(self, tables8):
        for n in range(1, 9):
            for (a, k), c in tables8[n].counts.items():
                assert a >= 1 and k >= 1 and a + k <= n and c > 0

    def test_bad_argument(self):
        with pytest.raises(ValueError):
            count_table(0)
        with pytest.raises(ValueError):
            count_tables(5, workers=-1)


class TestCache:
    def test_roundtrip_and_byte_identity(self, tmp_path):
        first = count_tables(6, cache_dir=tmp_path)
        blobs = {p.name: p.read_bytes() for p in tmp_path.iterdir()}
        assert len(blobs) == 6
        # a cache hit must match recomputation byte for byte
        again = count_tables(6, cache_dir=tmp_path)
        for n in range(1, 7):
            assert again[n].total == first[n].total
            assert again[n].counts == first[n].counts
        other = tmp_path / "redo"
        count_tables(6, cache_dir=other)
        for name, blob in blobs.items():
            assert (other / name).read_bytes() == blob

    def test_jsonl_schema(self):
        table = ClassCountTable(n=3, total=6, counts={(1, 1): 2, (1, 2): 1, (2, 1): 1})
        text = table.to_jsonl()
        lines = text.strip().split("\n")
        assert lines[0] == '{"n": 3, "total": "6"}'
        assert lines[1] == '{"n": 3, "a": 1, "k": 1, "count": "2"}'
        assert ClassCountTable.from_jsonl(text) == table


class TestMemberStreams:
    def test_members_match_generate(self):
        for n in range(2, 8):
            want = {p.values for p in generate_avoiders(n)
                    if classify(p) == PositionalClass(1, 1)}
            got = {p.values for p in iter_class_members(n, 1, 1)}
            assert got == want

    def test_count_ending_with_one(self, tables8):
        assert count_ending_with_one(3, 1) == 1  # just 231
        assert count_ending_with_one(4, 3) == 0  # no room for a trailing 1
        # trailing-1 members mirror the class-(1, k) count one size down
        assert count_ending_with_one(7, 3) == tables8[6].count(1, 3)
        assert count_ending_with_one(7, 3) == 30
        assert count_ending_with_one(7, 3) == t1k_series(3, 6).coeff(6)
        with pytest.raises(ValueError):
            count_ending_with_one(1, 1)

    def test_primitive_counts_match_closed_form(self, tables8):
        f = f_series(8)
        for n in range(2, 9):
            assert tables8[n].count(1, 1) == f.coeff(n - 1)

    def test_reverse_complement_fixes_a1_classes(self):
        from permpos.permutations import reverse_complement

        for n in range(2, 10):
            for k in range(1, n):
                for p in iter_class_members(n, 1, k):
                    assert classify(reverse_complement(p)) == PositionalClass(1, k)
