import random

import latticekit as lk


def test_diamond_header_rows(diamond):
    idx = lk.build_order_index(diamond, k=2)
    # headers are the atom 1 and the top 3
    assert idx.bd.headers == [1, 3]
    assert idx.header_meet[0] == [0, 1, 0, 1]   # meets with the atom
    assert idx.header_meet[1] == [0, 1, 2, 3]   # meets with the top: identity


def test_header_rows_match_oracle(family_zoo):
    for spec, g in family_zoo:
        idx = lk.build_order_index(g)
        c = lk.transitive_closure(g)
        null = idx.null
        for i, h in enumerate(idx.bd.headers):
            for x in range(g.n):
                expected = lk.oracle_meet(c, h, x)
                got = idx.header_meet[i][x]
                assert (None if got == null else got) == expected, (spec, h, x)


def test_down_dicts_are_local_downsets(family_zoo):
    for _, g in family_zoo:
        idx = lk.build_order_index(g)
        bd = idx.bd
        for x in range(g.n):
            if bd.block_of[x] < bd.m:
                members = set(bd.blocks[bd.block_of[x]])
            else:
                members = set(bd.residual)
            assert idx.down[x] == lk.downset(g, x, restrict=members)
            assert x in idx.down[x]


def test_order_matches_closure_exhaustive(small_lattices, family_zoo):
    for g in small_lattices:
        idx = lk.build_order_index(g)
        c = lk.transitive_closure(g)
        for x in range(g.n):
            for y in range(g.n):
                assert idx.test_order(x, y) == c.leq(x, y)
    for _, g in family_zoo:
        idx = lk.build_order_index(g)
        c = lk.transitive_closure(g)
        for x in range(g.n):
            for y in range(g.n):
                assert idx.test_order(x, y) == c.leq(x, y)


def test_diamond_cases(diamond):
    idx = lk.build_order_index(diamond)
    assert idx.test_order(0, 3)
    assert not idx.test_order(1, 2)
    assert not idx.test_order(3, 0)


def test_probe_budget(family_zoo):
    stats = lk.QueryStats()
    for _, g in family_zoo:
        idx = lk.build_order_index(g)
        rng = random.Random(0)
        for _ in range(300):
            x, y = rng.randrange(g.n), rng.randrange(g.n)
            idx.test_order(x, y, stats)
            assert stats.max_order_test_probes <= 5


def test_entry_budget(family_zoo):
    for spec, g in family_zoo:
        idx = lk.build_order_index(g)
        assert idx.down_entries <= 2 * g.n ** 1.5, spec


def test_flip_rebuild_answers_reversed_order(divisor12):
    fwd = lk.build_order_index(divisor12)
    rev = lk.build_order_index(lk.flip(divisor12))
    for x in range(divisor12.n):
        for y in range(divisor12.n):
            assert rev.test_order(x, y) == fwd.test_order(y, x)


def test_meet_with_header_single_probe(diamond):
    idx = lk.build_order_index(diamond, k=2)
    stats = lk.QueryStats()
    assert idx.meet_with_header(0, 2, stats) == 0   # atom block vs other atom
    assert stats.array_probes == 1
    assert idx.meet_with_header(1, 1) == 1          # x <= header gives x
    assert idx.meet_with_header(0, 1) == 1          # x is the header itself


def test_meet_with_header_null():
    g = lk.parse_trg("lattice v1\n3 1\n0 2\n")  # 1 incomparable to 0 < 2
    idx = lk.build_order_index(g, k=2)
    assert idx.bd.headers == [2]
    assert idx.meet_with_header(0, 1) is None


def test_space_counts(diamond):
    idx = lk.build_order_index(diamond, k=2)
    report = lk.space_report(idx)
    assert report.header_meet_cells == 2 * 4
    assert report.down_entries == 6  # {0},{0,1},{2},{2,3}
    assert report.total == 14


def test_stats_recorder_isolated_per_caller(diamond):
    idx = lk.build_order_index(diamond)
    a, b = lk.QueryStats(), lk.QueryStats()
    idx.test_order(0, 3, a)
    idx.test_order(0, 3, b)
    idx.test_order(1, 3, a)
    assert a.order_tests == 2 and b.order_tests == 1
