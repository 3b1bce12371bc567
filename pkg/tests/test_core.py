import numpy as np
import pytest

from pcol.core import (Coloring, digits, materialize_guard, neighbors,
                       vertex_index)
from pcol.errors import (InvalidPartitionError, NotSurjectiveError,
                         OutOfRangeError, TooLargeError)


def parity_coloring(n):
    table = [bin(v).count("1") % 2 for v in range(2**n)]
    return Coloring.from_table(table, q=2)


def test_digits_examples():
    assert digits(5, 3, 2) == (1, 0, 1)
    assert digits(0, 4, 3) == (0, 0, 0, 0)
    assert vertex_index((1, 0, 1), 2) == 5
    with pytest.raises(OutOfRangeError):
        digits(8, 3, 2)
    with pytest.raises(OutOfRangeError):
        vertex_index((0, 3), 3)


@pytest.mark.parametrize("n,q", [(8, 2), (5, 3), (4, 4), (3, 5)])
def test_digits_roundtrip(n, q):
    for v in range(q**n):
        assert vertex_index(digits(v, n, q), q) == v


def test_neighbors_examples():
    # H(2,3), word (0,0): position-major, replacement ascending
    got = [digits(u, 2, 3) for u in neighbors(0, 2, 3)]
    assert got == [(1, 0), (2, 0), (0, 1), (0, 2)]
    assert neighbors(0, 1, 2) == [1]


@pytest.mark.parametrize("n,q", [(6, 2), (4, 3), (3, 4)])
def test_neighbors_symmetric_no_dups(n, q):
    deg = n * (q - 1)
    for v in range(q**n):
        nb = neighbors(v, n, q)
        assert len(nb) == deg
        assert len(set(nb)) == deg
        assert v not in nb
        for u in nb:
            assert v in neighbors(u, n, q)


def test_from_table_validation():
    with pytest.raises(NotSurjectiveError) as ei:
        Coloring.from_table([0, 0, 0, 0], q=2, k=2)
    assert ei.value.missing_color == 1
    with pytest.raises(OutOfRangeError):
        Coloring.from_table([0, 1, 2], q=2)  # size 3 not a power of 2


def test_evaluate_explicit():
    C = Coloring.from_table([0, 1, 1, 0], q=2)
    assert C.evaluate(3) == 0
    assert [C.evaluate(v) for v in range(4)] == [0, 1, 1, 0]


def test_translation_of_parity():
    C = parity_coloring(2)
    T = Coloring.translation(C, (1, 1))
    assert T.materialize().table.tolist() == [0, 1, 1, 0]
    # shift by a single coordinate flips parity
    T1 = Coloring.translation(C, (1, 0))
    assert T1.materialize().table.tolist() == [1, 0, 0, 1]
    # word and index shifts agree
    T2 = Coloring.translation(C, 3)
    assert T2.materialize().table.tolist() == T.materialize().table.tolist()


def test_translation_general_q():
    # base: value of digit 0 in H(2,3)
    C = Coloring.from_table([v % 3 for v in range(9)], q=3)
    T = Coloring.translation(C, (1, 0))
    expect = [(v % 3 - 1) % 3 for v in range(9)]
    assert T.materialize().table.tolist() == expect


def test_cylinder_adds_dummy_positions():
    C = parity_coloring(2)
    D = Coloring.cylinder(C, n=4, offset=1)
    Dm = D.materialize()
    for v in range(16):
        w = digits(v, 4, 2)
        assert Dm.table[v] == (w[1] + w[2]) % 2


def test_merge_partition_checked():
    C = Coloring.from_table([0, 1, 2, 0, 1, 2, 0, 1, 2], q=3)
    M = Coloring.merged(C, [[0, 2], [1]])
    assert M.k == 2
    assert M.materialize().table.tolist() == [0, 1, 0, 0, 1, 0, 0, 1, 0]
    with pytest.raises(InvalidPartitionError):
        Coloring.merged(C, [[0], [1]])
    with pytest.raises(InvalidPartitionError):
        Coloring.merged(C, [[0, 1], [1, 2]])


def test_merge_all_colors():
    C = Coloring.from_table([0, 1, 1, 0], q=2)
    M = Coloring.merged(C, [[0, 1]])
    assert M.k == 1
    assert set(M.materialize().table.tolist()) == {0}


def test_syndrome_small():
    S = Coloring.syndrome(1)
    assert S.n == 1 and S.k == 2
    assert S.materialize().table.tolist() == [0, 1]


def test_materialize_guard():
    C = Coloring.translation(parity_coloring(4), 0)
    with pytest.raises(TooLargeError):
        C.materialize(guard=8)
    assert C.materialize(guard=16).table.size == 16


def test_guard_env_override(monkeypatch):
    monkeypatch.setenv("PCOL_MATERIALIZE_GUARD", "123")
    assert materialize_guard() == 123
    assert materialize_guard(7) == 7


def test_materialize_not_surjective():
    base = Coloring.from_table([0, 1, 1, 0], q=2, k=3, validate=False)
    T = Coloring.translation(base, (0, 0))
    with pytest.raises(NotSurjectiveError) as ei:
        T.materialize()
    assert ei.value.missing_color == 2


def test_color_dtype_choice():
    small = Coloring.from_table([0, 1, 1, 0], q=2)
    assert small.table.dtype == np.uint8
    table = list(range(300)) + [0] * (512 - 300)
    big = Coloring.from_table(table, q=2)
    assert big.table.dtype == np.uint16
    assert big.k == 300


def test_outer_node_shape_checks():
    member = Coloring.from_table([0, 1], q=2)
    E = Coloring.from_table([0, 1, 3, 2], q=2)
    F = Coloring.outer([member, member], E)
    assert (F.n, F.q, F.k) == (4, 2, 2)
    with pytest.raises(OutOfRangeError):
        Coloring.outer([member], E)


def test_symbolic_evaluate_matches_materialization():
    rng = np.random.default_rng(20240817)
    base = parity_coloring(3)
    comp = Coloring.merged(
        Coloring.translation(Coloring.cylinder(base, n=5, offset=1), (1, 0, 1, 0, 0)),
        [[1], [0]],
    )
    tab = comp.materialize().table
    for v in rng.integers(0, 32, size=200):
        assert comp.evaluate(int(v)) == tab[int(v)]


def test_default_guard_blocks_huge_materialization():
    # H(30, 2) has 2**30 cells, past the default 2**26 guard
    big = Coloring.cylinder(parity_coloring(4), n=30, offset=0)
    with pytest.raises(TooLargeError):
        big.materialize()
    assert big.evaluate(2**29 + 3) in (0, 1)
