from fractions import Fraction

import numpy as np
import pytest

from pcol.core import Coloring, QuotientMatrix, neighbors
from pcol.errors import (DisconnectedError, InconsistentError,
                         SpectrumNotInGraphError, TooLargeError)
from pcol.verify import (NonPerfectWitness, check_uniform, compute_quotient,
                         densities_by_count, densities_from_quotient,
                         essential_arguments, quotient_spectrum,
                         search_colorings, validate_quotient,
                         verification_report)


def parity(n):
    return Coloring.from_table([bin(v).count("1") % 2 for v in range(2**n)], q=2)


def hamming_code_characteristic():
    # color 0 = the Hamming code of length 7 (syndrome 0), color 1 = the rest
    return Coloring.merged(Coloring.syndrome(3), [[0], list(range(1, 8))])


def brute_quotient(C):
    """Independent oracle: per-vertex neighbor profiles via plain loops."""
    Cm = C.materialize()
    profiles = {}
    for v in range(Cm.q**Cm.n):
        cnt = [0] * Cm.k
        for u in neighbors(v, Cm.n, Cm.q):
            cnt[int(Cm.table[u])] += 1
        cv = int(Cm.table[v])
        if cv in profiles and profiles[cv] != tuple(cnt):
            return None
        profiles[cv] = tuple(cnt)
    return [list(profiles[i]) for i in range(Cm.k)]


def test_parity_quotient():
    S = compute_quotient(parity(3))
    assert isinstance(S, QuotientMatrix)
    assert S.as_lists() == [[0, 3], [3, 0]]


def test_hamming_code_quotient():
    S = compute_quotient(hamming_code_characteristic())
    assert S.as_lists() == [[0, 7], [1, 6]]


def test_quotient_matches_brute_force_oracle():
    for C in (parity(3), hamming_code_characteristic(),
              Coloring.from_table([0, 1, 2, 0, 1, 2, 0, 1, 2], q=3)):
        S = compute_quotient(C)
        oracle = brute_quotient(C)
        if isinstance(S, QuotientMatrix):
            assert S.as_lists() == oracle
        else:
            assert oracle is None


def test_and_gate_witness():
    C = Coloring.from_table([0, 0, 0, 1], q=2)
    w = compute_quotient(C)
    assert isinstance(w, NonPerfectWitness)
    assert (w.vertex_a, w.vertex_b) == (0, 1)
    assert w.profile_a == (2, 0)
    assert w.profile_b == (1, 1)
    assert w.color == 0


def test_quotient_thread_counts_agree():
    C = hamming_code_characteristic()
    S1 = compute_quotient(C, threads=1)
    S4 = compute_quotient(C, threads=4)
    assert S1 == S4
    bad = Coloring.from_table([0, 0, 0, 1] * 4, q=2)
    assert compute_quotient(bad, threads=1) == compute_quotient(bad, threads=3)


def test_essential_single_variable():
    C = Coloring.from_table([v & 1 for v in range(8)], q=2)
    assert essential_arguments(C) == (True, False, False)


def test_essential_dummy_coordinate():
    C = parity(2)
    D = Coloring.cylinder(C, n=3, offset=0)
    assert essential_arguments(D) == (True, True, False)


def test_essential_all_for_union_coloring():
    inside = [[0, 1, 2], [3, 4, 5, 6, 7]]
    C = Coloring.merged(Coloring.syndrome(3), inside)
    assert essential_arguments(C) == (True,) * 7


def test_one_coloring_all_inessential():
    C = Coloring.merged(parity(2), [[0, 1]])
    assert essential_arguments(C) == (False, False)


def test_densities_by_count():
    assert densities_by_count(parity(3)) == (Fraction(1, 2), Fraction(1, 2))
    assert densities_by_count(hamming_code_characteristic()) == \
        (Fraction(1, 8), Fraction(7, 8))


def test_densities_from_quotient():
    assert densities_from_quotient([[0, 3], [1, 2]]) == (Fraction(1, 4), Fraction(3, 4))
    assert densities_from_quotient([[2, 5], [3, 4]]) == (Fraction(3, 8), Fraction(5, 8))


def test_densities_row_sum_mismatch():
    with pytest.raises(InconsistentError):
        densities_from_quotient([[0, 2], [1, 2]])


def test_densities_cycle_inconsistency():
    with pytest.raises(InconsistentError):
        densities_from_quotient([[0, 2, 2], [1, 0, 3], [3, 1, 0]])


def test_densities_disconnected():
    with pytest.raises(DisconnectedError):
        densities_from_quotient([[2, 0], [0, 2]])


def test_densities_zero_pattern_asymmetric():
    with pytest.raises(InconsistentError):
        densities_from_quotient([[2, 1, 0], [1, 0, 2], [1, 1, 1]])


def test_quotient_spectrum_examples():
    assert quotient_spectrum([[0, 3], [1, 2]], 3, 2) == {3: 1, -1: 1}
    assert quotient_spectrum([[12, 10], [6, 16]], 22, 2) == {22: 1, 6: 1}
    assert quotient_spectrum([[0, 1], [1, 0]], 1, 2) == {1: 1, -1: 1}


def test_quotient_spectrum_float_oracle():
    rng = np.random.default_rng(7)
    cases = [([[0, 3], [1, 2]], 3, 2), ([[12, 10], [6, 16]], 22, 2),
             ([[1, 23], [9, 15]], 24, 2), ([[2, 5], [3, 4]], 7, 2)]
    for rows, n, q in cases:
        exact = quotient_spectrum(rows, n, q)
        approx = sorted(np.linalg.eigvals(np.array(rows, dtype=float)).real)
        expanded = sorted(lam for lam, m in exact.items() for _ in range(m))
        assert np.allclose(approx, expanded, atol=1e-9)
    del rng


def test_quotient_spectrum_not_in_graph():
    with pytest.raises(SpectrumNotInGraphError):
        quotient_spectrum([[0, 2], [2, 0]], 3, 2)


def test_quotient_spectrum_from_object():
    S = compute_quotient(parity(3))
    assert quotient_spectrum(S) == {3: 1, -3: 1}


def test_validate_quotient():
    d = validate_quotient([[1, 23], [9, 15]], 24, 2)
    assert d.ok
    assert d.densities == (Fraction(9, 32), Fraction(23, 32))
    assert d.spectrum == {24: 1, -8: 1}

    d = validate_quotient([[1, 2], [2, 1]], 3, 2)
    assert d.ok
    assert d.spectrum == {3: 1, -1: 1}

    rows = [[0, 8, 8], [8, 0, 8], [8, 8, 0]]
    d = validate_quotient(rows, 4, 3)
    assert not d.row_sums_ok
    assert d.row_sums == (16, 16, 16)
    assert d.expected_row_sum == 8
    # the same matrix is structurally fine for H(8, 3)
    assert validate_quotient(rows, 8, 3).ok


def test_check_uniform_translations_of_parity():
    C = parity(2)
    members = [Coloring.translation(C, z) for z in range(4)]
    res = check_uniform(members)
    assert res.uniform and res.exhaustive
    assert res.multiplicities == (2, 2)


def test_check_uniform_rejects_repeated_nonconstant():
    C = Coloring.from_table([0, 1, 1, 1], q=2)
    res = check_uniform([C, C])
    assert not res.uniform
    assert res.witness_vertex is not None


def test_check_uniform_guard_and_sampling():
    members = [Coloring.translation(parity(3), z) for z in range(8)]
    with pytest.raises(TooLargeError):
        check_uniform(members, guard=16)
    res = check_uniform(members, guard=16, sample=20)
    assert res.uniform and not res.exhaustive
    assert res.multiplicities == (4, 4)


def test_search_colorings_four_cycle():
    found = search_colorings(2, 2, [[0, 2], [2, 0]], require_all_essential=True)
    tables = [c.table.tolist() for c in found]
    assert [0, 1, 1, 0] in tables
    assert all(t in ([0, 1, 1, 0], [1, 0, 0, 1]) for t in tables)


def test_search_colorings_remark():
    essential_only = search_colorings(3, 2, [[1, 2], [2, 1]], require_all_essential=True)
    assert essential_only == []
    unrestricted = search_colorings(3, 2, [[1, 2], [2, 1]])
    assert unrestricted
    # each hit really does have a dummy argument and the right matrix
    for c in unrestricted[:3]:
        assert compute_quotient(c).as_lists() == [[1, 2], [2, 1]]
        assert not all(essential_arguments(c))


def test_search_colorings_guard():
    with pytest.raises(TooLargeError):
        search_colorings(3, 2, [[1, 2], [2, 1]], assignment_guard=100)


def test_search_deterministic_order():
    a = search_colorings(2, 2, [[0, 2], [2, 0]])
    b = search_colorings(2, 2, [[0, 2], [2, 0]])
    assert [c.table.tolist() for c in a] == [c.table.tolist() for c in b]


def test_verification_report_round():
    rep = verification_report(parity(3), essential=True)
    assert rep.perfect
    assert rep.quotient.as_lists() == [[0, 3], [3, 0]]
    assert rep.densities == (Fraction(1, 2), Fraction(1, 2))
    assert rep.spectrum == {3: 1, -3: 1}
    assert rep.essential == (True, True, True)

    bad = Coloring.from_table([0, 0, 0, 1], q=2)
    rep = verification_report(bad)
    assert not rep.perfect
    assert rep.witness is not None
    assert rep.spectrum is None


def test_densities_match_detailed_balance():
    for C in (parity(3), hamming_code_characteristic()):
        S = compute_quotient(C)
        assert densities_by_count(C) == densities_from_quotient(S)


def test_int_rank_against_float_oracle():
    from pcol.verify import _int_rank

    rng = np.random.default_rng(99)
    for _ in range(200):
        rows = int(rng.integers(1, 6))
        cols = int(rng.integers(1, 6))
        M = rng.integers(-4, 5, size=(rows, cols))
        if rng.random() < 0.4 and rows > 1:
            M[rows - 1] = M[0] * int(rng.integers(-2, 3))  # force dependence
        exact = _int_rank(M.tolist())
        assert exact == np.linalg.matrix_rank(M.astype(float))


def test_search_chunking_agrees(monkeypatch):
    import pcol.verify as verify_mod

    full = [c.table.tolist()
            for c in search_colorings(3, 2, [[1, 2], [2, 1]])]
    monkeypatch.setattr(verify_mod, "_SEARCH_CHUNK_CELLS", 64)
    chunked = [c.table.tolist()
               for c in search_colorings(3, 2, [[1, 2], [2, 1]])]
    assert full == chunked


def test_check_uniform_shape_mismatch():
    from pcol.errors import OutOfRangeError

    a = parity(2)
    b = parity(3)
    with pytest.raises(OutOfRangeError):
        check_uniform([a, b])


def test_check_uniform_density_cross_check():
    from pcol.constructions import hamming_cosets, hamming_union_collection

    col = hamming_union_collection(hamming_cosets(3), 3)
    res = check_uniform(col)
    assert res.matches_density is True
    # a bare list has no attached quotient to compare against
    res = check_uniform(list(col.colorings))
    assert res.matches_density is None


def test_essential_threads_agree():
    C = Coloring.merged(Coloring.syndrome(3), [[0, 1, 2], [3, 4, 5, 6, 7]])
    assert essential_arguments(C, threads=1) == essential_arguments(C, threads=5)


def test_check_uniform_sampled_witness():
    # two copies of a non-constant coloring: some sampled vertex must expose
    # a multiset differing from vertex 0's
    C = Coloring.from_table([0, 1, 1, 1, 1, 1, 1, 1], q=2)
    res = check_uniform([C, C], guard=4, sample=50)
    assert not res.uniform
    assert not res.exhaustive
    assert res.witness_vertex is not None
    assert res.witness_counts != res.base_counts
