"""Exhaustive verification of colorings of H(n, q).

Everything here is a certificate-grade computation: neighbor counting over
all vertices, exact rational densities, and fraction-free integer spectra.
Scan order is by ascending vertex index, so failure witnesses are
reproducible; block-parallel runs merge deterministically and report the
same witness for every thread count.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Coloring, QuotientMatrix, materialize_guard, neighbors
from .errors import (DisconnectedError, InconsistentError, NotSurjectiveError,
                     OutOfRangeError, SpectrumNotInGraphError, TooLargeError)

DEFAULT_ASSIGNMENT_GUARD = 1 << 24
_SEARCH_CHUNK_CELLS = 1 << 22


@dataclass(frozen=True)
class NonPerfectWitness:
    """Two same-color vertices whose neighborhoods have different color profiles."""

    color: int
    vertex_a: int
    vertex_b: int
    profile_a: tuple[int, ...]
    profile_b: tuple[int, ...]


@dataclass(frozen=True)
class UniformityCheck:
    uniform: bool
    multiplicities: tuple[int, ...] | None
    exhaustive: bool
    witness_vertex: int | None = None
    witness_counts: tuple[int, ...] | None = None
    base_counts: tuple[int, ...] | None = None
    # multiplicities == rho_i * M under the collection's quotient, when known
    matches_density: bool | None = None


@dataclass(frozen=True)
class QuotientDiagnostics:
    row_sums_ok: bool
    expected_row_sum: int
    row_sums: tuple[int, ...]
    balance_ok: bool
    densities: tuple[Fraction, ...] | None
    balance_message: str | None
    spectrum_ok: bool
    spectrum: dict[int, int] | None
    spectrum_message: str | None

    @property
    def ok(self) -> bool:
        return self.row_sums_ok and self.balance_ok and self.spectrum_ok


@dataclass
class VerificationReport:
    n: int
    q: int
    k: int
    perfect: bool
    quotient: QuotientMatrix | None
    witness: NonPerfectWitness | None
    densities: tuple[Fraction, ...]
    spectrum: dict[int, int] | None
    essential: tuple[bool, ...] | None = None
    degrees: tuple[int, ...] | None = None


def _block_ranges(total: int, blocks: int) -> list[tuple[int, int]]:
    blocks = max(1, min(blocks, total))
    step = (total + blocks - 1) // blocks
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _run_blocks(fn, total: int, threads: int) -> list:
    ranges = _block_ranges(total, threads)
    if threads <= 1 or len(ranges) == 1:
        return [fn(lo, hi) for lo, hi in ranges]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        futures = [ex.submit(fn, lo, hi) for lo, hi in ranges]
        return [f.result() for f in futures]


def _neighbor_colors(table: np.ndarray, idx: np.ndarray, pos: int, delta: int, q: int):
    place = q**pos
    if q == 2:
        return table[idx ^ place]
    dig = (idx // place) % q
    return table[idx + (((dig + delta) % q) - dig) * place]


def _guarded_table(C: Coloring, guard: int | None) -> Coloring:
    cells = C.q**C.n
    limit = materialize_guard(guard)
    if cells > limit:
        raise TooLargeError(f"q**n = {cells} exceeds the guard {limit}")
    return C.materialize(guard)


def compute_quotient(C: Coloring, *, threads: int = 1,
                     guard: int | None = None) -> QuotientMatrix | NonPerfectWitness:
    """Count neighbor colors at every vertex.

    Returns the quotient matrix if the profile of a vertex depends only on
    its color, otherwise the first witness in vertex-index order.
    """
    Cm = _guarded_table(C, guard)
    n, q, k = Cm.n, Cm.q, Cm.k
    table = Cm.table
    N = q**n
    count_t = np.int16 if n * (q - 1) < 32768 else np.int32
    counts = np.zeros((N, k), dtype=count_t)

    def fill(lo, hi):
        idx = np.arange(lo, hi, dtype=np.int64)
        block = counts[lo:hi]
        for pos in range(n):
            for delta in range(1, q):
                nc = _neighbor_colors(table, idx, pos, delta, q)
                for j in range(k):
                    block[:, j] += nc == j
        return None

    _run_blocks(fill, N, threads)

    _, first_idx = np.unique(table, return_index=True)
    if first_idx.size != k:
        raise NotSurjectiveError(int(np.argmin(np.bincount(table, minlength=k))))
    ref_rows = counts[first_idx]

    def scan(lo, hi):
        bad = (counts[lo:hi] != ref_rows[table[lo:hi].astype(np.int64)]).any(axis=1)
        if bad.any():
            return lo + int(np.argmax(bad))
        return None

    hits = [h for h in _run_blocks(scan, N, threads) if h is not None]
    if hits:
        v = min(hits)
        color = int(table[v])
        a = int(first_idx[color])
        return NonPerfectWitness(color, a, v,
                                 tuple(int(x) for x in counts[a]),
                                 tuple(int(x) for x in counts[v]))
    return QuotientMatrix.of(ref_rows.tolist(), n, q)


def essential_arguments(C: Coloring, *, threads: int = 1,
                        guard: int | None = None) -> tuple[bool, ...]:
    """mask[i] is True iff the coloring changes along some line in direction i."""
    Cm = _guarded_table(C, guard)
    n, q = Cm.n, Cm.q
    table = Cm.table
    N = q**n

    def scan(lo, hi):
        idx = np.arange(lo, hi, dtype=np.int64)
        local = []
        for pos in range(n):
            hit = False
            for delta in range(1, q):
                nc = _neighbor_colors(table, idx, pos, delta, q)
                if (nc != table[lo:hi]).any():
                    hit = True
                    break
            local.append(hit)
        return local

    results = _run_blocks(scan, N, threads)
    return tuple(any(r[pos] for r in results) for pos in range(n))


def densities_by_count(C: Coloring, *, guard: int | None = None) -> tuple[Fraction, ...]:
    Cm = _guarded_table(C, guard)
    N = Cm.q**Cm.n
    counts = np.bincount(Cm.table, minlength=Cm.k)
    return tuple(Fraction(int(c), N) for c in counts)


def _matrix_rows(S) -> tuple[tuple[int, ...], ...]:
    if isinstance(S, QuotientMatrix):
        return S.entries
    return tuple(tuple(int(e) for e in row) for row in S)


def densities_from_quotient(S) -> tuple[Fraction, ...]:
    """Solve detailed balance rho_i * S[i][j] == rho_j * S[j][i] exactly.

    Ratios are propagated along a spanning tree of the color graph and
    every non-tree edge is checked for consistency.
    """
    rows = _matrix_rows(S)
    k = len(rows)
    sums = {sum(r) for r in rows}
    if len(sums) != 1:
        raise InconsistentError(f"row sums differ: {tuple(sum(r) for r in rows)}")
    for i in range(k):
        for j in range(k):
            if (rows[i][j] > 0) != (rows[j][i] > 0):
                raise InconsistentError(
                    f"S[{i}][{j}]={rows[i][j]} but S[{j}][{i}]={rows[j][i]}")

    ratio: list[Fraction | None] = [None] * k
    ratio[0] = Fraction(1)
    queue = [0]
    while queue:
        i = queue.pop()
        for j in range(k):
            if rows[i][j] > 0 and ratio[j] is None:
                ratio[j] = ratio[i] * Fraction(rows[i][j], rows[j][i])
                queue.append(j)
    if any(r is None for r in ratio):
        missing = [i for i, r in enumerate(ratio) if r is None]
        raise DisconnectedError(f"colors {missing} unreachable in the color graph")
    for i in range(k):
        for j in range(i + 1, k):
            if rows[i][j] > 0 and ratio[i] * rows[i][j] != ratio[j] * rows[j][i]:
                raise InconsistentError(
                    f"detailed balance fails on the edge ({i}, {j})")
    total = sum(ratio)
    return tuple(r / total for r in ratio)


def _int_rank(rows: list[list[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    M = [row[:] for row in rows]
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                M[i][j] = (M[i][j] * M[r][c] - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = M[r][c]
        r += 1
        rank += 1
        if r == nrows:
            break
    return rank


def graph_eigenvalue(n: int, q: int, i: int) -> int:
    return n * (q - 1) - q * i


def quotient_spectrum(S, n: int | None = None, q: int | None = None) -> dict[int, int]:
    """Multiplicities of S's eigenvalues among the graph eigenvalues of H(n, q).

    The multiplicity of lambda_i = n(q-1) - q*i is k - rank(S - lambda_i I),
    computed exactly.  Raises SpectrumNotInGraphError when the multiplicities
    do not sum to k, i.e. S has an eigenvalue outside the graph spectrum (or
    too small a geometric eigenspace).
    """
    if isinstance(S, QuotientMatrix):
        n = S.n if n is None else n
        q = S.q if q is None else q
    if n is None or q is None:
        raise OutOfRangeError("n and q are required for a raw matrix")
    rows = _matrix_rows(S)
    k = len(rows)
    spectrum: dict[int, int] = {}
    total = 0
    for i in range(n + 1):
        lam = graph_eigenvalue(n, q, i)
        shifted = [[rows[a][b] - (lam if a == b else 0) for b in range(k)]
                   for a in range(k)]
        mult = k - _int_rank(shifted)
        if mult:
            spectrum[lam] = mult
            total += mult
    if total != k:
        raise SpectrumNotInGraphError(
            f"eigenspaces for graph eigenvalues span {total} < {k} dimensions")
    return spectrum


def validate_quotient(S, n: int, q: int) -> QuotientDiagnostics:
    """Structural checks for a candidate quotient matrix; never raises."""
    rows = _matrix_rows(S)
    degree = n * (q - 1)
    row_sums = tuple(sum(r) for r in rows)
    row_sums_ok = all(s == degree for s in row_sums)

    densities = None
    balance_message = None
    try:
        densities = densities_from_quotient(rows)
        balance_ok = True
    except (InconsistentError, DisconnectedError) as exc:
        balance_ok = False
        balance_message = str(exc)

    spectrum = None
    spectrum_message = None
    try:
        spectrum = quotient_spectrum(rows, n, q)
        spectrum_ok = True
    except SpectrumNotInGraphError as exc:
        spectrum_ok = False
        spectrum_message = str(exc)

    return QuotientDiagnostics(row_sums_ok, degree, row_sums, balance_ok,
                               densities, balance_message, spectrum_ok,
                               spectrum, spectrum_message)


def check_uniform(collection, *, guard: int | None = None, sample: int | None = None,
                  seed: int = 0x5EED) -> UniformityCheck:
    """Is the per-vertex multiset of member colors vertex-independent?

    Exhaustive when the stacked tables fit the guard; otherwise request a
    pseudo-random sample size, which flags the result as non-exhaustive.
    When the collection carries a common quotient matrix, the multiplicity
    vector is also compared against rho_i * M from detailed balance.
    """
    members = tuple(getattr(collection, "colorings", collection))
    if not members:
        raise OutOfRangeError("empty collection")
    n, q, k = members[0].n, members[0].q, members[0].k
    if any(c.n != n or c.q != q or c.k != k for c in members):
        raise OutOfRangeError("collection members must share (n, q, k)")
    M = len(members)
    N = q**n
    limit = materialize_guard(guard)

    mult = None
    if sample is None:
        if M * N > limit:
            raise TooLargeError(
                f"{M} tables of {N} cells exceed the guard {limit}; "
                "pass sample= to spot-check")
        stack = np.stack([c.materialize(guard).table for c in members])
        mult = []
        for i in range(k):
            cnt = (stack == i).sum(axis=0, dtype=np.int32)
            bad = cnt != cnt[0]
            if bad.any():
                v = int(np.argmax(bad))
                at_v = tuple(int((stack[:, v] == j).sum()) for j in range(k))
                at_0 = tuple(int((stack[:, 0] == j).sum()) for j in range(k))
                return UniformityCheck(False, None, True, v, at_v, at_0)
            mult.append(int(cnt[0]))
        mult = tuple(mult)
        exhaustive = True
    else:
        rng = np.random.default_rng(seed)
        verts = [0] + [int(v) for v in rng.integers(0, N, size=sample)]
        for v in verts:
            cnt = [0] * k
            for c in members:
                cnt[c.evaluate(v)] += 1
            cnt = tuple(cnt)
            if mult is None:
                mult = cnt
            elif cnt != mult:
                return UniformityCheck(False, None, False, v, cnt, mult)
        exhaustive = False

    matches = None
    quotient = getattr(collection, "quotient", None)
    if quotient is not None:
        rho = densities_from_quotient(quotient)
        matches = all(r * M == m for r, m in zip(rho, mult))
    return UniformityCheck(True, mult, exhaustive, matches_density=matches)


def search_colorings(n: int, q: int, S, require_all_essential: bool = False, *,
                     assignment_guard: int | None = None) -> list[Coloring]:
    """Brute-force every surjective coloring of H(n, q) against S.

    Enumerates all k**(q**n) color assignments (guarded) and keeps the ones
    whose neighbor-count profile matches S exactly, optionally filtered to
    colorings with every argument essential.  Ascending assignment order.
    """
    rows = _matrix_rows(S)
    k = len(rows)
    N = q**n
    total = k**N
    limit = DEFAULT_ASSIGNMENT_GUARD if assignment_guard is None else assignment_guard
    if total > limit:
        raise TooLargeError(f"{k}**{N} = {total} assignments exceed the guard {limit}")

    d = n * (q - 1)
    nbr = np.array([neighbors(v, n, q) for v in range(N)], dtype=np.int64)
    S_arr = np.array(rows, dtype=np.int16)

    out: list[Coloring] = []
    chunk = max(1, _SEARCH_CHUNK_CELLS // max(1, N * d))
    for start in range(0, total, chunk):
        ids = np.arange(start, min(start + chunk, total), dtype=np.int64)
        B = ids.size
        tables = np.empty((B, N), dtype=np.uint8)
        tmp = ids.copy()
        for pos in range(N):
            tables[:, pos] = tmp % k
            tmp //= k
        ok = np.ones(B, dtype=bool)
        for j in range(k):
            ok &= (tables == j).any(axis=1)
        nbrcols = tables[:, nbr]
        expected = S_arr[tables.astype(np.int64)]
        for j in range(k):
            cnt = (nbrcols == j).sum(axis=2, dtype=np.int16)
            ok &= (cnt == expected[:, :, j]).all(axis=1)
        if require_all_essential:
            for pos in range(n):
                cols = nbrcols[:, :, pos * (q - 1):(pos + 1) * (q - 1)]
                ok &= (cols != tables[:, :, None]).any(axis=(1, 2))
        for row in tables[ok]:
            out.append(Coloring.from_table(row.copy(), q, k))
    return out


def verification_report(C: Coloring, *, essential: bool = False, threads: int = 1,
                        guard: int | None = None) -> VerificationReport:
    """Bundle quotient, densities, spectrum, and optional essential mask."""
    Cm = _guarded_table(C, guard)
    result = compute_quotient(Cm, threads=threads)
    perfect = isinstance(result, QuotientMatrix)
    dens = densities_by_count(Cm)
    spec = quotient_spectrum(result) if perfect else None
    mask = essential_arguments(Cm, threads=threads) if essential else None
    return VerificationReport(
        n=Cm.n, q=Cm.q, k=Cm.k, perfect=perfect,
        quotient=result if perfect else None,
        witness=None if perfect else result,
        densities=dens, spectrum=spec, essential=mask)
