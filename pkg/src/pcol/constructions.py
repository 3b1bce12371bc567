"""Builders for perfect colorings of H(n, q) and uniform collections.

Covers the generalized Reed-Muller-like partitions, translation collections
and their period reduction, Hamming-coset union colorings, the recursive
lengthening step (which multiplies the word length by q and adds M
positions while keeping every argument essential), and the two parameterized
front ends: an unbalanced 2-coloring from its off-diagonal pair (b, c) and a
low-degree unbalanced Boolean function from its density r/s.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .core import (Coloring, QuotientMatrix, digits, materialize_guard,
                   vertex_index, vertex_range)
from .errors import (BadDensityError, BadOuterColoringError, InconsistentError,
                     NotEssentialError, NotPowerOfTwoError, OutOfRangeError,
                     SizeMismatchError, TooLargeError)
from .gf import FieldTable, tuple_unrank
from .spectral import DegreeReport, coloring_degree
from .verify import (compute_quotient, densities_by_count,
                     densities_from_quotient, essential_arguments)


@dataclass(frozen=True)
class UniformCollection:
    """Ordered colorings of one H(n, q) whose per-vertex color multiset is constant."""

    colorings: tuple[Coloring, ...]
    provenance: str
    quotient: QuotientMatrix | None = None
    hypotheses_checked: bool = True

    @property
    def size(self) -> int:
        return len(self.colorings)

    def __len__(self) -> int:
        return len(self.colorings)

    def __getitem__(self, i: int) -> Coloring:
        return self.colorings[i]


# -- RM-like partitions (perfect Mq-colorings of H(M, q)) ---------------


class _RMBody:
    """Color of x is the pair (sum x_i, sum x_i * alpha_i) over GF(q)."""

    __slots__ = ("field", "s", "alphas")

    def __init__(self, field: FieldTable, s: int):
        self.field = field
        self.s = s
        self.alphas = tuple(tuple_unrank(field.q, s, i) for i in range(field.q**s))

    def evaluate(self, v, n, q):
        F = self.field
        a = 0
        beta = [0] * self.s
        for i in range(n):
            d = v % q
            v //= q
            if d:
                a = F.add(a, d)
                alpha = self.alphas[i]
                for t in range(self.s):
                    if alpha[t]:
                        beta[t] = F.add(beta[t], F.mul(d, alpha[t]))
        rank = sum(beta[t] * q**t for t in range(self.s))
        return q * rank + a

    def build_table(self, n, q):
        add = self.field.add_table.astype(np.int64)
        mul = self.field.mul_table.astype(np.int64)
        idx = vertex_range(n, q)
        a = np.zeros(idx.size, dtype=np.int64)
        beta = [np.zeros(idx.size, dtype=np.int64) for _ in range(self.s)]
        rest = idx
        for i in range(n):
            d = rest % q
            rest = rest // q
            a = add[a, d]
            alpha = self.alphas[i]
            for t in range(self.s):
                if alpha[t]:
                    beta[t] = add[beta[t], mul[d, alpha[t]]]
        rank = np.zeros(idx.size, dtype=np.int64)
        for t in range(self.s):
            rank += beta[t] * q**t
        return q * rank + a


def rm_quotient(M: int, q: int) -> QuotientMatrix:
    """The Mq-by-Mq matrix with entry 1 iff the color indices differ mod q."""
    k = M * q
    rows = tuple(tuple(0 if (i - j) % q == 0 else 1 for j in range(k))
                 for i in range(k))
    return QuotientMatrix(rows, M, q)


def rm_coloring(q: int, s: int) -> Coloring:
    """Perfect Mq-coloring of H(M, q), M = q**s, with quotient rm_quotient(M, q).

    Color encoding: the pair (a, beta) in GF(q) x GF(q)**s becomes
    q * rank(beta) + a, so color mod q recovers the digit-sum component.
    """
    if s < 1:
        raise OutOfRangeError(f"s must be >= 1, got {s}")
    F = FieldTable(q)
    M = q**s
    return Coloring(M, q, M * q, _RMBody(F, s), provenance=f"rm(q={q},s={s})")


# -- translation collections --------------------------------------------


def translations_collection(C: Coloring, *, guard: int | None = None) -> UniformCollection:
    """The q**n translates C_z(x) = C(x - z) over Z_q**n; member 0 is C.

    The common quotient matrix is attached when C is materializable and
    perfect, left None otherwise.
    """
    members = tuple(Coloring.translation(C, z) for z in range(C.q**C.n))
    quotient = None
    try:
        result = compute_quotient(C, guard=guard)
        if isinstance(result, QuotientMatrix):
            quotient = result
    except TooLargeError:
        pass
    return UniformCollection(members, "translations", quotient)


def _index_shift_table(n: int, q: int, word: tuple[int, ...], sign: int) -> np.ndarray:
    """mapped[v] = index of (x + sign*word) for every vertex x."""
    idx = vertex_range(n, q)
    mapped = np.zeros(idx.size, dtype=np.int64)
    rest = idx
    place = 1
    for z in word:
        mapped += ((rest % q + sign * z) % q) * place
        rest = rest // q
        place *= q
    return mapped


def coloring_periods(C: Coloring, *, candidates=None, guard: int | None = None) -> list[int]:
    """All v with C(x + v) == C(x) for every x (a subgroup of Z_q**n)."""
    Cm = C.materialize(guard)
    n, q = Cm.n, Cm.q
    tab = Cm.table
    pool = range(q**n) if candidates is None else candidates
    found = []
    for v in pool:
        word = digits(v, n, q)
        if np.array_equal(tab[_index_shift_table(n, q, word, +1)], tab):
            found.append(v)
    if candidates is None:
        return sorted(found)
    # restricted search: close under the group operation
    closure = {0}
    frontier = set(found)
    while frontier:
        nxt = set()
        for a in frontier | closure:
            for b in found:
                wa, wb = digits(a, n, q), digits(b, n, q)
                c = vertex_index(tuple((x + y) % q for x, y in zip(wa, wb)), q)
                if c not in closure and c not in frontier:
                    nxt.add(c)
        closure |= frontier
        frontier = nxt
    return sorted(closure)


def reduce_by_periods(col: UniformCollection, *, candidates=None,
                      guard: int | None = None) -> UniformCollection:
    """Keep one translate per coset of the base coloring's period subgroup."""
    if col.provenance != "translations":
        raise OutOfRangeError("period reduction applies to translation collections")
    base = col.colorings[0]
    n, q = base.n, base.q
    periods = coloring_periods(base, candidates=candidates, guard=guard)
    rep = vertex_range(n, q).copy()
    for p in periods:
        if p == 0:
            continue
        mapped = _index_shift_table(n, q, digits(p, n, q), +1)
        np.minimum(rep, mapped, out=rep)
    kept = tuple(col.colorings[z] for z in range(q**n) if rep[z] == z)
    return UniformCollection(kept, "translations", col.quotient)


# -- Hamming cosets and union colorings ----------------------------------


@dataclass(frozen=True)
class HammingCosetPartition:
    """The 2**m cosets of the binary Hamming code of length 2**m - 1.

    Position p of a word contributes column value p + 1, so the coset index
    of a word is its syndrome read as an integer; coset 0 is the code.
    """

    m: int
    coloring: Coloring

    @property
    def size(self) -> int:
        return 1 << self.m

    @property
    def length(self) -> int:
        return (1 << self.m) - 1

    def parity_check_matrix(self) -> np.ndarray:
        cols = np.arange(1, self.size, dtype=np.int64)
        return ((cols[None, :] >> np.arange(self.m)[:, None]) & 1).astype(np.uint8)


def hamming_cosets(m: int) -> HammingCosetPartition:
    if m < 1:
        raise OutOfRangeError(f"m must be >= 1, got {m}")
    return HammingCosetPartition(m, Coloring.syndrome(m))


def hamming_union_coloring(part: HammingCosetPartition, start: int = 0,
                           count: int = 1) -> Coloring:
    """2-coloring of H(2**m - 1, 2): color 0 is the union of `count` cyclically
    consecutive cosets starting at `start`; quotient [[c-1, b], [c, b-1]]."""
    M = part.size
    if not 1 <= count < M:
        raise OutOfRangeError(f"count must be in [1, {M}), got {count}")
    inside = [(start + t) % M for t in range(count)]
    rest = [c for c in range(M) if c not in inside]
    return Coloring.merged(part.coloring, [inside, rest]).with_provenance(
        f"hamming-union(m={part.m},count={count},start={start % M})")


def union_quotient(M: int, count: int) -> QuotientMatrix:
    b = M - count
    return QuotientMatrix.of([[count - 1, b], [count, b - 1]], M - 1, 2)


def hamming_union_collection(part: HammingCosetPartition, count: int) -> UniformCollection:
    """The M cyclic shifts of the union coloring; uniform because every
    vertex lies in exactly `count` of the unions."""
    members = tuple(hamming_union_coloring(part, i, count) for i in range(part.size))
    return UniformCollection(members, "cyclic-coset-shift",
                             union_quotient(part.size, count))


# -- the recursive construction ------------------------------------------


def predicted_step_quotient(S: QuotientMatrix, M: int) -> QuotientMatrix:
    """S + (q-1)**2 * n * I + (q-1) * M * P, on H(q*n + M, q).

    P's rows are all the density vector of S, so the off-diagonal entries
    grow by (q-1) * M * rho_j; integrality is guaranteed because the
    multiplicities rho_j * M of a uniform collection are whole numbers.
    """
    n, q, k = S.n, S.q, S.k
    rho = densities_from_quotient(S)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            val = Fraction(S.entries[i][j]) + (q - 1) * M * rho[j]
            if i == j:
                val += (q - 1) ** 2 * n
            if val.denominator != 1:
                raise InconsistentError(
                    f"(q-1)*M*rho[{j}] = {(q - 1) * M * rho[j]} is not an integer")
            row.append(int(val))
        rows.append(tuple(row))
    return QuotientMatrix(tuple(rows), q * n + M, q)


def recursive_step(col: UniformCollection, E: Coloring, *,
                   guard: int | None = None) -> UniformCollection:
    """One lengthening step: M colorings of H(q*n + M, q) from M of H(n, q).

    Member s evaluates as F(y, x) = C_{s+i mod M}(x^j) where E(y) = q*i + j;
    the members are the cyclic rotations of the input collection, which keeps
    the output collection uniform.  Requires E to be an Mq-coloring of
    H(M, q) with quotient rm_quotient(M, q) and member 0 of the input to be
    essential in every argument; the essentiality check is skipped (and
    flagged) when member 0 exceeds the materialization guard.
    """
    M = len(col.colorings)
    member0 = col.colorings[0]
    q, n = member0.q, member0.n
    if E.n != M or E.q != q:
        raise SizeMismatchError(
            f"outer coloring lives on H({E.n},{E.q}), expected H({M},{q})")
    if E.k != M * q:
        raise SizeMismatchError(f"outer coloring has {E.k} colors, expected {M * q}")

    expected_T = rm_quotient(M, q)
    try:
        got = compute_quotient(E, guard=guard)
    except TooLargeError:
        got = None
    if got is not None and got != expected_T:
        raise BadOuterColoringError(
            "outer coloring quotient does not have the 0/1 mod-q pattern")

    S = col.quotient
    if S is None:
        result = compute_quotient(member0, guard=guard)
        if not isinstance(result, QuotientMatrix):
            raise InconsistentError("collection member 0 is not a perfect coloring")
        S = result

    checked = col.hypotheses_checked
    cells = q**n
    if cells <= materialize_guard(guard):
        mask = essential_arguments(member0, guard=guard)
        if not all(mask):
            raise NotEssentialError(
                f"member 0 has inessential arguments at positions "
                f"{[i for i, b in enumerate(mask) if not b]}")
    else:
        checked = False

    predicted = predicted_step_quotient(S, M)
    members = tuple(
        Coloring.outer(col.colorings[s:] + col.colorings[:s], E)
        for s in range(M))
    return UniformCollection(members, "cyclic-permutation-of-collection",
                             predicted, checked)


def closed_form_length(n: int, M: int, q: int, i: int) -> int:
    """Word length after i steps: q**i * n + M * (q**i - 1) / (q - 1)."""
    return q**i * n + M * sum(q**j for j in range(i))


@dataclass(frozen=True)
class RecursionSpec:
    base: UniformCollection
    outer: Coloring
    steps: int


@dataclass(frozen=True)
class RecursionTrace:
    collection: UniformCollection
    lengths: tuple[int, ...]
    quotients: tuple[QuotientMatrix, ...]
    hypotheses_checked: tuple[bool, ...]


def iterate_construction(spec: RecursionSpec, *, guard: int | None = None) -> RecursionTrace:
    """Apply recursive_step `steps` times, recording lengths and predicted
    quotients per level and checking them against the closed formula."""
    if spec.steps < 0:
        raise OutOfRangeError("steps must be nonnegative")
    col = spec.base
    M = len(col.colorings)
    q = col.colorings[0].q
    n0 = col.colorings[0].n
    lengths = [n0]
    quotients = [col.quotient]
    checked = []
    for i in range(1, spec.steps + 1):
        col = recursive_step(col, spec.outer, guard=guard)
        n_i = col.colorings[0].n
        if n_i != closed_form_length(n0, M, q, i):
            raise InconsistentError(
                f"level {i} length {n_i} != closed form {closed_form_length(n0, M, q, i)}")
        lengths.append(n_i)
        quotients.append(col.quotient)
        checked.append(col.hypotheses_checked)
    return RecursionTrace(col, tuple(lengths), tuple(quotients), tuple(checked))


# -- parameterized front ends --------------------------------------------


@dataclass(frozen=True)
class ConstructedColoring:
    coloring: Coloring
    collection: UniformCollection
    predicted_quotient: QuotientMatrix
    trace: RecursionTrace


def construct_bc(b: int, c: int, *, guard: int | None = None) -> ConstructedColoring:
    """Perfect 2-coloring of H(N, 2) with quotient [[N-b, b], [c, N-c]] and
    no inessential arguments, N = (2M - 1) * 2**(e-1) - M with e = gcd(b, c)
    and M = (b + c) / e; M must be a power of two.

    Color 0 is the coset-union side, with density c / (b + c).
    """
    if b < 1 or c < 1:
        raise OutOfRangeError("b and c must be positive")
    e = gcd(b, c)
    M = (b + c) // e
    if M & (M - 1):
        raise NotPowerOfTwoError(f"(b + c) / gcd(b, c) = {M} is not a power of two")
    m = M.bit_length() - 1
    cprime = c // e
    part = hamming_cosets(m)
    col = hamming_union_collection(part, cprime)
    outer = rm_coloring(2, m)
    trace = iterate_construction(RecursionSpec(col, outer, e - 1), guard=guard)
    N = trace.lengths[-1]
    predicted = QuotientMatrix.of([[N - b, b], [c, N - c]], N, 2)
    if predicted != trace.quotients[-1]:
        raise InconsistentError(
            f"step-by-step quotient {trace.quotients[-1]} != closed form {predicted}")
    coloring = trace.collection.colorings[0].with_provenance(f"bc(b={b},c={c})")
    return ConstructedColoring(coloring, trace.collection, predicted, trace)


@dataclass(frozen=True)
class UnbalancedBoolean:
    coloring: Coloring
    density: Fraction
    expected_degree: int
    predicted_quotient: QuotientMatrix
    degree_report: DegreeReport | None
    essential: tuple[bool, ...] | None
    verified: bool


def construct_unbalanced_boolean(r: int, s: int, e: int, *,
                                 guard: int | None = None) -> UnbalancedBoolean:
    """Boolean function (color 0 = ones) of density r/s and degree e*s/2 in
    n = (2s - 1) * 2**(e-1) - s variables, all essential.

    Requires s a power of two, r odd with 0 < r < s, and e >= 1.  Density,
    degree, and essentiality are verified exhaustively when the result fits
    the materialization guard.
    """
    if s < 2 or s & (s - 1):
        raise BadDensityError(f"s = {s} must be a power of two >= 2")
    if not 0 < r < s:
        raise BadDensityError(f"r = {r} must satisfy 0 < r < s")
    if r % 2 == 0:
        raise BadDensityError(f"r = {r} must be odd")
    if e < 1:
        raise BadDensityError(f"e = {e} must be >= 1")

    built = construct_bc((s - r) * e, r * e, guard=guard)
    coloring = built.coloring.with_provenance(f"boolean(rho={r}/{s},e={e})")
    density = Fraction(r, s)
    expected_degree = e * s // 2

    degree_report = None
    essential = None
    verified = False
    if coloring.q**coloring.n <= materialize_guard(guard):
        dens = densities_by_count(coloring, guard=guard)
        if dens[0] != density:
            raise InconsistentError(f"measured density {dens[0]} != {density}")
        degree_report = coloring_degree(coloring, guard=guard)
        if degree_report.degree != expected_degree:
            raise InconsistentError(
                f"measured degree {degree_report.degree} != {expected_degree}")
        essential = essential_arguments(coloring, guard=guard)
        if not all(essential):
            raise InconsistentError("constructed coloring has an inessential argument")
        verified = True
    return UnbalancedBoolean(coloring, density, expected_degree,
                             built.predicted_quotient, degree_report,
                             essential, verified)
