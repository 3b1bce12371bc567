"""PCOL coloring file formats.

Text:   line 1 ``PCOL 1``, line 2 ``q=<q> n=<n> k=<k>``, then q**n
whitespace-separated color values in vertex-index order.
Binary: line 1 ``PCOLB1``, the same header line, then one little-endian byte
per vertex (two when k > 256).  Both round-trip bit-exactly.
"""
from __future__ import annotations

import numpy as np

from .core import Coloring
from .errors import ColorOutOfRangeError, LengthMismatchError, ParseError

TEXT_MAGIC = "PCOL 1"
BINARY_MAGIC = b"PCOLB1"
_VALUES_PER_LINE = 64


def _format_header(C: Coloring) -> str:
    return f"q={C.q} n={C.n} k={C.k}"


def _parse_header(line: str, lineno: int) -> tuple[int, int, int]:
    parts = line.split()
    if len(parts) != 3:
        raise ParseError(f"expected 'q=<q> n=<n> k=<k>', got {line!r}", line=lineno)
    out = []
    for part, key in zip(parts, ("q", "n", "k")):
        if not part.startswith(key + "="):
            raise ParseError(f"expected '{key}=<value>', got {part!r}", line=lineno)
        try:
            out.append(int(part[len(key) + 1:]))
        except ValueError:
            raise ParseError(f"non-integer value in {part!r}", line=lineno)
    q, n, k = out
    if q < 2 or n < 0 or k < 1:
        raise ParseError(f"invalid dimensions q={q} n={n} k={k}", line=lineno)
    return q, n, k


def write_pcol(path, C: Coloring, *, binary: bool = False,
               guard: int | None = None) -> None:
    """Write a coloring; symbolic colorings are materialized first."""
    Cm = C.materialize(guard)
    header = _format_header(Cm)
    if binary:
        payload = Cm.table.astype("<u1" if Cm.k <= 256 else "<u2").tobytes()
        with open(path, "wb") as fh:
            fh.write(BINARY_MAGIC + b"\n")
            fh.write(header.encode("ascii") + b"\n")
            fh.write(payload)
        return
    values = Cm.table.tolist()
    with open(path, "w", encoding="ascii") as fh:
        fh.write(TEXT_MAGIC + "\n")
        fh.write(header + "\n")
        for lo in range(0, len(values), _VALUES_PER_LINE):
            fh.write(" ".join(map(str, values[lo:lo + _VALUES_PER_LINE])) + "\n")


def _check_payload(arr: np.ndarray, q: int, n: int, k: int) -> Coloring:
    expected = q**n
    if arr.size != expected:
        raise LengthMismatchError(
            f"expected q**n = {expected} values, got {arr.size}")
    if arr.size and int(arr.max()) >= k:
        v = int(np.argmax(arr >= k))
        raise ColorOutOfRangeError(
            f"vertex {v} has color {int(arr[v])}, not below k={k}")
    return Coloring.from_table(arr, q, k)


def read_pcol(path) -> Coloring:
    """Read either format back into an explicit coloring."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob.startswith(BINARY_MAGIC):
        nl1 = blob.find(b"\n")
        nl2 = blob.find(b"\n", nl1 + 1)
        if nl1 < 0 or nl2 < 0:
            raise ParseError("truncated binary header", line=1)
        q, n, k = _parse_header(blob[nl1 + 1:nl2].decode("ascii", "replace"), 2)
        itemsize = 1 if k <= 256 else 2
        payload = blob[nl2 + 1:]
        if len(payload) % itemsize:
            raise LengthMismatchError(
                f"payload of {len(payload)} bytes is not a multiple of {itemsize}")
        arr = np.frombuffer(payload, dtype="<u1" if itemsize == 1 else "<u2")
        return _check_payload(arr, q, n, k)

    try:
        text = blob.decode("ascii")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not an ASCII PCOL file: {exc}", line=1)
    lines = text.splitlines()
    if not lines or lines[0].strip() != TEXT_MAGIC:
        raise ParseError(f"missing magic {TEXT_MAGIC!r}", line=1)
    if len(lines) < 2:
        raise ParseError("missing header line", line=2)
    q, n, k = _parse_header(lines[1].strip(), 2)
    values = []
    for lineno, line in enumerate(lines[2:], start=3):
        col = 1
        for token in line.split():
            try:
                values.append(int(token))
            except ValueError:
                raise ParseError(f"non-integer token {token!r}", line=lineno,
                                 column=line.find(token, col - 1) + 1)
            col = line.find(token, col - 1) + len(token) + 1
    arr = np.array(values, dtype=np.int64)
    if arr.size and arr.min() < 0:
        v = int(np.argmax(arr < 0))
        raise ColorOutOfRangeError(f"vertex {v} has negative color {int(arr[v])}")
    return _check_payload(arr, q, n, k)
