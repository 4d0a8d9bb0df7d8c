"""Bit-packed linear algebra over GF(2).

Rows are stored as little-endian ``uint64`` words: bit ``j`` of word ``w``
is column ``64*w + j``.  All eliminations are deterministic (leftmost
pivot, first available row), so ranks, kernels and file output are
reproducible run to run.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels

__all__ = [
    "BitVector",
    "BitMatrix",
    "zeros",
    "identity",
    "from_dense",
    "from_rows",
    "stack",
    "hstack",
    "transpose",
    "add",
    "mul",
    "rank",
    "rref",
    "kernel_basis",
    "in_rowspace",
    "kron",
    "permute_columns",
    "write_mtx",
    "read_mtx",
    "write_alist",
    "read_alist",
]


def _nwords(ncols: int) -> int:
    return max(1, (ncols + 63) // 64)


def _pack_dense(dense: np.ndarray) -> np.ndarray:
    dense = np.asarray(dense, dtype=np.uint8) & 1
    if dense.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {dense.shape}")
    m, n = dense.shape
    nw = _nwords(n)
    padded = np.zeros((m, nw * 64), dtype=np.uint8)
    padded[:, :n] = dense
    words = np.packbits(padded, axis=1, bitorder="little").view("<u8")
    return np.ascontiguousarray(words.astype(np.uint64))


def _unpack_words(words: np.ndarray, ncols: int) -> np.ndarray:
    raw = np.unpackbits(words.astype("<u8").view(np.uint8), axis=1, bitorder="little")
    return raw[:, :ncols]


@dataclass
class BitVector:
    """A length-``n`` vector over GF(2), packed into uint64 words."""

    n: int
    words: np.ndarray

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(n, np.zeros(_nwords(n), dtype=np.uint64))

    @classmethod
    def from_support(cls, n: int, support) -> BitVector:
        v = cls.zeros(n)
        for j in support:
            v.set(int(j), 1)
        return v

    @classmethod
    def from_dense(cls, bits) -> BitVector:
        bits = np.asarray(bits, dtype=np.uint8) & 1
        return cls(bits.shape[0], _pack_dense(bits[None, :])[0])

    @classmethod
    def from_hex(cls, n: int, text: str) -> BitVector:
        data = bytes.fromhex(text.removeprefix("0x"))
        buf = np.zeros(_nwords(n) * 8, dtype=np.uint8)
        buf[: len(data)] = np.frombuffer(data, dtype=np.uint8)
        return cls(n, buf.view("<u8").astype(np.uint64))

    def to_hex(self) -> str:
        nbytes = (self.n + 7) // 8
        return self.words.astype("<u8").tobytes()[:nbytes].hex()

    def get(self, j: int) -> int:
        return (int(self.words[j >> 6]) >> (j & 63)) & 1

    def set(self, j: int, value: int) -> None:
        if not 0 <= j < self.n:
            raise IndexError(f"bit index {j} out of range for length {self.n}")
        mask = np.uint64(1) << np.uint64(j & 63)
        if value & 1:
            self.words[j >> 6] |= mask
        else:
            self.words[j >> 6] &= ~mask

    def weight(self) -> int:
        return int(_kernels.popcount_words(self.words).sum())

    def support(self) -> list[int]:
        return [int(j) for j in np.nonzero(self.to_dense())[0]]

    def to_dense(self) -> np.ndarray:
        return _unpack_words(self.words[None, :], self.n)[0]

    def copy(self) -> BitVector:
        return BitVector(self.n, self.words.copy())

    def is_zero(self) -> bool:
        return not self.words.any()

    def __xor__(self, other: BitVector) -> BitVector:
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        return BitVector(self.n, self.words ^ other.words)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVector)
            and self.n == other.n
            and np.array_equal(self.words, other.words)
        )

    def __hash__(self):
        return hash((self.n, self.words.tobytes()))


@dataclass
class BitMatrix:
    """A dense GF(2) matrix with bit-packed rows."""

    nrows: int
    ncols: int
    words: np.ndarray = field(repr=False)

    def __post_init__(self):
        expected = (self.nrows, _nwords(self.ncols))
        if self.words.shape != expected:
            raise ValueError(
                f"word array shape {self.words.shape} does not match {expected}"
            )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def get(self, i: int, j: int) -> int:
        return (int(self.words[i, j >> 6]) >> (j & 63)) & 1

    def set(self, i: int, j: int, value: int) -> None:
        mask = np.uint64(1) << np.uint64(j & 63)
        if value & 1:
            self.words[i, j >> 6] |= mask
        else:
            self.words[i, j >> 6] &= ~mask

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.words[i].copy())

    def set_row(self, i: int, v: BitVector) -> None:
        if v.n != self.ncols:
            raise ValueError(f"row length {v.n} != ncols {self.ncols}")
        self.words[i] = v.words

    def xor_row(self, i: int, v: BitVector) -> None:
        self.words[i] ^= v.words

    def row_weights(self) -> np.ndarray:
        return _kernels.popcount_words(self.words).sum(axis=1).astype(np.int64)

    def col_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0, dtype=np.int64)

    def to_dense(self) -> np.ndarray:
        return _unpack_words(self.words, self.ncols)

    def copy(self) -> BitMatrix:
        return BitMatrix(self.nrows, self.ncols, self.words.copy())

    def is_zero(self) -> bool:
        return not self.words.any()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.shape == other.shape
            and np.array_equal(self.words, other.words)
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.words.tobytes()))


def zeros(nrows: int, ncols: int) -> BitMatrix:
    return BitMatrix(nrows, ncols, np.zeros((nrows, _nwords(ncols)), dtype=np.uint64))


def identity(n: int) -> BitMatrix:
    m = zeros(n, n)
    for i in range(n):
        m.set(i, i, 1)
    return m


def from_dense(dense) -> BitMatrix:
    dense = np.asarray(dense, dtype=np.uint8)
    return BitMatrix(dense.shape[0], dense.shape[1], _pack_dense(dense))


def from_rows(rows: list[BitVector]) -> BitMatrix:
    if not rows:
        raise ValueError("from_rows needs at least one row; use zeros() otherwise")
    n = rows[0].n
    for v in rows:
        if v.n != n:
            raise ValueError("rows have inconsistent lengths")
    return BitMatrix(len(rows), n, np.vstack([v.words for v in rows]))


def stack(mats: list[BitMatrix]) -> BitMatrix:
    if not mats:
        raise ValueError("stack needs at least one matrix")
    ncols = mats[0].ncols
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("column count mismatch in stack")
    words = np.vstack([m.words for m in mats])
    return BitMatrix(sum(m.nrows for m in mats), ncols, words)


def hstack(mats: list[BitMatrix]) -> BitMatrix:
    nrows = mats[0].nrows
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("row count mismatch in hstack")
    dense = np.hstack([m.to_dense() for m in mats])
    return from_dense(dense)


def transpose(m: BitMatrix) -> BitMatrix:
    return from_dense(m.to_dense().T)


def add(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return BitMatrix(a.nrows, a.ncols, a.words ^ b.words)


def mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2); ``a.ncols`` must equal ``b.nrows``."""
    if a.ncols != b.nrows:
        raise ValueError(f"inner dimension mismatch: {a.shape} x {b.shape}")
    out = np.zeros((a.nrows, _nwords(b.ncols)), dtype=np.uint64)
    sel = a.to_dense().astype(bool)
    for i in range(a.nrows):
        picked = b.words[sel[i]]
        if picked.shape[0]:
            out[i] = np.bitwise_xor.reduce(picked, axis=0)
    return BitMatrix(a.nrows, b.ncols, out)


def rref(m: BitMatrix) -> tuple[BitMatrix, int, np.ndarray]:
    """Reduced row echelon form (returned as a copy) with rank and pivots."""
    work = m.copy()
    r, pivots = _kernels.rref(work.words, work.ncols)
    return work, r, pivots


def rank(m: BitMatrix) -> int:
    work = m.words.copy()
    r, _ = _kernels.rref(work, m.ncols)
    return r


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """A deterministic basis for the right kernel ``{v : m v^T = 0}``.

    One basis row per free column, in ascending free-column order; the
    result has ``ncols - rank`` rows (possibly zero).
    """
    red, r, pivots = rref(m)
    pivot_set = set(int(c) for c in pivots)
    free_cols = [c for c in range(m.ncols) if c not in pivot_set]
    out = zeros(len(free_cols), m.ncols)
    for row_idx, f in enumerate(free_cols):
        out.set(row_idx, f, 1)
        for i in range(r):
            if red.get(i, f):
                out.set(row_idx, int(pivots[i]), 1)
    return out


def in_rowspace(m: BitMatrix, v: BitVector) -> bool:
    """True iff ``v`` lies in the GF(2) row span of ``m``."""
    if v.n != m.ncols:
        raise ValueError(f"vector length {v.n} != ncols {m.ncols}")
    red, r, pivots = rref(m)
    residue = v.words.copy()
    for i in range(r):
        c = int(pivots[i])
        if (int(residue[c >> 6]) >> (c & 63)) & 1:
            residue ^= red.words[i]
    return not residue.any()


def kron(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Kronecker product; row ``(i, j)`` maps to ``i * b.nrows + j`` and
    column ``(p, q)`` to ``p * b.ncols + q``."""
    return from_dense(np.kron(a.to_dense(), b.to_dense()))


def permute_columns(m: BitMatrix, perm: np.ndarray) -> BitMatrix:
    """Column ``j`` of the result is column ``perm[j]`` of ``m``."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (m.ncols,):
        raise ValueError(f"permutation length {perm.shape} != ncols {m.ncols}")
    return from_dense(m.to_dense()[:, perm])


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def write_mtx(m: BitMatrix, path) -> None:
    """MatrixMarket coordinate pattern format, 1-based, entries sorted."""
    dense = m.to_dense()
    rows, cols = np.nonzero(dense)
    lines = ["%%MatrixMarket matrix coordinate pattern general"]
    lines.append(f"{m.nrows} {m.ncols} {rows.size}")
    lines.extend(f"{i + 1} {j + 1}" for i, j in zip(rows, cols))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_mtx(path) -> BitMatrix:
    with open(path) as fh:
        header = fh.readline()
        if "coordinate" not in header or "pattern" not in header:
            raise ValueError(f"{path}: not a coordinate pattern MatrixMarket file")
        line = fh.readline()
        while line.startswith("%"):
            line = fh.readline()
        nrows, ncols, nnz = (int(tok) for tok in line.split())
        m = zeros(nrows, ncols)
        count = 0
        for line in fh:
            line = line.strip()
            if not line or line.startswith("%"):
                continue
            i, j = (int(tok) for tok in line.split())
            m.set(i - 1, j - 1, 1)
            count += 1
    if count != nnz:
        raise ValueError(f"{path}: expected {nnz} entries, found {count}")
    return m


def write_alist(m: BitMatrix, path) -> None:
    """Sparse parity-check interchange format: dimensions, max and per-line
    weights, then 1-based column and row support lists padded with zeros."""
    dense = m.to_dense()
    nrows, ncols = dense.shape
    col_support = [list(np.nonzero(dense[:, j])[0] + 1) for j in range(ncols)]
    row_support = [list(np.nonzero(dense[i, :])[0] + 1) for i in range(nrows)]
    max_col = max((len(s) for s in col_support), default=0)
    max_row = max((len(s) for s in row_support), default=0)
    lines = [f"{ncols} {nrows}", f"{max_col} {max_row}"]
    lines.append(" ".join(str(len(s)) for s in col_support))
    lines.append(" ".join(str(len(s)) for s in row_support))
    for s in col_support:
        lines.append(" ".join(str(x) for x in s + [0] * (max_col - len(s))))
    for s in row_support:
        lines.append(" ".join(str(x) for x in s + [0] * (max_row - len(s))))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_alist(path) -> BitMatrix:
    with open(path) as fh:
        tokens = fh.read().split()
    it = iter(tokens)
    ncols, nrows = int(next(it)), int(next(it))
    max_col, max_row = int(next(it)), int(next(it))
    col_w = [int(next(it)) for _ in range(ncols)]
    row_w = [int(next(it)) for _ in range(nrows)]
    m = zeros(nrows, ncols)
    for j in range(ncols):
        for _ in range(max_col):
            i = int(next(it))
            if i:
                m.set(i - 1, j, 1)
    seen_rows = [0] * nrows
    for i in range(nrows):
        for _ in range(max_row):
            j = int(next(it))
            if j:
                seen_rows[i] += 1
    if seen_rows != row_w or [len(np.nonzero(m.to_dense()[:, j])[0]) for j in range(ncols)] != col_w:
        raise ValueError(f"{path}: support lists disagree with stated weights")
    return m
