"""Quasi-cyclic and raw sparse parity-check matrices plus file loaders."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..core import as_bits


@dataclass(frozen=True)
class SparseParityMatrix:
    """CSR-style row adjacency of a binary parity-check matrix.

    ``layer_ptr`` partitions the rows into update layers for layered
    schedules: layer l covers rows layer_ptr[l]..layer_ptr[l+1]-1. A raw
    matrix gets one row per layer; an expanded QC matrix one block-row.
    """

    n_cols: int
    row_ptr: np.ndarray  # int64 (n_rows + 1)
    col_idx: np.ndarray  # int64 (edges)
    layer_ptr: np.ndarray  # int64 (layers + 1)

    def __post_init__(self):
        for name in ("row_ptr", "col_idx", "layer_ptr"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.int64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.col_idx.size and (
            self.col_idx.min() < 0 or self.col_idx.max() >= self.n_cols
        ):
            raise ValueError("column index out of range")
        for r in range(self.n_rows):
            row = self.col_idx[self.row_ptr[r] : self.row_ptr[r + 1]]
            if row.size > 1 and not (np.diff(row) > 0).all():
                raise ValueError(f"row {r}: column indices must strictly increase")

    @property
    def n_rows(self) -> int:
        return self.row_ptr.size - 1

    @property
    def n_edges(self) -> int:
        return self.col_idx.size

    def row_cols(self, r: int) -> np.ndarray:
        return self.col_idx[self.row_ptr[r] : self.row_ptr[r + 1]]

    def column_weights(self) -> np.ndarray:
        return np.bincount(self.col_idx, minlength=self.n_cols)

    def to_dense(self) -> np.ndarray:
        H = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for r in range(self.n_rows):
            H[r, self.row_cols(r)] = 1
        return H


@dataclass(frozen=True)
class QcLdpcCode:
    """Base matrix of circulant shifts with lifting size Z.

    Exponent -1 marks an all-zero block; exponent e >= 0 is the Z x Z
    identity cyclically right-shifted by e (row r has its one at column
    (r + e) mod Z).
    """

    exponents: np.ndarray  # int64 (base_rows, base_cols)
    z: int

    def __post_init__(self):
        exp = np.ascontiguousarray(self.exponents, dtype=np.int64)
        exp.setflags(write=False)
        object.__setattr__(self, "exponents", exp)
        if self.z < 1:
            raise ValueError("lifting size must be positive")
        if exp.ndim != 2:
            raise ValueError("exponent table must be 2-D")
        if exp.max(initial=-1) >= self.z or exp.min(initial=0) < -1:
            raise ValueError("exponents must lie in {-1} or [0, Z)")

    @property
    def base_rows(self) -> int:
        return self.exponents.shape[0]

    @property
    def base_cols(self) -> int:
        return self.exponents.shape[1]

    @property
    def n_cols(self) -> int:
        return self.base_cols * self.z

    @property
    def n_rows(self) -> int:
        return self.base_rows * self.z

    @property
    def k_info(self) -> int:
        return self.n_cols - self.n_rows


def expand(code: QcLdpcCode) -> SparseParityMatrix:
    """Lift the exponent table into the full sparse parity-check matrix."""
    z = code.z
    rows: list[list[int]] = [[] for _ in range(code.n_rows)]
    for br in range(code.base_rows):
        for bc in range(code.base_cols):
            e = int(code.exponents[br, bc])
            if e < 0:
                continue
            for r in range(z):
                rows[br * z + r].append(bc * z + (r + e) % z)
    row_ptr = np.zeros(code.n_rows + 1, dtype=np.int64)
    cols: list[int] = []
    for r, rc in enumerate(rows):
        rc.sort()
        cols.extend(rc)
        row_ptr[r + 1] = len(cols)
    layer_ptr = np.arange(0, (code.base_rows + 1) * z, z, dtype=np.int64)
    return SparseParityMatrix(
        n_cols=code.n_cols,
        row_ptr=row_ptr,
        col_idx=np.array(cols, dtype=np.int64),
        layer_ptr=layer_ptr,
    )


def syndrome(H: SparseParityMatrix, word) -> np.ndarray:
    """s = H x over GF(2)."""
    x = as_bits(word)
    if x.size != H.n_cols:
        raise ValueError(f"word length {x.size} != {H.n_cols}")
    s = np.zeros(H.n_rows, dtype=np.uint8)
    for r in range(H.n_rows):
        s[r] = x[H.row_cols(r)].sum() & 1
    return s


def load_base_exponent_text(path) -> QcLdpcCode:
    """Text format: header ``rows cols Z`` then rows*cols integers.

    Lines starting with '#' are comments.
    """
    tokens: list[str] = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    if len(tokens) < 3:
        raise ValueError(f"{path}: missing header")
    rows, cols, z = (int(t) for t in tokens[:3])
    body = tokens[3:]
    if len(body) != rows * cols:
        raise ValueError(
            f"{path}: expected {rows * cols} exponents, found {len(body)}"
        )
    exp = np.array([int(t) for t in body], dtype=np.int64).reshape(rows, cols)
    return QcLdpcCode(exponents=exp, z=z)


def save_base_exponent_text(path, code: QcLdpcCode, header_comment: str = "") -> None:
    out = []
    if header_comment:
        out.extend(f"# {line}" for line in header_comment.splitlines())
    out.append(f"{code.base_rows} {code.base_cols} {code.z}")
    for br in range(code.base_rows):
        out.append(" ".join(f"{int(e):3d}" for e in code.exponents[br]))
    Path(path).write_text("\n".join(out) + "\n")


def load_alist(path) -> SparseParityMatrix:
    """Standard alist layout with 1-based indices.

    Per-node weights and the declared maxima are cross-checked against
    the index lists.
    """
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    vals = [[int(t) for t in ln] for ln in lines]
    if len(vals) < 4:
        raise ValueError(f"{path}: truncated alist")
    n_cols, n_rows = vals[0]
    max_col_w, max_row_w = vals[1]
    col_w = vals[2]
    row_w = vals[3]
    if len(col_w) != n_cols or len(row_w) != n_rows:
        raise ValueError(f"{path}: weight list lengths do not match dimensions")
    if max(col_w) > max_col_w or max(row_w) > max_row_w:
        raise ValueError(f"{path}: declared maximum weights exceeded")
    col_lists = vals[4 : 4 + n_cols]
    row_lists = vals[4 + n_cols : 4 + n_cols + n_rows]
    if len(col_lists) != n_cols or len(row_lists) != n_rows:
        raise ValueError(f"{path}: wrong number of adjacency lines")

    row_ptr = np.zeros(n_rows + 1, dtype=np.int64)
    cols: list[int] = []
    for r in range(n_rows):
        entries = [e for e in row_lists[r] if e != 0]
        if len(entries) != row_w[r]:
            raise ValueError(f"{path}: row {r} weight mismatch")
        idx = sorted(e - 1 for e in entries)
        if idx and (idx[0] < 0 or idx[-1] >= n_cols):
            raise ValueError(f"{path}: row {r} index out of range")
        cols.extend(idx)
        row_ptr[r + 1] = len(cols)
    H = SparseParityMatrix(
        n_cols=n_cols,
        row_ptr=row_ptr,
        col_idx=np.array(cols, dtype=np.int64),
        layer_ptr=np.arange(n_rows + 1, dtype=np.int64),
    )
    # cross-validate against the column lists
    cw = H.column_weights()
    for c in range(n_cols):
        entries = [e for e in col_lists[c] if e != 0]
        if len(entries) != col_w[c] or cw[c] != col_w[c]:
            raise ValueError(f"{path}: column {c} weight mismatch")
    return H


def save_alist(path, H: SparseParityMatrix) -> None:
    col_adj: list[list[int]] = [[] for _ in range(H.n_cols)]
    for r in range(H.n_rows):
        for c in H.row_cols(r):
            col_adj[int(c)].append(r + 1)
    row_w = [int(H.row_ptr[r + 1] - H.row_ptr[r]) for r in range(H.n_rows)]
    col_w = [len(a) for a in col_adj]
    out = [
        f"{H.n_cols} {H.n_rows}",
        f"{max(col_w)} {max(row_w)}",
        " ".join(map(str, col_w)),
        " ".join(map(str, row_w)),
    ]
    for c in range(H.n_cols):
        out.append(" ".join(map(str, col_adj[c])))
    for r in range(H.n_rows):
        out.append(" ".join(str(int(c) + 1) for c in H.row_cols(r)))
    Path(path).write_text("\n".join(out) + "\n")


def load_matrix(path, fmt: str):
    """Dispatch on the two shipped formats."""
    if fmt == "base-exponent-text":
        return load_base_exponent_text(path)
    if fmt == "alist":
        return load_alist(path)
    raise ValueError(f"unknown matrix format {fmt!r}")
