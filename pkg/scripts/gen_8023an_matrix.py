"""Generate the shipped (6,32)-regular N=2048 parity-check matrix.

The construction follows the classic recipe behind the 10GBASE-T code:
evaluate the degree-1 polynomials f_i(x) = a_i * x of a two-information-
symbol Reed-Solomon code over GF(64) at 32 distinct nonzero points, and
replace each symbol g by the 64 x 64 permutation that maps mu -> g + mu in
the field's location-vector representation. Distinct rows then differ in
every block column, which forces girth >= 6; every block is a permutation,
giving column weight 6 and row weight 32 exactly.

Deterministic; writes src/fecbench/assets/ldpc/8023an_n2048.alist.
"""

from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from fecbench.ldpc import SparseParityMatrix, save_alist

Q = 64
PRIM_POLY = 0b1000011  # x^6 + x + 1


def gf64_tables():
    exp = np.zeros(2 * Q, dtype=np.int64)
    log = np.zeros(Q, dtype=np.int64)
    v = 1
    for i in range(Q - 1):
        exp[i] = v
        log[v] = i
        v <<= 1
        if v & Q:
            v ^= PRIM_POLY
    for i in range(Q - 1, 2 * Q):
        exp[i] = exp[i - (Q - 1)]
    return exp, log


def element_index(g: int) -> int:
    """0 -> 0, alpha^k -> k+1 (the location-vector ordering)."""
    if g == 0:
        return 0
    return _LOG[g] + 1


_EXP, _LOG = gf64_tables()


def index_element(idx: int) -> int:
    return 0 if idx == 0 else int(_EXP[idx - 1])


def main() -> None:
    gamma, rho = 6, 32
    n_rows, n_cols = gamma * Q, rho * Q
    cols_of_row = [[] for _ in range(n_rows)]
    for i in range(gamma):
        a_i = int(_EXP[i])
        for j in range(rho):
            beta_j = int(_EXP[j])
            # GF(64) product a_i * beta_j
            g = int(_EXP[(i + j) % (Q - 1)]) if a_i and beta_j else 0
            for r in range(Q):
                mu = index_element(r)
                col = j * Q + element_index(g ^ mu)
                cols_of_row[i * Q + r].append(col)

    row_ptr = np.zeros(n_rows + 1, dtype=np.int64)
    col_idx = []
    for r, cols in enumerate(cols_of_row):
        cols.sort()
        col_idx.extend(cols)
        row_ptr[r + 1] = len(col_idx)
    H = SparseParityMatrix(
        n_cols=n_cols,
        row_ptr=row_ptr,
        col_idx=np.array(col_idx, dtype=np.int64),
        layer_ptr=np.arange(n_rows + 1, dtype=np.int64),
    )

    # sanity: regularity and girth > 4
    assert (np.diff(H.row_ptr) == rho).all()
    assert (H.column_weights() == gamma).all()
    dense = H.to_dense()
    overlap = dense @ dense.T
    off = overlap - np.diag(np.diag(overlap))
    assert off.max() <= 1, "4-cycle found"

    out = Path(__file__).resolve().parents[1] / "src/fecbench/assets/ldpc/8023an_n2048.alist"
    save_alist(out, H)
    print(f"wrote {out}: {n_rows} x {n_cols}, girth>4 verified")


if __name__ == "__main__":
    main()
