"""LDPC decoder front-ends."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import as_llrs
from .kernels import flooding_spa_kernel, layered_oms_kernel
from .matrices import SparseParityMatrix

LAYERED_OMS = "layered-offset-min-sum"
FLOODING_SPA = "flooding-sum-product"


@dataclass(frozen=True)
class LdpcDecoderConfig:
    algorithm: str
    max_iters: int
    offset: float = 0.0
    early_stop_on_syndrome: bool = True

    def __post_init__(self):
        if self.algorithm not in (LAYERED_OMS, FLOODING_SPA):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.offset < 0:
            raise ValueError("offset must be >= 0")


class LdpcDecoder:
    """Holds the per-worker message buffers for one parity-check matrix."""

    def __init__(self, H: SparseParityMatrix, cfg: LdpcDecoderConfig):
        self.H = H
        self.cfg = cfg
        E = H.n_edges
        self._q = np.zeros(H.n_cols, dtype=np.float64)
        self._rmsg = np.zeros(E, dtype=np.float64)
        self._hard = np.zeros(H.n_cols, dtype=np.uint8)
        if cfg.algorithm == FLOODING_SPA:
            max_w = int(np.max(np.diff(H.row_ptr))) if H.n_rows else 0
            self._rnew = np.zeros(E, dtype=np.float64)
            self._pre = np.zeros(max_w + 1, dtype=np.float64)
            self._suf = np.zeros(max_w + 1, dtype=np.float64)

    def decode(self, llr) -> tuple[np.ndarray, bool, int]:
        """Returns (hard word, success, iterations); success means the
        word satisfied every check within the iteration budget."""
        llr = as_llrs(llr)
        if llr.size != self.H.n_cols:
            raise ValueError(f"LLR length {llr.size} != {self.H.n_cols}")
        if self.cfg.algorithm == LAYERED_OMS:
            ok, iters = layered_oms_kernel(
                llr,
                self.H.row_ptr,
                self.H.col_idx,
                self.H.layer_ptr,
                self.cfg.max_iters,
                self.cfg.offset,
                self.cfg.early_stop_on_syndrome,
                self._q,
                self._rmsg,
                self._hard,
            )
        else:
            ok, iters = flooding_spa_kernel(
                llr,
                self.H.row_ptr,
                self.H.col_idx,
                self.cfg.max_iters,
                self.cfg.early_stop_on_syndrome,
                self._q,
                self._rmsg,
                self._rnew,
                self._pre,
                self._suf,
                self._hard,
            )
        return self._hard.copy(), bool(ok), int(iters)


def decode_layered_oms(H: SparseParityMatrix, cfg: LdpcDecoderConfig, llr):
    if cfg.algorithm != LAYERED_OMS:
        raise ValueError("config is not layered-offset-min-sum")
    return LdpcDecoder(H, cfg).decode(llr)


def decode_flooding_spa(H: SparseParityMatrix, cfg: LdpcDecoderConfig, llr):
    if cfg.algorithm != FLOODING_SPA:
        raise ValueError("config is not flooding-sum-product")
    return LdpcDecoder(H, cfg).decode(llr)
