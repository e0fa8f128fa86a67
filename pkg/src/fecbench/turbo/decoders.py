"""Iterative turbo decoding with two exchanged max-log BCJR passes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..core import as_llrs
from .code import NEXT_STATE, N_TAIL_BITS, PAR_OUT, TERM_IN, TurboCode
from .kernels import maxlog_bcjr_kernel


@dataclass(frozen=True)
class TurboDecoderConfig:
    max_iters: int = 6
    extrinsic_scale: float = 1.0

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not 0.0 < self.extrinsic_scale <= 1.0:
            raise ValueError("extrinsic_scale must be in (0, 1]")


def maxlog_bcjr(lsys, lpar, lapr) -> tuple[np.ndarray, np.ndarray]:
    """One-shot soft-in soft-out pass; returns (extrinsic, posterior).

    ``lsys``/``lpar`` include the three tail steps, ``lapr`` covers just
    the information bits. The posterior decomposes exactly as
    systematic + apriori + extrinsic.
    """
    lsys = as_llrs(lsys)
    lpar = as_llrs(lpar)
    lapr = np.asarray(lapr, dtype=np.float64)
    k_info = lapr.size
    if lsys.size != k_info + 3 or lpar.size != k_info + 3:
        raise ValueError("systematic/parity inputs must cover K + 3 steps")
    alpha = np.zeros((k_info + 4, 8), dtype=np.float64)
    beta = np.zeros((k_info + 4, 8), dtype=np.float64)
    post = np.zeros(k_info, dtype=np.float64)
    maxlog_bcjr_kernel(
        lsys, lpar, lapr, k_info, NEXT_STATE, PAR_OUT, TERM_IN, alpha, beta, post
    )
    ext = post - lsys[:k_info] - lapr
    return ext, post


class TurboDecoder:
    """Reusable decoder holding the trellis scratch for one frame size."""

    def __init__(self, code: TurboCode, cfg: TurboDecoderConfig = TurboDecoderConfig()):
        self.code = code
        self.cfg = cfg
        k = code.k
        self._alpha = np.zeros((k + 4, 8), dtype=np.float64)
        self._beta = np.zeros((k + 4, 8), dtype=np.float64)
        self._post = np.zeros(k, dtype=np.float64)
        self._inv_scatter = code.perm  # natural[perm[j]] = interleaved[j]

    def _split(self, llr: np.ndarray):
        """Undo the frame serialization, filling punctured parity with 0."""
        code = self.code
        k = code.k
        l_sys = llr[:k]
        if code.target_rate == Fraction(1, 3):
            lp1 = llr[k : 2 * k].copy()
            lp2 = llr[2 * k : 3 * k].copy()
            tails = llr[3 * k :]
        else:
            half = k // 2
            lp1 = np.zeros(k)
            lp2 = np.zeros(k)
            lp1[0::2] = llr[k : k + half]
            lp2[1::2] = llr[k + half : 2 * k]
            tails = llr[2 * k :]
        t1s, t1p = tails[0:6:2], tails[1:6:2]
        t2s, t2p = tails[6:12:2], tails[7:12:2]
        return l_sys, lp1, lp2, t1s, t1p, t2s, t2p

    def decode(self, llr) -> tuple[np.ndarray, bool]:
        """Hard message estimate after the configured iteration count.

        The success flag is always True: there is no embedded integrity
        check, callers score against the transmitted data.
        """
        llr = as_llrs(llr)
        if llr.size != self.code.n_encoded:
            raise ValueError(
                f"LLR length {llr.size} != encoded length {self.code.n_encoded}"
            )
        code, cfg = self.code, self.cfg
        k = code.k
        l_sys, lp1, lp2, t1s, t1p, t2s, t2p = self._split(llr)

        lsys1 = np.concatenate([l_sys, t1s])
        lpar1 = np.concatenate([lp1, t1p])
        lsys2 = np.concatenate([l_sys[code.perm], t2s])
        lpar2 = np.concatenate([lp2, t2p])

        la1 = np.zeros(k)
        post2 = np.zeros(k)
        for _ in range(cfg.max_iters):
            maxlog_bcjr_kernel(
                lsys1, lpar1, la1, k, NEXT_STATE, PAR_OUT, TERM_IN,
                self._alpha, self._beta, self._post,
            )
            ext1 = self._post - lsys1[:k] - la1
            la2 = cfg.extrinsic_scale * ext1[code.perm]
            maxlog_bcjr_kernel(
                lsys2, lpar2, la2, k, NEXT_STATE, PAR_OUT, TERM_IN,
                self._alpha, self._beta, self._post,
            )
            post2 = self._post
            ext2 = post2 - lsys2[:k] - la2
            la1 = np.zeros(k)
            la1[code.perm] = cfg.extrinsic_scale * ext2

        natural_post = np.zeros(k)
        natural_post[code.perm] = post2
        return (natural_post < 0).astype(np.uint8), True


def turbo_decode(code: TurboCode, cfg: TurboDecoderConfig, llr):
    return TurboDecoder(code, cfg).decode(llr)
