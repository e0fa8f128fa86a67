"""Decoder front-ends over the compiled kernels.

Decoder objects own their working buffers, so create one instance per
worker and reuse it across frames. The module-level ``sc_decode`` /
``scl_decode`` / ``bp_decode`` helpers build a throwaway instance for
one-shot use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import as_llrs
from .code import PolarCode
from .kernels import (
    bp_decode_kernel,
    sc_decode_kernel,
    scl_decode_kernel,
)


@dataclass(frozen=True)
class SclConfig:
    list_size: int = 1
    crc_enabled: bool = True

    def __post_init__(self):
        if self.list_size < 1:
            raise ValueError("list size must be >= 1")


@dataclass(frozen=True)
class BpConfig:
    max_iters: int = 20
    early_termination: bool = True

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


class ScDecoder:
    """Successive decoder; check updates use the min-sum rule unless
    ``exact=True`` selects the tanh rule."""

    def __init__(self, code: PolarCode, exact: bool = False):
        self.code = code
        self.exact = exact
        N = code.N
        self._llr = np.zeros(2 * N - 1, dtype=np.float64)
        self._ps = np.zeros(max(N - 1, 1), dtype=np.uint8)
        self._img = np.zeros(2 * N - 1, dtype=np.uint8)
        self._u = np.zeros(N, dtype=np.uint8)

    def decode(self, llr) -> tuple[np.ndarray, bool]:
        """Returns (payload bits, success). Success is the CRC verdict
        when the code carries one, else True."""
        u = self.decode_u(llr)
        data = u[self.code.info_positions]
        if self.code.crc is not None:
            return data[: self.code.k_payload].copy(), self.code.crc.check(data)
        return data.copy(), True

    def decode_u(self, llr) -> np.ndarray:
        llr = as_llrs(llr)
        if llr.size != self.code.N:
            raise ValueError(f"LLR length {llr.size} != N={self.code.N}")
        sc_decode_kernel(
            llr, self.code.frozen_mask, self.exact, self._llr, self._ps, self._img, self._u
        )
        return self._u

    @property
    def reencoded(self) -> np.ndarray:
        """Codeword image of the last decoded frame."""
        return self._img[: self.code.N]


class SclDecoder:
    """List decoder; the CRC (when enabled) picks the returned path."""

    def __init__(self, code: PolarCode, cfg: SclConfig, exact: bool = False):
        if cfg.crc_enabled and code.crc is None:
            raise ValueError("crc_enabled requires a code constructed with a CRC")
        self.code = code
        self.cfg = cfg
        self.exact = exact
        N, L = code.N, cfg.list_size
        self._llr = np.zeros((L, 2 * N - 1), dtype=np.float64)
        self._ps = np.zeros((L, max(N - 1, 1)), dtype=np.uint8)
        self._img = np.zeros((L, 2 * N - 1), dtype=np.uint8)
        self._u = np.zeros((L, N), dtype=np.uint8)
        self._pm = np.zeros(L, dtype=np.float64)
        self._cand = np.zeros(2 * L, dtype=np.float64)
        self._keep0 = np.zeros(L, dtype=np.uint8)
        self._keep1 = np.zeros(L, dtype=np.uint8)
        self._free = np.zeros(L, dtype=np.int64)

    def decode(self, llr) -> tuple[np.ndarray, bool]:
        """Lowest-metric CRC-passing payload if the CRC is in play,
        falling back (success=False) to the lowest-metric path."""
        llr = as_llrs(llr)
        if llr.size != self.code.N:
            raise ValueError(f"LLR length {llr.size} != N={self.code.N}")
        nact = scl_decode_kernel(
            llr,
            self.code.frozen_mask,
            self.cfg.list_size,
            self.exact,
            self._llr,
            self._ps,
            self._img,
            self._u,
            self._pm,
            self._cand,
            self._keep0,
            self._keep1,
            self._free,
        )
        info = self.code.info_positions
        ranking = np.argsort(self._pm[:nact], kind="stable")
        k_pay = self.code.k_payload
        if self.cfg.crc_enabled and self.code.crc is not None:
            for p in ranking:
                data = self._u[p, info]
                if self.code.crc.check(data):
                    return data[:k_pay].copy(), True
        best = self._u[ranking[0], info]
        return best[:k_pay].copy(), False

    def last_metrics(self) -> np.ndarray:
        """Path metrics of the final list, best first (diagnostics)."""
        pm = self._pm[: self.cfg.list_size]
        return np.sort(pm)


class BpDecoder:
    """Flooding message passing over the transform graph with the
    re-encoding consistency check as stopping rule."""

    def __init__(self, code: PolarCode, cfg: BpConfig, exact: bool = False):
        self.code = code
        self.cfg = cfg
        self.exact = exact
        N, n = code.N, code.n
        self._lmsg = np.zeros((n + 1, N), dtype=np.float64)
        self._rmsg = np.zeros((n + 1, N), dtype=np.float64)
        self._u = np.zeros(N, dtype=np.uint8)
        self._x = np.zeros(N, dtype=np.uint8)
        self._scratch = np.zeros(N, dtype=np.uint8)

    def decode(self, llr) -> tuple[np.ndarray, bool, int]:
        """Returns (payload bits, success, iterations used)."""
        llr = as_llrs(llr)
        if llr.size != self.code.N:
            raise ValueError(f"LLR length {llr.size} != N={self.code.N}")
        ok, iters = bp_decode_kernel(
            llr,
            self.code.frozen_mask,
            self.cfg.max_iters,
            self.cfg.early_termination,
            self.exact,
            self._lmsg,
            self._rmsg,
            self._u,
            self._x,
            self._scratch,
        )
        payload = self._u[self.code.info_positions][: self.code.k_payload]
        return payload.copy(), bool(ok), int(iters)

    @property
    def last_u_hat(self) -> np.ndarray:
        return self._u

    @property
    def last_x_hat(self) -> np.ndarray:
        return self._x


def sc_decode(code: PolarCode, llr, exact: bool = False):
    return ScDecoder(code, exact=exact).decode(llr)


def scl_decode(code: PolarCode, cfg: SclConfig, llr, exact: bool = False):
    return SclDecoder(code, cfg, exact=exact).decode(llr)


def bp_decode(code: PolarCode, cfg: BpConfig, llr, exact: bool = False):
    return BpDecoder(code, cfg, exact=exact).decode(llr)
