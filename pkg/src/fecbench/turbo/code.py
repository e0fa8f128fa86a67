"""Parallel-concatenated convolutional code with a quadratic permutation
interleaver, as used by the LTE downlink/uplink data channels.

Constituent encoder: 8-state recursive systematic code with feedback
1 + D^2 + D^3 and feedforward 1 + D + D^3. Each constituent is terminated
independently with three forced steps, giving 12 tail bits per frame.

Serialization (natural rate 1/3): systematic block, parity-1 block,
parity-2 block, then the tails as alternating (systematic, parity) pairs,
first encoder before second. Rate 1/2 keeps all systematic bits and
punctures parities to even positions of parity-1 and odd positions of
parity-2; tail bits are never punctured.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..core import as_bits
from .kernels import rsc_encode_kernel

N_TAIL_BITS = 12


def _build_trellis():
    """State tables for feedback 0b1011, feedforward 0b1101 (D^3..D^0).

    State s = (d1, d2, d3) packs the last three feedback-node values,
    d1 newest. The termination input d2^d3 drives the register to zero.
    """
    next_state = np.zeros((2, 8), dtype=np.int64)
    par_out = np.zeros((2, 8), dtype=np.int64)
    term_in = np.zeros(8, dtype=np.int64)
    for s in range(8):
        d1, d2, d3 = (s >> 2) & 1, (s >> 1) & 1, s & 1
        term_in[s] = d2 ^ d3
        for b in range(2):
            a = b ^ d2 ^ d3
            par_out[b, s] = a ^ d1 ^ d3
            next_state[b, s] = (a << 2) | (d1 << 1) | d2
    next_state.setflags(write=False)
    par_out.setflags(write=False)
    term_in.setflags(write=False)
    return next_state, par_out, term_in


NEXT_STATE, PAR_OUT, TERM_IN = _build_trellis()


def qpp_interleaver(k: int, f1: int, f2: int) -> np.ndarray:
    """pi(i) = (f1*i + f2*i^2) mod k, validated to be a permutation."""
    i = np.arange(k, dtype=np.int64)
    perm = ((f1 % k) * i % k + ((f2 % k) * i % k) * i) % k
    if np.unique(perm).size != k:
        raise ValueError(f"(f1={f1}, f2={f2}) is not a permutation for K={k}")
    return perm


def load_qpp_table(path) -> dict[int, tuple[int, int]]:
    """Text lines ``K f1 f2``; '#' starts a comment."""
    table: dict[int, tuple[int, int]] = {}
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        k, f1, f2 = (int(t) for t in line.split())
        table[k] = (f1, f2)
    return table


@dataclass(frozen=True)
class TurboCode:
    k: int
    f1: int
    f2: int
    target_rate: Fraction = Fraction(1, 3)
    perm: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.target_rate not in (Fraction(1, 3), Fraction(1, 2)):
            raise ValueError("target_rate must be 1/3 or 1/2")
        if self.target_rate == Fraction(1, 2) and self.k % 2:
            raise ValueError("rate 1/2 puncturing needs an even K")
        perm = qpp_interleaver(self.k, self.f1, self.f2)
        perm.setflags(write=False)
        object.__setattr__(self, "perm", perm)

    @property
    def n_encoded(self) -> int:
        """Gross frame length including the 12 tail bits."""
        if self.target_rate == Fraction(1, 3):
            return 3 * self.k + N_TAIL_BITS
        return 2 * self.k + N_TAIL_BITS

    @property
    def n_nominal(self) -> int:
        """Tail-free blocklength K / R used for the quoted code rate."""
        return int(self.k / self.target_rate)

    @property
    def rate(self) -> float:
        return float(self.target_rate)

    def permute(self, i: int) -> int:
        if not 0 <= i < self.k:
            raise IndexError(f"index {i} outside [0, {self.k})")
        return int(self.perm[i])


def _rsc(bits: np.ndarray):
    parity = np.zeros(bits.size, dtype=np.uint8)
    tail_sys = np.zeros(3, dtype=np.uint8)
    tail_par = np.zeros(3, dtype=np.uint8)
    end = rsc_encode_kernel(bits, NEXT_STATE, PAR_OUT, TERM_IN, parity, tail_sys, tail_par)
    if end != 0:
        raise AssertionError("termination failed to reach state 0")
    return parity, tail_sys, tail_par


def _tail_block(t1s, t1p, t2s, t2p) -> np.ndarray:
    out = np.zeros(N_TAIL_BITS, dtype=np.uint8)
    out[0:6:2] = t1s
    out[1:6:2] = t1p
    out[6:12:2] = t2s
    out[7:12:2] = t2p
    return out


def turbo_encode(code: TurboCode, msg) -> np.ndarray:
    msg = as_bits(msg)
    if msg.size != code.k:
        raise ValueError(f"message length {msg.size} != K={code.k}")
    p1, t1s, t1p = _rsc(msg)
    p2, t2s, t2p = _rsc(msg[code.perm])
    tails = _tail_block(t1s, t1p, t2s, t2p)
    if code.target_rate == Fraction(1, 3):
        return np.concatenate([msg, p1, p2, tails])
    return np.concatenate([msg, p1[0::2], p2[1::2], tails])
