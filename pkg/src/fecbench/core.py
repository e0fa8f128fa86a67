"""Shared domain plumbing: bits, LLRs, BPSK/AWGN, and seeded RNG streams.

Conventions used across every decoder in this package:

* bits are numpy ``uint8`` arrays with values in {0, 1};
* LLRs are natural-log ``float64`` arrays, positive sign meaning bit 0 is
  more likely;
* an LLR of exactly 0 hard-decides to bit 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Stand-in for an infinite LLR. Decoders add/subtract LLRs, so true
# infinities would produce NaN (inf - inf); a large finite magnitude keeps
# noiseless test frames well-defined.
NOISELESS_LLR = 1.0e6


def as_bits(bits) -> np.ndarray:
    """Validate and convert a bit sequence to a uint8 array."""
    arr = np.asarray(bits)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("bit block must be a non-empty 1-D sequence")
    out = arr.astype(np.uint8)
    if not np.array_equal(out, arr) or out.max(initial=0) > 1:
        raise ValueError("bit block entries must all be 0 or 1")
    return out


def as_llrs(values) -> np.ndarray:
    """Validate and convert an LLR sequence to a float64 array.

    NaNs are rejected; infinities are allowed only so callers can build
    explicit noiseless inputs, decoders themselves are fed finite values.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("LLR vector must be a non-empty 1-D sequence")
    if np.isnan(arr).any():
        raise ValueError("LLR vector contains NaN")
    return arr


@dataclass(frozen=True)
class ChannelSpec:
    """BPSK/AWGN channel operating point.

    ``sigma2`` is the noise variance per real dimension for the given
    Eb/N0 and code rate: sigma2 = 1 / (2 * R * 10^(EbN0_dB/10)).
    """

    ebn0_db: float
    code_rate: float
    sigma2: float = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.code_rate <= 1.0:
            raise ValueError(f"code rate must be in (0, 1], got {self.code_rate}")
        s2 = 1.0 / (2.0 * self.code_rate * 10.0 ** (self.ebn0_db / 10.0))
        object.__setattr__(self, "sigma2", s2)


@dataclass(frozen=True)
class RngStream:
    """Counter-based random stream identified by (master_seed, stream_id).

    Streams built from the same pair replay the same samples no matter how
    frames are scheduled across workers, which is what makes campaign
    results independent of the worker count.
    """

    master_seed: int
    stream_id: int

    def generator(self) -> np.random.Generator:
        key = np.array(
            [self.master_seed & 0xFFFFFFFFFFFFFFFF, self.stream_id & 0xFFFFFFFFFFFFFFFF],
            dtype=np.uint64,
        )
        return np.random.Generator(np.random.Philox(key=key))


def bpsk_modulate(bits: np.ndarray) -> np.ndarray:
    """Map bit 0 -> +1.0 and bit 1 -> -1.0."""
    bits = as_bits(bits)
    return 1.0 - 2.0 * bits.astype(np.float64)


def awgn_transmit(symbols: np.ndarray, chan: ChannelSpec, rng: RngStream | np.random.Generator) -> np.ndarray:
    """Send symbols over AWGN and return channel LLRs (2*y/sigma2)."""
    if chan.sigma2 <= 0.0:
        raise ValueError("sigma2 must be positive")
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    noise = gen.normal(0.0, np.sqrt(chan.sigma2), size=len(symbols))
    return (2.0 / chan.sigma2) * (np.asarray(symbols, dtype=np.float64) + noise)


def noiseless_llrs(bits: np.ndarray, magnitude: float = NOISELESS_LLR) -> np.ndarray:
    """Channel-free LLR image of a codeword, for noiseless test frames."""
    return magnitude * bpsk_modulate(bits)


def hard_decision(llr: np.ndarray) -> np.ndarray:
    """LLR > 0 -> 0, LLR < 0 -> 1, LLR == 0 -> 0."""
    return (np.asarray(llr) < 0).astype(np.uint8)
