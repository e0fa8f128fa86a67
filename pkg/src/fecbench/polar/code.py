"""Polar code description, construction, and frozen-mask file I/O."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..core import as_bits
from .kernels import crc_remainder, polar_transform

# g8(x) = x^8 + x^5 + x^4 + x^3 + 1
CRC8_POLY = 0x139
CRC8_DEGREE = 8


@dataclass(frozen=True)
class CrcSpec:
    """CRC polynomial given with its leading term, MSB-first arithmetic."""

    degree: int = CRC8_DEGREE
    poly: int = CRC8_POLY

    def compute(self, bits) -> int:
        """Remainder of the bit sequence modulo the polynomial."""
        return int(crc_remainder(as_bits(bits), self.poly, self.degree))

    def append(self, payload: np.ndarray) -> np.ndarray:
        """payload + CRC bits of payload * x^degree, MSB first."""
        padded = np.concatenate([payload, np.zeros(self.degree, dtype=np.uint8)])
        rem = int(crc_remainder(padded, self.poly, self.degree))
        crc_bits = np.array(
            [(rem >> (self.degree - 1 - b)) & 1 for b in range(self.degree)],
            dtype=np.uint8,
        )
        return np.concatenate([payload, crc_bits])

    def check(self, bits: np.ndarray) -> bool:
        return int(crc_remainder(bits, self.poly, self.degree)) == 0


@dataclass(frozen=True)
class PolarCode:
    """Blocklength, frozen set, and payload split of one polar code.

    ``k_total`` unfrozen positions carry payload plus (optionally) CRC
    bits, so the code rate quoted alongside simulation results is
    k_payload / N.
    """

    n: int
    frozen_mask: np.ndarray  # uint8, 1 = frozen
    k_payload: int
    crc: CrcSpec | None = None
    design_snr_db: float = 0.0

    def __post_init__(self):
        mask = np.ascontiguousarray(self.frozen_mask, dtype=np.uint8)
        mask.setflags(write=False)
        object.__setattr__(self, "frozen_mask", mask)
        if mask.size != self.N:
            raise ValueError(f"frozen mask length {mask.size} != N={self.N}")
        if self.k_total != self.k_payload + (self.crc.degree if self.crc else 0):
            raise ValueError(
                f"mask has {self.k_total} unfrozen bits, expected "
                f"k_payload={self.k_payload} plus CRC"
            )
        if self.k_payload < 1:
            raise ValueError("k_payload must be >= 1")

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def k_total(self) -> int:
        return int(self.N - int(self.frozen_mask.sum()))

    @property
    def rate(self) -> float:
        return self.k_payload / self.N

    @property
    def info_positions(self) -> np.ndarray:
        return np.flatnonzero(self.frozen_mask == 0)


def polar_encode(code: PolarCode, payload) -> np.ndarray:
    """Append CRC, place bits in the unfrozen positions, and transform."""
    payload = as_bits(payload)
    if payload.size != code.k_payload:
        raise ValueError(f"payload length {payload.size} != {code.k_payload}")
    data = code.crc.append(payload) if code.crc else payload
    u = np.zeros(code.N, dtype=np.uint8)
    u[code.info_positions] = data
    return polar_transform(u)


def _genie_decision_llrs(chan: np.ndarray) -> np.ndarray:
    """Per-bit decision LLRs of genie-aided successive decoding.

    ``chan`` is (frames, N) channel LLRs of the all-zero codeword. With
    every earlier decision corrected to 0, the g-update degenerates to a
    plain sum, so the whole tree evaluates level by level on the batch.
    """
    m = chan.shape[1]
    if m == 1:
        return chan
    a = chan[:, : m // 2]
    b = chan[:, m // 2 :]
    left = np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))
    return np.hstack([_genie_decision_llrs(left), _genie_decision_llrs(a + b)])


def construct_monte_carlo(
    n: int,
    k_total: int,
    design_snr_db: float,
    trials: int = 100_000,
    seed: int = 1,
) -> np.ndarray:
    """Frozen mask from genie-aided error counts at the design SNR.

    ``design_snr_db`` is the symbol SNR Es/N0 (construction is a property
    of the channel, independent of the rate being designed for). All-zero
    codewords are sent at that SNR; for each bit channel the count of
    wrong genie-aided decisions is accumulated and the k_total most
    reliable positions are unfrozen. Ties unfreeze the lower index first.
    Deterministic in (seed, n, k_total, design_snr_db, trials).
    """
    N = 1 << n
    if k_total > N:
        raise ValueError(f"k_total={k_total} exceeds N={N}")
    if trials < 1:
        raise ValueError("trials must be positive")
    sigma2 = 1.0 / (2.0 * 10.0 ** (design_snr_db / 10.0))
    scale = 2.0 / sigma2
    sigma = np.sqrt(sigma2)

    counts = np.zeros(N, dtype=np.int64)
    batch = max(64, min(4096, (1 << 22) // N))
    done = 0
    block = 0
    while done < trials:
        b = min(batch, trials - done)
        gen = np.random.Generator(
            np.random.Philox(key=np.array([seed, block], dtype=np.uint64))
        )
        chan = scale * (1.0 + gen.normal(0.0, sigma, size=(b, N)))
        leaf = _genie_decision_llrs(chan)
        counts += (leaf < 0).sum(axis=0)
        done += b
        block += 1

    reliability = np.argsort(counts, kind="stable")  # ties: lower index first
    mask = np.ones(N, dtype=np.uint8)
    mask[reliability[:k_total]] = 0
    return mask


def save_frozen_mask(path, mask: np.ndarray, design_snr_db: float) -> None:
    """Two-line text format: header ``N k_total design_snr_db``, then the mask."""
    mask = np.asarray(mask, dtype=np.uint8)
    n_total = mask.size
    k_total = int(n_total - mask.sum())
    lines = f"{n_total} {k_total} {design_snr_db:g}\n" + "".join(
        "1" if b else "0" for b in mask
    ) + "\n"
    Path(path).write_text(lines)


def load_frozen_mask(path) -> tuple[np.ndarray, float]:
    """Read a frozen-mask file, returning (mask, design_snr_db)."""
    raw = Path(path).read_text().split("\n")
    if len(raw) < 2:
        raise ValueError(f"{path}: expected header and mask lines")
    head = raw[0].split()
    if len(head) != 3:
        raise ValueError(f"{path}: header must be 'N k_total design_snr_db'")
    n_total, k_total = int(head[0]), int(head[1])
    snr = float(head[2])
    bits = raw[1].strip()
    if len(bits) != n_total or set(bits) - {"0", "1"}:
        raise ValueError(f"{path}: mask line must be {n_total} characters of 0/1")
    mask = np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0")
    if int(n_total - mask.sum()) != k_total:
        raise ValueError(f"{path}: header k_total does not match the mask")
    return mask.astype(np.uint8), snr


def make_code(
    n: int,
    k_payload: int,
    design_snr_db: float,
    crc: bool = False,
    trials: int = 100_000,
    seed: int = 1,
    frozen_mask: np.ndarray | None = None,
) -> PolarCode:
    """Construct (or adopt) a frozen mask and wrap it in a PolarCode."""
    spec = CrcSpec() if crc else None
    k_total = k_payload + (spec.degree if spec else 0)
    if frozen_mask is None:
        frozen_mask = construct_monte_carlo(n, k_total, design_snr_db, trials, seed)
    return PolarCode(
        n=n,
        frozen_mask=frozen_mask,
        k_payload=k_payload,
        crc=spec,
        design_snr_db=design_snr_db,
    )
