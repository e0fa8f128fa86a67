"""Scenario recipes: one file per simulated configuration.

A recipe TOML names a code family and its parameters; loading it yields
one scenario per decoder (the polar SC/BP pair shares a file since both
decode the same code). Scenarios are picklable value objects, so campaign
workers can rebuild their decoder locally.
"""

from __future__ import annotations

import os

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import ldpc as ldpc_mod
from . import polar as polar_mod
from . import turbo as turbo_mod
from .core import awgn_transmit, bpsk_modulate, hard_decision, noiseless_llrs

ASSET_ENV = "FECBENCH_ASSETS"
CACHE_ENV = "FECBENCH_CACHE"


def asset_root() -> Path:
    env = os.environ.get(ASSET_ENV)
    return Path(env) if env else Path(__file__).parent / "assets"


def cache_root() -> Path:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "fecbench"


def get_polar_code(
    n: int,
    k_payload: int,
    design_snr_db: float,
    crc: bool = False,
    trials: int = 100_000,
    seed: int = 1,
) -> polar_mod.PolarCode:
    """Construct a polar code, caching the frozen mask on disk."""
    k_total = k_payload + (polar_mod.CRC8_DEGREE if crc else 0)
    cache = cache_root() / "masks"
    cache.mkdir(parents=True, exist_ok=True)
    key = f"mask_n{n}_k{k_total}_snr{design_snr_db:g}_t{trials}_seed{seed}.txt"
    path = cache / key
    if path.exists():
        mask, _ = polar_mod.load_frozen_mask(path)
    else:
        mask = polar_mod.construct_monte_carlo(n, k_total, design_snr_db, trials, seed)
        polar_mod.save_frozen_mask(path, mask, design_snr_db)
    return polar_mod.make_code(
        n, k_payload, design_snr_db, crc=crc, trials=trials, seed=seed, frozen_mask=mask
    )


# ---------------------------------------------------------------------------
# scenarios


class _PolarRunner:
    def __init__(self, scen: "PolarScenario"):
        self.scen = scen
        code = scen.code
        if scen.decoder == "sc":
            self._dec = polar_mod.ScDecoder(code)
        elif scen.decoder == "scl":
            cfg = polar_mod.SclConfig(scen.list_size, crc_enabled=code.crc is not None)
            self._dec = polar_mod.SclDecoder(code, cfg)
        elif scen.decoder == "bp":
            cfg = polar_mod.BpConfig(scen.bp_iters, scen.early_termination)
            self._dec = polar_mod.BpDecoder(code, cfg)
        else:
            raise ValueError(f"unknown polar decoder {scen.decoder!r}")

    def run_frame(self, gen, chan, noiseless):
        scen = self.scen
        payload = gen.integers(0, 2, scen.code.k_payload).astype(np.uint8)
        x = polar_mod.polar_encode(scen.code, payload)
        llr = noiseless_llrs(x) if noiseless else awgn_transmit(bpsk_modulate(x), chan, gen)
        out = self._dec.decode(llr)
        dec = out[0]
        errs = int((dec != payload).sum())
        return errs > 0, errs


@dataclass(frozen=True)
class PolarScenario:
    name: str
    code: polar_mod.PolarCode
    decoder: str  # sc | scl | bp
    list_size: int = 1
    bp_iters: int = 20
    early_termination: bool = True

    @property
    def code_rate(self) -> float:
        return self.code.rate

    @property
    def payload_bits(self) -> int:
        return self.code.k_payload

    def new_runner(self):
        return _PolarRunner(self)


class _LdpcRunner:
    """All-zero-codeword transmission: by the decoder's sign symmetry a
    random codeword's error statistics match the all-zero frame, so no
    generator matrix is needed. Bit errors are scored on the first K
    columns."""

    def __init__(self, scen: "LdpcScenario"):
        cfg = ldpc_mod.LdpcDecoderConfig(
            algorithm=scen.algorithm, max_iters=scen.max_iters, offset=scen.offset
        )
        self._dec = ldpc_mod.LdpcDecoder(scen.matrix, cfg)
        self._ones = np.ones(scen.matrix.n_cols)
        self._k_info = scen.payload_bits

    def run_frame(self, gen, chan, noiseless):
        if noiseless:
            llr = 1.0e6 * self._ones
        else:
            llr = awgn_transmit(self._ones, chan, gen)
        word, _, _ = self._dec.decode(llr)
        errs = int(word[: self._k_info].sum())
        return bool(word.any()), errs


@dataclass(frozen=True)
class LdpcScenario:
    name: str
    matrix: ldpc_mod.SparseParityMatrix
    algorithm: str
    max_iters: int
    offset: float = 0.0

    @property
    def code_rate(self) -> float:
        return (self.matrix.n_cols - self.matrix.n_rows) / self.matrix.n_cols

    @property
    def payload_bits(self) -> int:
        return self.matrix.n_cols - self.matrix.n_rows

    def new_runner(self):
        return _LdpcRunner(self)


class _TurboRunner:
    def __init__(self, scen: "TurboScenario"):
        self.scen = scen
        self.code = turbo_mod.TurboCode(
            k=scen.k, f1=scen.f1, f2=scen.f2, target_rate=Fraction(*scen.rate_frac)
        )
        cfg = turbo_mod.TurboDecoderConfig(scen.max_iters, scen.extrinsic_scale)
        self._dec = turbo_mod.TurboDecoder(self.code, cfg)

    def run_frame(self, gen, chan, noiseless):
        msg = gen.integers(0, 2, self.code.k).astype(np.uint8)
        enc = turbo_mod.turbo_encode(self.code, msg)
        llr = noiseless_llrs(enc) if noiseless else awgn_transmit(bpsk_modulate(enc), chan, gen)
        out, _ = self._dec.decode(llr)
        errs = int((out != msg).sum())
        return errs > 0, errs


@dataclass(frozen=True)
class TurboScenario:
    name: str
    k: int
    f1: int
    f2: int
    rate_frac: tuple[int, int]  # target code rate as (num, den)
    max_iters: int = 6
    extrinsic_scale: float = 1.0

    @property
    def code_rate(self) -> float:
        return self.rate_frac[0] / self.rate_frac[1]

    @property
    def payload_bits(self) -> int:
        return self.k

    def new_runner(self):
        return _TurboRunner(self)


class _UncodedRunner:
    def __init__(self, scen: "UncodedScenario"):
        self.scen = scen

    def run_frame(self, gen, chan, noiseless):
        bits = gen.integers(0, 2, self.scen.block_bits).astype(np.uint8)
        if noiseless:
            llr = noiseless_llrs(bits)
        else:
            llr = awgn_transmit(bpsk_modulate(bits), chan, gen)
        errs = int((hard_decision(llr) != bits).sum())
        return errs > 0, errs


@dataclass(frozen=True)
class UncodedScenario:
    name: str
    block_bits: int = 1000

    @property
    def code_rate(self) -> float:
        return 1.0

    @property
    def payload_bits(self) -> int:
        return self.block_bits

    def new_runner(self):
        return _UncodedRunner(self)


# ---------------------------------------------------------------------------
# recipe files


@dataclass(frozen=True)
class Recipe:
    name: str
    family: str  # ldpc | polar | polar-scl | turbo
    ebn0_grid: tuple[float, ...]
    raw: dict

    def scenario_names(self) -> list[str]:
        if self.family == "polar":
            return [f"{self.name}-{d}" for d in self.raw["decoders"]]
        return [self.name]


def recipes_dir() -> Path:
    return asset_root() / "recipes"


def list_recipes() -> list[str]:
    return sorted(p.stem for p in recipes_dir().glob("*.toml"))


def load_recipe(name: str) -> Recipe:
    path = recipes_dir() / f"{name}.toml"
    if not path.exists():
        raise FileNotFoundError(f"no recipe named {name!r} under {recipes_dir()}")
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    if doc.get("name") != name:
        raise ValueError(f"{path}: 'name' must match the file stem")
    family = doc["family"]
    if family not in ("ldpc", "polar", "polar-scl", "turbo"):
        raise ValueError(f"{path}: unknown family {family!r}")
    grid = tuple(float(x) for x in doc["ebn0_grid"])
    return Recipe(name=name, family=family, ebn0_grid=grid, raw=doc)


def build_scenarios(recipe: Recipe, construction_trials: int | None = None) -> list:
    """Instantiate the recipe's scenarios (constructs polar codes on
    first use; masks are cached under the cache root)."""
    doc = recipe.raw
    if recipe.family == "ldpc":
        matrix = ldpc_mod.load_matrix(asset_root() / doc["matrix"], doc["matrix_format"])
        if isinstance(matrix, ldpc_mod.QcLdpcCode):
            matrix = ldpc_mod.expand(matrix)
        return [
            LdpcScenario(
                name=recipe.name,
                matrix=matrix,
                algorithm=doc["algorithm"],
                max_iters=int(doc["max_iters"]),
                offset=float(doc.get("offset", 0.0)),
            )
        ]
    if recipe.family == "polar-scl":
        code = get_polar_code(
            n=int(doc["n"]),
            k_payload=int(doc["k_payload"]),
            design_snr_db=float(doc["design_snr_db"]),
            crc=bool(doc.get("crc", True)),
            trials=construction_trials or int(doc.get("construction_trials", 100_000)),
            seed=int(doc.get("construction_seed", 1)),
        )
        return [
            PolarScenario(
                name=recipe.name,
                code=code,
                decoder="scl",
                list_size=int(doc["list_size"]),
            )
        ]
    if recipe.family == "polar":
        out = []
        for dec, sub in doc["decoders"].items():
            if dec not in ("sc", "bp"):
                raise ValueError(f"{recipe.name}: unknown polar decoder {dec!r}")
            code = get_polar_code(
                n=int(doc["n"]),
                k_payload=int(doc["k_payload"]),
                design_snr_db=float(sub.get("design_snr_db", doc["design_snr_db"])),
                crc=False,
                trials=construction_trials or int(doc.get("construction_trials", 100_000)),
                seed=int(doc.get("construction_seed", 1)),
            )
            out.append(
                PolarScenario(
                    name=f"{recipe.name}-{dec}",
                    code=code,
                    decoder=dec,
                    bp_iters=int(sub.get("max_iters", 20)),
                    early_termination=bool(sub.get("early_termination", True)),
                )
            )
        return out
    if recipe.family == "turbo":
        table = turbo_mod.load_qpp_table(asset_root() / doc["qpp_table"])
        k = int(doc["k"])
        if k not in table:
            raise ValueError(f"{recipe.name}: K={k} not in the QPP table")
        f1, f2 = table[k]
        num, den = (int(t) for t in doc["target_rate"].split("/"))
        return [
            TurboScenario(
                name=recipe.name,
                k=k,
                f1=f1,
                f2=f2,
                rate_frac=(num, den),
                max_iters=int(doc["max_iters"]),
                extrinsic_scale=float(doc.get("extrinsic_scale", 1.0)),
            )
        ]
    raise AssertionError(recipe.family)
