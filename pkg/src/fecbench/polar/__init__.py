from .code import (
    CRC8_DEGREE,
    CRC8_POLY,
    CrcSpec,
    PolarCode,
    construct_monte_carlo,
    load_frozen_mask,
    make_code,
    polar_encode,
    save_frozen_mask,
)
from .decoders import (
    BpConfig,
    BpDecoder,
    ScDecoder,
    SclConfig,
    SclDecoder,
    bp_decode,
    sc_decode,
    scl_decode,
)
from .kernels import polar_transform

__all__ = [
    "CRC8_DEGREE",
    "CRC8_POLY",
    "CrcSpec",
    "PolarCode",
    "construct_monte_carlo",
    "load_frozen_mask",
    "make_code",
    "polar_encode",
    "save_frozen_mask",
    "polar_transform",
    "BpConfig",
    "BpDecoder",
    "ScDecoder",
    "SclConfig",
    "SclDecoder",
    "bp_decode",
    "sc_decode",
    "scl_decode",
]
